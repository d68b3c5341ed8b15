"""Regenerate data/moduli.txt: first primitive monic polynomial per p^f <= 2**16, f >= 2."""
import itertools
from pathlib import Path

from sympy import factorint, primerange
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p, gf_pow_mod

LIMIT = 2**16


def is_primitive(mod, p):
    q = p ** (len(mod) - 1)
    x = [1, 0]
    for r in factorint(q - 1):
        if gf_pow_mod(x, (q - 1) // r, mod, p, ZZ) == [1]:
            return False
    return True


def first_primitive(p, f):
    # coefficients high-to-low for sympy; enumerate the tail low-to-high
    for tail in itertools.product(range(p), repeat=f):
        low_to_high = list(tail)
        if low_to_high[0] == 0:
            continue
        mod = [1] + low_to_high[::-1]
        if gf_irreducible_p(mod, p, ZZ) and is_primitive(mod, p):
            return low_to_high + [1]
    raise RuntimeError((p, f))


def main():
    lines = ["# p f c_0 c_1 ... c_f  (monic, coefficients low-to-high; x is primitive)"]
    for p in primerange(2, 257):
        f = 2
        while p**f <= LIMIT:
            lines.append(" ".join(map(str, [p, f, *first_primitive(p, f)])))
            f += 1
    out = Path(__file__).resolve().parents[1] / "src/engelgraphs/data/moduli.txt"
    out.write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
