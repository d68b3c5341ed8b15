"""Regenerate the shipped generator files under src/engelgraphs/data/gens/.

Every group is closed and its order checked before the file is written.
"""
import itertools
from pathlib import Path

import numpy as np

from engelgraphs.finite_field import gf
from engelgraphs.group_core import generate, parse_perm, perm_order
from engelgraphs.matrix_groups import _sl_generators, matrix_to_perm, projective_points

OUT = Path(__file__).resolve().parents[1] / "src/engelgraphs/data/gens"


def write(name, degree, gens, order, comment, orders=None):
    G = generate(gens, degree=degree)
    assert G.order == order, (name, G.order, order)
    if orders is not None:
        got = sorted({perm_order(e) for e in G.elements})
        assert got == orders, (name, got)
    lines = [f"# {comment}", f"# order {order}", f"degree {degree}"]
    lines += ["[" + " ".join(map(str, g.tolist())) + "]" for g in gens]
    (OUT / f"{name}.gens").write_text("\n".join(lines) + "\n")
    print(name, G.order)


def line9_extensions():
    F = gf(9)
    pts = projective_points(F, 2)
    psl = [matrix_to_perm(F, M, pts) for M in _sl_generators(F, 2)]
    w = F.primitive_element()
    frob = np.stack([F.pow(int(a), 3) if a else 0 for a in pts.ravel()]).reshape(pts.shape)
    # locate Frobenius images among the normalized points
    keys = pts @ np.array([9, 1])
    sigma = np.searchsorted(keys, frob @ np.array([9, 1]))
    assert np.array_equal(pts[sigma], frob)
    delta = matrix_to_perm(F, np.diag([w, 1]), pts)
    m10 = psl + [delta[sigma]]  # x -> w x^3
    write("m10", 10, m10, 720, "M10 = PSL2(9) extended by x -> w*x^3 on the projective line over F_9",
          orders=[1, 2, 3, 4, 5, 8])
    write("pgl2_9", 10, psl + [delta], 720, "PGL2(9) on the projective line over F_9")
    write("pgammal2_9", 10, psl + [delta, sigma], 1440, "PGammaL2(9) on the projective line over F_9")


def mathieu():
    p = lambda s, d: parse_perm(s, d, offset=1)
    a11 = "(1,2,3,4,5,6,7,8,9,10,11)"
    b11 = "(3,7,11,8)(4,10,5,6)"
    write("m11", 11, [p(a11, 11), p(b11, 11)], 7920, "M11 on 11 points")
    write("m12", 12, [p(a11, 12), p(b11, 12), p("(1,12)(2,11)(3,6)(4,8)(5,9)(7,10)", 12)], 95040,
          "M12 on 12 points")
    m22 = [
        "(1,2,3,4,5,6,7,8,9,10,11)(12,13,14,15,16,17,18,19,20,21,22)",
        "(1,4,5,9,3)(2,8,10,7,6)(12,15,16,20,14)(13,19,21,18,17)",
        "(1,21)(2,10,8,6)(3,13,4,17)(5,19,9,18)(11,22)(12,14,16,20)",
    ]
    write("m22", 22, [p(s, 22) for s in m22], 443520, "M22 on 22 points")


def suzuki8():
    """Sz(8) as the stabilizer of the Tits ovoid of PG(3, 8)."""
    F = gf(8)
    th = lambda x: F.pow(x, 4)  # theta^2 is the Frobenius of F_8
    ovoid = [(0, 0, 0, 1)]
    for x, y in itertools.product(range(8), repeat=2):
        z = F.add(F.add(F.mul(x, y), F.mul(th(x), F.mul(x, x))), th(y))
        ovoid.append((1, x, y, z))
    O = np.array(sorted(ovoid))

    def preserves(M):
        try:
            matrix_to_perm(F, M, O)
            return True
        except Exception:
            return False

    def translation(a, b):
        M = np.eye(4, dtype=np.int64)
        M[0, 1] = a
        M[0, 2] = b
        M[1, 2] = th(a)
        M[0, 3] = F.add(F.add(F.mul(a, b), F.mul(th(a), F.mul(a, a))), th(b))
        M[1, 3] = F.add(b, F.mul(th(a), a))
        M[2, 3] = a
        return M

    k = F.primitive_element()
    D = np.diag([1, k, F.mul(th(k), k), F.mul(th(k), F.mul(k, k))])
    mats = [translation(1, 0), translation(0, 1), D]
    assert all(preserves(M) for M in mats)
    swap = None
    for perm in itertools.permutations(range(4)):
        if perm[0] != 3:
            continue
        for dvals in itertools.product(range(1, 8), repeat=3):
            M = np.zeros((4, 4), dtype=np.int64)
            for i, (j, s) in enumerate(zip(perm, (1,) + dvals)):
                M[i, j] = s
            if preserves(M):
                swap = M
                break
        if swap is not None:
            break
    assert swap is not None
    gens = [matrix_to_perm(F, M, O) for M in mats + [swap]]
    write("sz8", 65, gens, 29120, "Sz(8) on the 65 points of the Tits ovoid in PG(3, 8)")


if __name__ == "__main__":
    OUT.mkdir(parents=True, exist_ok=True)
    line9_extensions()
    mathieu()
    suzuki8()
