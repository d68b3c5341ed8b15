"""Arithmetic in F_q, q = p^f <= 2**16, with elements encoded as integers.

An element with polynomial-basis coefficients ``c_0, ..., c_{f-1}`` (low to
high) is encoded as ``sum(c_k * p**k)``.  So ``0`` is zero, ``1`` is one, and
for ``f > 1`` the integer ``p`` encodes the class of ``x``.

All operations go through exp/log tables built once per field, and accept
either Python ints or numpy integer arrays.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np
from sympy import factorint, isprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p

MAX_ORDER = 2**16


class FieldError(ValueError):
    pass


@dataclass(frozen=True)
class FieldSpec:
    p: int
    f: int
    modulus: tuple[int, ...]  # monic, low-to-high, length f + 1

    @property
    def q(self) -> int:
        return self.p**self.f

    def __post_init__(self):
        if not isprime(self.p):
            raise FieldError(f"{self.p} is not prime")
        if self.f < 1:
            raise FieldError("exponent must be positive")
        if self.q > MAX_ORDER:
            raise FieldError(f"q = {self.q} exceeds {MAX_ORDER}")
        mod = self.modulus
        if len(mod) != self.f + 1 or mod[-1] != 1:
            raise FieldError(f"modulus must be monic of degree {self.f}")
        if any(not 0 <= c < self.p for c in mod):
            raise FieldError("modulus coefficients must be residues mod p")
        if self.f > 1 and not gf_irreducible_p(list(mod[::-1]), self.p, ZZ):
            raise FieldError(f"modulus {mod} is reducible over F_{self.p}")


@functools.cache
def _moduli_table() -> dict[tuple[int, int], tuple[int, ...]]:
    text = resources.files("engelgraphs").joinpath("data/moduli.txt").read_text()
    table = {}
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        p, f, *coeffs = map(int, line.split())
        table[p, f] = tuple(coeffs)
    return table


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, f)`` with ``q == p**f``, or raise FieldError."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    fac = factorint(q)
    if len(fac) != 1:
        raise FieldError(f"{q} is not a prime power")
    ((p, f),) = fac.items()
    return p, f


def field_spec(q: int | str, modulus=None) -> FieldSpec:
    """Build a FieldSpec from ``q`` (an int, or text like ``"2^3"``).

    ``modulus`` overrides the shipped table; it may be a sequence of
    coefficients (low to high) or a path to a file with one integer per line.
    """
    if isinstance(q, str):
        if "^" in q:
            p, f = (int(t) for t in q.split("^"))
        else:
            p, f = prime_power(int(q))
    else:
        p, f = prime_power(q)
    if modulus is None:
        if f == 1:
            modulus = (0, 1)
        else:
            try:
                modulus = _moduli_table()[p, f]
            except KeyError:
                raise FieldError(f"no shipped modulus for {p}^{f}") from None
    elif isinstance(modulus, (str, Path)):
        modulus = read_modulus(modulus)
    return FieldSpec(p, f, tuple(int(c) for c in modulus))


def read_modulus(path) -> tuple[int, ...]:
    values = []
    for line in Path(path).read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            values.append(int(line))
    return tuple(values)


def _polymulmod(a, b, mod, p):
    """Multiply coefficient lists (low to high) modulo a monic ``mod``."""
    f = len(mod) - 1
    prod = [0] * (2 * f - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    for k in range(len(prod) - 1, f - 1, -1):
        c = prod[k] % p
        if c:
            for j in range(f + 1):
                prod[k - f + j] -= c * mod[j]
    return [c % p for c in prod[:f]]


class GF:
    """Arithmetic context for one finite field.  Immutable after construction."""

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.p, self.f, self.q = spec.p, spec.f, spec.q
        q, p, f = self.q, self.p, self.f
        self.digits = np.array(
            [[(a // p**k) % p for k in range(f)] for a in range(q)], dtype=np.int64
        ).reshape(q, f)
        self._place = p ** np.arange(f, dtype=np.int64)
        self.exp, self.log, self.gen = self._build_tables()

    def _encode(self, coeffs) -> int:
        return int(sum(int(c) * self.p**k for k, c in enumerate(coeffs)))

    def _build_tables(self):
        q, p = self.q, self.p
        if self.f == 1:
            mod = None
        else:
            mod = list(self.spec.modulus)
        # try candidates in encoding order; shipped moduli make x (= p) primitive
        candidates = [p] + [g for g in range(2, q) if g != p] if self.f > 1 else range(2, q)
        if q == 2:
            candidates = [1]
        for g in candidates:
            exp = np.zeros(q - 1, dtype=np.int64)
            log = np.full(q, -1, dtype=np.int64)
            cur = 1
            gco = [int(c) for c in self.digits[g]]
            ok = True
            for k in range(q - 1):
                if log[cur] != -1:
                    ok = False
                    break
                exp[k] = cur
                log[cur] = k
                if mod is None:
                    cur = cur * g % p
                else:
                    cur = self._encode(_polymulmod([int(c) for c in self.digits[cur]], gco, mod, p))
            if ok and cur == 1:
                return exp, log, g
        raise FieldError("no primitive element found")  # unreachable for a field

    # -- arithmetic (scalars or arrays) --
    def add(self, a, b):
        if self.p == 2:
            return np.bitwise_xor(a, b) if isinstance(a, np.ndarray) or isinstance(b, np.ndarray) else a ^ b
        if self.f == 1:
            return (a + b) % self.p
        s = (self.digits[a] + self.digits[b]) % self.p
        return self._pack(s)

    def neg(self, a):
        if self.p == 2:
            return a
        if self.f == 1:
            return (-a) % self.p
        return self._pack((-self.digits[a]) % self.p)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def _pack(self, digits):
        out = digits @ self._place
        return int(out) if np.ndim(out) == 0 else out

    def mul(self, a, b):
        if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
            a = np.asarray(a)
            b = np.asarray(b)
            zero = (a == 0) | (b == 0)
            la = self.log[np.where(a == 0, 1, a)]
            lb = self.log[np.where(b == 0, 1, b)]
            return np.where(zero, 0, self.exp[(la + lb) % (self.q - 1)])
        if a == 0 or b == 0:
            return 0
        return int(self.exp[(self.log[a] + self.log[b]) % (self.q - 1)])

    def inv(self, a):
        if isinstance(a, np.ndarray):
            if np.any(a == 0):
                raise ZeroDivisionError("inverse of zero")
            return self.exp[(-self.log[a]) % (self.q - 1)]
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return int(self.exp[(-self.log[a]) % (self.q - 1)])

    def pow(self, a, k: int):
        if a == 0:
            if k < 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 if k == 0 else 0
        return int(self.exp[(self.log[a] * k) % (self.q - 1)])

    def primitive_element(self) -> int:
        return int(self.gen)

    def mult_order(self, a: int) -> int:
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        n = self.q - 1
        order = n
        for r in factorint(n):
            while order % r == 0 and (self.log[a] * (order // r)) % n == 0:
                order //= r
        return order

    def coeffs(self, a: int) -> tuple[int, ...]:
        return tuple(int(c) for c in self.digits[a])

    def elements(self):
        return range(self.q)

    def __repr__(self):
        return f"GF({self.p}^{self.f})"


@functools.cache
def gf(q: int) -> GF:
    """Cached field context for the shipped modulus."""
    return GF(field_spec(q))


@dataclass(frozen=True)
class CubicPoly:
    """Monic T^3 + a2 T^2 + a1 T + a0 over an encoded field."""

    a2: int
    a1: int
    a0: int

    def evaluate(self, F: GF, t):
        t2 = F.mul(t, t)
        t3 = F.mul(t2, t)
        return F.add(F.add(t3, F.mul(self.a2, t2)), F.add(F.mul(self.a1, t), self.a0))


def cubic_is_irreducible(poly: CubicPoly, F: GF) -> bool:
    """A cubic is reducible exactly when it has a root; test every element."""
    values = poly.evaluate(F, np.arange(F.q, dtype=np.int64))
    return not bool(np.any(values == 0))


def find_engel_coefficient(F: GF) -> int | None:
    """First ``a`` (in encoding order) with T^3 + aT + 1 irreducible, else None."""
    for a in range(F.q):
        if cubic_is_irreducible(CubicPoly(0, a, 1), F):
            return a
    return None
