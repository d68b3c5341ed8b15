"""Small linear groups over F_q turned into permutation groups.

Matrices act on row vectors, ``v -> vM``, so the permutation of a product
``MN`` is "M first, then N", matching :mod:`engelgraphs.group_core`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .finite_field import GF, find_engel_coefficient, gf
from .group_core import Group, GroupError, generate, perm_order


@dataclass(frozen=True)
class MatrixRep:
    mat: np.ndarray
    F: GF
    projective: bool = True

    def __post_init__(self):
        if det(self.F, self.mat) == 0:
            raise GroupError("singular matrix")

    def __mul__(self, other: "MatrixRep") -> "MatrixRep":
        return MatrixRep(matmul(self.F, self.mat, other.mat), self.F, self.projective)

    def inverse(self) -> "MatrixRep":
        return MatrixRep(matinv(self.F, self.mat), self.F, self.projective)

    def __eq__(self, other):
        if not isinstance(other, MatrixRep):
            return NotImplemented
        if self.projective:
            return proj_equal(self.F, self.mat, other.mat)
        return np.array_equal(self.mat, other.mat)

    def __hash__(self):
        return hash(self.mat.tobytes())

    def is_identity(self) -> bool:
        k = len(self.mat)
        return self == MatrixRep(np.eye(k, dtype=np.int64), self.F, self.projective)

    def order(self) -> int:
        """Multiplicative order (projective when the flag is set)."""
        cur = self
        n = 1
        while not cur.is_identity():
            cur = cur * self
            n += 1
        return n


def matmul(F: GF, A, B) -> np.ndarray:
    A = np.asarray(A)
    B = np.asarray(B)
    k, m = A.shape[0], B.shape[1]
    out = np.zeros((k, m), dtype=np.int64)
    for i in range(k):
        for j in range(m):
            acc = 0
            for t in range(A.shape[1]):
                acc = F.add(acc, F.mul(int(A[i, t]), int(B[t, j])))
            out[i, j] = acc
    return out


def det(F: GF, A) -> int:
    A = [[int(v) for v in row] for row in np.asarray(A)]
    n = len(A)
    if n == 1:
        return A[0][0]
    total = 0
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in A[1:]]
        term = F.mul(A[0][j], det(F, minor))
        total = F.add(total, term if j % 2 == 0 else F.neg(term))
    return total


def matinv(F: GF, A) -> np.ndarray:
    """Gauss-Jordan inverse."""
    A = np.asarray(A)
    n = len(A)
    M = [[int(v) for v in row] + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col]), None)
        if piv is None:
            raise GroupError("singular matrix")
        M[col], M[piv] = M[piv], M[col]
        s = F.inv(M[col][col])
        M[col] = [F.mul(s, v) for v in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                c = M[r][col]
                M[r] = [F.sub(v, F.mul(c, w)) for v, w in zip(M[r], M[col])]
    return np.array([row[n:] for row in M], dtype=np.int64)


def proj_equal(F: GF, A, B) -> bool:
    """True when B is a nonzero scalar multiple of A."""
    A = np.asarray(A).ravel()
    B = np.asarray(B).ravel()
    i = int(np.flatnonzero(A)[0])
    if B[i] == 0:
        return False
    s = F.mul(int(B[i]), F.inv(int(A[i])))
    return all(F.mul(s, int(a)) == int(b) for a, b in zip(A, B))


def mat_comm(F: GF, A, B) -> np.ndarray:
    """[A, B] = A^-1 B^-1 A B."""
    Ai, Bi = matinv(F, A), matinv(F, B)
    return matmul(F, matmul(F, Ai, Bi), matmul(F, A, B))


def diag(*entries) -> np.ndarray:
    return np.diag(np.array(entries, dtype=np.int64))


# -- point sets and actions ------------------------------------------------------

def projective_points(F: GF, k: int) -> np.ndarray:
    """Normalized points of P^{k-1}(F_q) (first nonzero coordinate 1), lexicographic."""
    q = F.q
    allv = np.array(np.unravel_index(np.arange(q**k), (q,) * k)).T
    nz = allv[np.any(allv != 0, axis=1)]
    first = nz[np.arange(len(nz)), np.argmax(nz != 0, axis=1)]
    return nz[first == 1]


def nonzero_vectors(F: GF, k: int) -> np.ndarray:
    q = F.q
    allv = np.array(np.unravel_index(np.arange(q**k), (q,) * k)).T
    return allv[1:]


def _vec_keys(F, V):
    return V @ (F.q ** np.arange(V.shape[1] - 1, -1, -1))


def _normalize(F: GF, V):
    first = V[np.arange(len(V)), np.argmax(V != 0, axis=1)]
    s = F.inv(first)
    return np.stack([F.mul(V[:, j], s) for j in range(V.shape[1])], axis=1)


def matrix_to_perm(F: GF, M, points: np.ndarray, projective: bool = True) -> np.ndarray:
    """Permutation of ``points`` induced by v -> vM."""
    M = np.asarray(M)
    k = M.shape[0]
    img = np.zeros_like(points)
    for j in range(k):
        col = np.zeros(len(points), dtype=np.int64)
        for i in range(k):
            col = F.add(col, F.mul(points[:, i], np.full(len(points), int(M[i, j]))))
        img[:, j] = col
    if projective:
        img = _normalize(F, img)
    keys = _vec_keys(F, points)
    order = np.argsort(keys)
    pos = np.searchsorted(keys[order], _vec_keys(F, img))
    perm = order[pos]
    if not np.array_equal(points[perm], img):
        raise GroupError("matrix does not preserve the point set")
    return perm


def _transvection(k, i, j, t):
    M = np.eye(k, dtype=np.int64)
    M[i, j] = t
    return M


def _matrix_group(F, mats, k, projective, name, expected):
    pts = projective_points(F, k) if projective else nonzero_vectors(F, k)
    gens = [matrix_to_perm(F, M, pts, projective) for M in mats]
    G = generate(gens, limit=expected, name=name, degree=len(pts))
    if G.order != expected:
        raise GroupError(f"{name}: got order {G.order}, expected {expected}")
    G.points = pts
    G.field = F
    return G


def _sl_generators(F: GF, k: int):
    w = F.primitive_element()
    winv = F.inv(w)
    mats = []
    for i in range(k - 1):
        d = [1] * k
        d[i], d[i + 1] = w, winv
        mats.append(diag(*d))
    for i in range(k - 1):
        mats.append(_transvection(k, i, i + 1, 1))
        mats.append(_transvection(k, i + 1, i, 1))
    return mats


def psl2_order(q: int) -> int:
    return q * (q * q - 1) // math.gcd(2, q - 1)


def psl3_order(q: int) -> int:
    return q**3 * (q**3 - 1) * (q * q - 1) // math.gcd(3, q - 1)


def psl2(q: int) -> Group:
    """PSL_2(q) on the q + 1 points of the projective line."""
    F = gf(q)
    return _matrix_group(F, _sl_generators(F, 2), 2, True, f"PSL2({q})", psl2_order(q))


def psl3(q: int) -> Group:
    """PSL_3(q) on the q^2 + q + 1 points of the projective plane."""
    F = gf(q)
    return _matrix_group(F, _sl_generators(F, 3), 3, True, f"PSL3({q})", psl3_order(q))


def sl3(q: int) -> Group:
    """SL_3(q) acting faithfully on the q^3 - 1 nonzero vectors."""
    F = gf(q)
    return _matrix_group(F, _sl_generators(F, 3), 3, False, f"SL3({q})", psl3_order(q) * math.gcd(3, q - 1))


@dataclass(frozen=True)
class EngelMatrices:
    F: GF
    a: int  # coefficient with T^3 + aT + 1 irreducible
    c: int  # generator of F_q^*
    g: MatrixRep
    h: MatrixRep

    def commutator(self) -> MatrixRep:
        return MatrixRep(mat_comm(self.F, self.g.mat, self.h.mat), self.F)

    def expected_commutator(self) -> MatrixRep:
        F, c = self.F, self.c
        return MatrixRep(diag(1, F.pow(c, 3), F.pow(c, -3)), F)

    def expected_order_bound(self) -> int:
        q = self.F.q
        return (q * q + q + 1) // math.gcd(3, q - 1)


def engel_matrices(q: int) -> EngelMatrices:
    """Companion matrix g of T^3 + aT + 1 and h = diag(c, c, c^-2) in PSL_3(q), q >= 8 even."""
    if q % 2 or q < 8:
        raise GroupError("needs an even q >= 8")
    F = gf(q)
    a = find_engel_coefficient(F)
    if a is None:  # excluded for even q, kept as a guard
        raise GroupError(f"no irreducible T^3 + aT + 1 over F_{q}")
    c = F.primitive_element()
    g = np.array([[0, 0, 1], [1, 0, a], [0, 1, 0]], dtype=np.int64)
    h = diag(c, c, F.pow(c, -2))
    return EngelMatrices(F, a, c, MatrixRep(g, F), MatrixRep(h, F))


def projective_perm(M: MatrixRep) -> np.ndarray:
    k = len(M.mat)
    return matrix_to_perm(M.F, M.mat, projective_points(M.F, k))


def perm_matrix_order_agree(M: MatrixRep) -> tuple[int, int]:
    return perm_order(projective_perm(M)), M.order()
