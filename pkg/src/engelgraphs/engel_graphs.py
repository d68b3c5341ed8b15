"""Engel words, Engel depth, the sets I_n(G) and the graphs built from them.

``[x,_0 y] = x`` and ``[x,_{k+1} y] = [[x,_k y], y]``.  The Engel depth
``d(x, y)`` is the least ``n`` with ``[x,_n y] = 1``, or :data:`INFINITY`.

Depths are invariant under simultaneous conjugation, so the arc set of
Gamma_n(G) is recorded only through one row per conjugacy class:
``out_row[c][y] = d(rep_c, y)`` and ``in_row[c][y] = d(y, rep_c)``.  The
neighbours of any other vertex ``u = rep^g`` are the conjugates by ``g``.
"""
from __future__ import annotations

import json
import math
import threading
from dataclasses import dataclass

import numpy as np
from sympy import factorint

from .digraph import OracleDigraph, UnionFind, components_from_edges
from .group_core import Group, cycle_string, perm_inv, perm_mul

INFINITY = math.inf
MATERIALIZE_LIMIT = 2000


def engel_word(G: Group, x: int, y: int, n: int) -> int:
    """Index of [x,_n y]."""
    z = x
    for _ in range(n):
        z = G.comm(z, y)
    return z


def engel_depth(G: Group, x: int, y: int):
    """Exact Engel depth; INFINITY when the commutator sequence cycles away from 1."""
    z = x
    seen = set()
    k = 0
    while z != G.id:
        if z in seen:
            return INFINITY
        seen.add(z)
        z = G.comm(z, y)
        k += 1
    return k


def engel_arc(G: Group, x: int, y: int, n: int) -> bool:
    """The relation x |->_n y (ignoring whether x, y are vertices)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return engel_word(G, x, y, n) == G.id


def capped_depths(G: Group, X, Y, cap: int) -> np.ndarray:
    """Vectorized depths d(X[i], Y[i]) as element-index arrays, with values > cap reported as cap + 1.

    Either of ``X``/``Y`` may be a single index (broadcast).
    """
    E = G.elements
    X = np.atleast_1d(np.asarray(X, dtype=np.int64))
    Y = np.atleast_1d(np.asarray(Y, dtype=np.int64))
    m = max(len(X), len(Y))
    Z = np.broadcast_to(E[X], (m, G.degree)).copy()
    Yp = np.broadcast_to(E[Y], (m, G.degree))
    Yinv = perm_inv(Yp)
    ident = np.arange(G.degree, dtype=E.dtype)
    depth = np.full(m, cap + 1, dtype=np.int64)
    active = np.arange(m)
    for k in range(cap + 1):
        done = np.all(Z == ident, axis=1)
        depth[active[done]] = k
        keep = ~done
        active = active[keep]
        if k == cap or not len(active):
            break
        Z = Z[keep]
        y, yi = Yp[active], Yinv[active]
        # [z, y] = z^-1 y^-1 z y
        Z = perm_mul(perm_mul(perm_inv(Z), yi), perm_mul(Z, y))
    return depth


class EngelOracle:
    """Arc oracle for the Engel graphs of one group, up to ``n_cap``.

    Rows are computed once per conjugacy class and shared across ``n``.
    """

    def __init__(self, G: Group, n_cap: int = 8):
        self.G = G
        self.n_cap = n_cap
        self.classes = G.conjugacy_classes()
        self._out: dict[int, np.ndarray] = {}
        self._in: dict[int, np.ndarray] = {}
        self._lock = threading.Lock()
        self._all = np.arange(G.order)

    def out_row(self, c: int) -> np.ndarray:
        """d(rep_c, y) for every y, capped at n_cap + 1."""
        with self._lock:
            if c not in self._out:
                self._out[c] = capped_depths(self.G, self.classes[c].rep, self._all, self.n_cap).astype(np.int8)
            return self._out[c]

    def in_row(self, c: int) -> np.ndarray:
        """d(y, rep_c) for every y, capped at n_cap + 1."""
        with self._lock:
            if c not in self._in:
                self._in[c] = capped_depths(self.G, self._all, self.classes[c].rep, self.n_cap).astype(np.int8)
            return self._in[c]

    def _check_n(self, n):
        if not 1 <= n <= self.n_cap:
            raise ValueError(f"n must lie in [1, {self.n_cap}]")

    def out_neighbors(self, x: int, n: int) -> np.ndarray:
        """All y with d(x, y) <= n (vertex filtering is left to the caller)."""
        self._check_n(n)
        c = int(self.G.class_of[x])
        base = np.flatnonzero(self.out_row(c) <= n)
        return self._move(base, x)

    def in_neighbors(self, x: int, n: int) -> np.ndarray:
        self._check_n(n)
        c = int(self.G.class_of[x])
        base = np.flatnonzero(self.in_row(c) <= n)
        return self._move(base, x)

    def _move(self, base, x):
        if x == self.classes[self.G.class_of[x]].rep:
            return base
        return self.G.conjugate_indices(base, self.G.conjugator(x))

    def engel_set(self, n: int) -> np.ndarray:
        """I_n(G): a union of classes, so only representatives are tested."""
        self._check_n(n)
        members = [
            cl.members for c, cl in enumerate(self.classes)
            if np.all(self.out_row(c) <= n) and np.all(self.in_row(c) <= n)
        ]
        return np.sort(np.concatenate(members)) if members else np.empty(0, dtype=np.int64)

    def graph(self, n: int) -> "EngelGraphView":
        return EngelGraphView(self, n)


def engel_set(G: Group, n: int, oracle: EngelOracle | None = None) -> np.ndarray:
    oracle = oracle or EngelOracle(G, max(n, 1))
    return oracle.engel_set(n)


class EngelGraphView:
    """Gamma_n(G) on G minus I_n(G), arcs served by an :class:`EngelOracle`."""

    def __init__(self, oracle: EngelOracle, n: int):
        self.oracle = oracle
        self.G = oracle.G
        self.n = n
        excluded = oracle.engel_set(n)
        mask = np.ones(self.G.order, dtype=bool)
        mask[excluded] = False
        self.is_vertex = mask
        self.vertices = np.flatnonzero(mask)

    def out_neighbors(self, x: int) -> np.ndarray:
        nb = self.oracle.out_neighbors(x, self.n)
        return nb[self.is_vertex[nb]]

    def in_neighbors(self, x: int) -> np.ndarray:
        nb = self.oracle.in_neighbors(x, self.n)
        return nb[self.is_vertex[nb]]

    def has_arc(self, x: int, y: int) -> bool:
        return bool(self.is_vertex[x] and self.is_vertex[y] and engel_arc(self.G, x, y, self.n))

    def digraph(self) -> OracleDigraph:
        return OracleDigraph(self.vertices, self.out_neighbors, self.in_neighbors)

    def arcs(self) -> list[tuple[int, int]]:
        """Materialized arc list sorted by (x, y), small groups only; loops x -> x are included."""
        if self.G.order > MATERIALIZE_LIMIT:
            raise ValueError(f"refusing to materialize a graph on {self.G.order} > {MATERIALIZE_LIMIT} elements")
        return [(int(x), int(y)) for x in self.vertices for y in np.sort(self.out_neighbors(int(x)))]

    def to_json(self) -> str:
        E = self.G.elements
        doc = {
            "group": self.G.name,
            "order": self.G.order,
            "n": self.n,
            "vertices": [{"id": int(v), "label": cycle_string(E[v])} for v in self.vertices],
            "arcs": [[x, y] for x, y in self.arcs() if x != y],
        }
        return json.dumps(doc, sort_keys=True)

    def to_dot(self) -> str:
        E = self.G.elements
        lines = [f'digraph "Gamma_{self.n}({self.G.name})" {{']
        for v in self.vertices:
            lines.append(f'  {int(v)} [label="{cycle_string(E[v])}"];')
        for x, y in self.arcs():
            if x != y:
                lines.append(f"  {x} -> {y};")
        lines.append("}")
        return "\n".join(lines)


# -- commuting graph and prime graph -------------------------------------------------

def commuting_components(G: Group) -> list[np.ndarray]:
    """Connected components of the commuting graph on G minus Z(G)."""
    src, dst = [], []
    for cl in G.conjugacy_classes():
        cent = G.centralizer_indices(cl.rep)
        for u in cl.members:
            nb = cent if u == cl.rep else G.conjugate_indices(cent, G.conjugator(int(u)))
            src.append(np.full(len(nb), u))
            dst.append(nb)
    src, dst = np.concatenate(src), np.concatenate(dst)
    keep = np.ones(G.order, dtype=bool)
    keep[G.center] = False
    # central elements commute with everything and are not vertices
    ok = keep[src] & keep[dst]
    label = components_from_edges(G.order, src[ok], dst[ok])
    comps: dict[int, list[int]] = {}
    for i in np.flatnonzero(keep):
        comps.setdefault(int(label[i]), []).append(int(i))
    return sorted((np.array(v) for v in comps.values()), key=lambda a: int(a[0]))


@dataclass
class PrimeGraph:
    vertices: list[int]
    edges: set[tuple[int, int]]

    def adjacent(self, r: int, s: int) -> bool:
        return (min(r, s), max(r, s)) in self.edges

    def components(self) -> list[list[int]]:
        uf = UnionFind(self.vertices)
        for r, s in self.edges:
            uf.union(r, s)
        return uf.groups()


def prime_graph(G: Group) -> PrimeGraph:
    primes = sorted(factorint(G.order))
    orders = {cl.order for cl in G.conjugacy_classes()}
    edges = set()
    for o in orders:
        ps = sorted(factorint(o))
        for i, r in enumerate(ps):
            for s in ps[i + 1:]:
                edges.add((r, s))
    return PrimeGraph(primes, edges)


def element_primes(G: Group, idx) -> set[int]:
    out: set[int] = set()
    for o in set(G.element_orders[np.asarray(idx)].tolist()):
        out |= set(factorint(o))
    return out
