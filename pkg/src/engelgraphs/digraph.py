"""Directed-graph algorithms over explicit or oracle-backed arc sets.

Vertices are non-negative integers.  An :class:`OracleDigraph` never stores
its arcs; neighbours are produced on demand by callables.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np


@dataclass
class OracleDigraph:
    vertices: np.ndarray
    out_neighbors: Callable[[int], Iterable[int]]
    in_neighbors: Callable[[int], Iterable[int]]

    def __post_init__(self):
        self.vertices = np.asarray(self.vertices, dtype=np.int64)

    @classmethod
    def from_arcs(cls, vertices, arcs) -> "OracleDigraph":
        out: dict[int, list[int]] = {int(v): [] for v in vertices}
        inn: dict[int, list[int]] = {int(v): [] for v in vertices}
        for u, v in arcs:
            out[int(u)].append(int(v))
            inn[int(v)].append(int(u))
        return cls(np.fromiter(out, dtype=np.int64), lambda v: out[v], lambda v: inn[v])

    def arcs(self):
        for u in self.vertices:
            for v in self.out_neighbors(int(u)):
                yield int(u), int(v)


@dataclass
class SccResult:
    component: dict[int, int]
    count: int
    condensation: set[tuple[int, int]] = field(default_factory=set)

    def components(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.count)]
        for v, c in self.component.items():
            out[c].append(v)
        return [sorted(c) for c in out]


def reachable(vertices, neighbors, start: int, stop_when_all: bool = True, rng=None) -> np.ndarray:
    """Boolean mask (indexed by vertex label) of vertices reachable from ``start``."""
    vertices = np.asarray(vertices, dtype=np.int64)
    size = int(vertices.max()) + 1 if len(vertices) else 0
    allowed = np.zeros(size, dtype=bool)
    allowed[vertices] = True
    seen = np.zeros(size, dtype=bool)
    seen[start] = True
    total = len(vertices)
    count = 1
    queue = [start]
    head = 0
    while head < len(queue):
        if stop_when_all and count == total:
            break
        v = queue[head]
        head += 1
        nb = neighbors(v)
        if isinstance(nb, np.ndarray):
            nbrs = nb.astype(np.int64, copy=False)
        else:
            nbrs = np.fromiter(nb, dtype=np.int64)
        if not len(nbrs):
            continue
        if rng is not None:
            nbrs = rng.permutation(nbrs)
        nbrs = nbrs[nbrs < size]
        nbrs = nbrs[allowed[nbrs] & ~seen[nbrs]]
        # dedupe, keeping stream order
        nbrs = nbrs[np.sort(np.unique(nbrs, return_index=True)[1])]
        seen[nbrs] = True
        count += len(nbrs)
        queue.extend(nbrs.tolist())
    return seen


def is_strongly_connected(g: OracleDigraph, start: int | None = None, seed: int | None = None) -> bool:
    """One forward and one backward search from the same vertex must each reach everything.

    ``seed`` shuffles neighbour streams; the answer does not depend on it.
    """
    if not len(g.vertices):
        raise ValueError("empty vertex set")
    if start is None:
        start = int(g.vertices[0])
    rng = np.random.default_rng(seed) if seed is not None else None
    total = len(g.vertices)
    fwd = reachable(g.vertices, g.out_neighbors, start, rng=rng)
    if int(fwd[g.vertices].sum()) != total:
        return False
    bwd = reachable(g.vertices, g.in_neighbors, start, rng=rng)
    return int(bwd[g.vertices].sum()) == total


def tarjan_scc(vertices, out_neighbors) -> SccResult:
    """Iterative Tarjan over a materialized (or cheap) neighbour function."""
    vertices = [int(v) for v in vertices]
    vset = set(vertices)
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    comp: dict[int, int] = {}
    counter = 0
    ncomp = 0
    for root in vertices:
        if root in index:
            continue
        work = [(root, iter(out_neighbors(root)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                w = int(w)
                if w not in vset:
                    continue
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(out_neighbors(w))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
    cond = set()
    for v in vertices:
        for w in out_neighbors(v):
            w = int(w)
            if w in vset and comp[v] != comp[w]:
                cond.add((comp[v], comp[w]))
    return SccResult(comp, ncomp, cond)


class AsymmetricAdjacency(ValueError):
    pass


class UnionFind:
    def __init__(self, items=()):
        self.parent: dict = {}
        for x in items:
            self.parent[x] = x

    def find(self, x):
        parent = self.parent
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra

    def groups(self) -> list[list]:
        out: dict = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return sorted((sorted(v) for v in out.values()), key=lambda c: c[0])


def undirected_components(vertices, adjacent: Callable, check_symmetry: bool = True) -> list[list]:
    """Union-find partition for a symmetric adjacency predicate ``adjacent(u, v)``."""
    vertices = list(vertices)
    uf = UnionFind(vertices)
    for i, u in enumerate(vertices):
        for v in vertices[i + 1:]:
            a = adjacent(u, v)
            if check_symmetry and a != adjacent(v, u):
                raise AsymmetricAdjacency(f"adjacency not symmetric on ({u}, {v})")
            if a:
                uf.union(u, v)
    return uf.groups()


def components_from_edges(n: int, src, dst) -> np.ndarray:
    """Component label per vertex 0..n-1 for an undirected edge list (vectorized union-find)."""
    label = np.arange(n)
    src = np.asarray(src, dtype=np.int64)
    dst = np.asarray(dst, dtype=np.int64)
    while True:
        a, b = label[src], label[dst]
        m = np.minimum(a, b)
        new = label.copy()
        np.minimum.at(new, a, m)
        np.minimum.at(new, b, m)
        new = new[new]
        while True:  # pointer jumping
            nxt = new[new]
            if np.array_equal(nxt, new):
                break
            new = nxt
        if np.array_equal(new, label):
            return label
        label = new


def condensation_dot(result: SccResult, name: str = "condensation") -> str:
    lines = [f"digraph {name} {{"]
    for c in range(result.count):
        lines.append(f"  c{c};")
    for a, b in sorted(result.condensation):
        lines.append(f"  c{a} -> c{b};")
    lines.append("}")
    return "\n".join(lines)
