import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from engelgraphs.digraph import (
    AsymmetricAdjacency, OracleDigraph, UnionFind, components_from_edges, condensation_dot, is_strongly_connected,
    reachable, tarjan_scc, undirected_components,
)
from engelgraphs.engel_graphs import EngelOracle


def random_digraph(rng, n, p):
    arcs = [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p]
    return OracleDigraph.from_arcs(range(n), arcs)


def closure_components(n, arcs):
    """Strong components by transitive closure (Floyd-Warshall on booleans)."""
    R = np.eye(n, dtype=bool)
    for u, v in arcs:
        R[u, v] = True
    for k in range(n):
        R |= R[:, k:k + 1] & R[k:k + 1, :]
    mutual = R & R.T
    return sorted({tuple(np.flatnonzero(mutual[i]).tolist()) for i in range(n)})


def test_small_examples():
    assert is_strongly_connected(OracleDigraph.from_arcs([0], []))
    assert not is_strongly_connected(OracleDigraph.from_arcs([0, 1], [(0, 1)]))
    assert is_strongly_connected(OracleDigraph.from_arcs([0, 1], [(0, 1), (1, 0)]))
    assert tarjan_scc([0, 1, 2], lambda v: [(v + 1) % 3]).count == 1
    path = {0: [1], 1: [2], 2: []}
    assert tarjan_scc([0, 1, 2], lambda v: path[v]).count == 3
    with pytest.raises(ValueError):
        is_strongly_connected(OracleDigraph.from_arcs([], []))


def test_double_bfs_agrees_with_tarjan_on_500_graphs():
    rng = np.random.default_rng(2024)
    disagreements = 0
    for trial in range(500):
        n = int(rng.integers(1, 201))
        # density near the connectivity threshold gives both answers often
        p = float(rng.uniform(0.2, 3.0) * np.log(n + 1) / (n + 1))
        g = random_digraph(rng, n, p)
        want = tarjan_scc(g.vertices, g.out_neighbors).count == 1
        got = is_strongly_connected(g)
        disagreements += want != got
    assert disagreements == 0


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 40), st.lists(st.tuples(st.integers(0, 39), st.integers(0, 39)), max_size=200),
       st.integers(0, 10 ** 6))
def test_shuffle_independence_and_closure(n, raw, seed):
    arcs = [(u % n, v % n) for u, v in raw]
    g = OracleDigraph.from_arcs(range(n), arcs)
    base = is_strongly_connected(g)
    assert is_strongly_connected(g, seed=seed) == base
    assert is_strongly_connected(g, start=n - 1, seed=seed + 1) == base
    scc = tarjan_scc(g.vertices, g.out_neighbors)
    assert sorted(tuple(c) for c in scc.components()) == closure_components(n, arcs)
    # condensation is acyclic
    cond = tarjan_scc(range(scc.count), lambda c: [b for a, b in scc.condensation if a == c])
    assert cond.count == scc.count


def test_reachable_ignores_foreign_vertices():
    seen = reachable(np.array([0, 2, 4]), lambda v: [v + 1, v + 2, 99], 0)
    assert np.flatnonzero(seen).tolist() == [0, 2, 4]


def test_undirected_components():
    assert undirected_components([0, 1, 2], lambda u, v: False) == [[0], [1], [2]]
    with pytest.raises(AsymmetricAdjacency):
        undirected_components([0, 1], lambda u, v: u < v)
    assert undirected_components(range(6), lambda u, v: (u - v) % 3 == 0) == [[0, 3], [1, 4], [2, 5]]


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 60), st.lists(st.tuples(st.integers(0, 59), st.integers(0, 59)), max_size=120))
def test_vectorized_union_find(n, raw):
    edges = [(u % n, v % n) for u, v in raw]
    label = components_from_edges(n, [e[0] for e in edges], [e[1] for e in edges])
    uf = UnionFind(range(n))
    for u, v in edges:
        uf.union(u, v)
    groups = uf.groups()
    got = {}
    for i in range(n):
        got.setdefault(int(label[i]), []).append(i)
    assert sorted(got.values()) == groups


def test_gamma2_sym4_components(get_group):
    G = get_group("sym 4")
    view = EngelOracle(G, 2).graph(2)
    arcs = view.arcs()
    verts = view.vertices.tolist()
    pos = {v: i for i, v in enumerate(verts)}
    want = closure_components(len(verts), [(pos[u], pos[v]) for u, v in arcs])
    scc = tarjan_scc(verts, view.out_neighbors)
    got = sorted(tuple(pos[v] for v in c) for c in scc.components())
    assert got == want
    assert condensation_dot(scc).startswith("digraph")
