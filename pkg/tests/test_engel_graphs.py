import json
from collections import Counter

import numpy as np
import pytest

from engelgraphs.digraph import tarjan_scc
from engelgraphs.engel_graphs import (
    INFINITY, EngelOracle, capped_depths, commuting_components, engel_arc, engel_depth, engel_set, engel_word,
    prime_graph,
)
from engelgraphs.group_core import generate, hall_subgroup, is_simple, parse_perm, symmetric_group

EQUIVARIANCE_GROUPS = ["sym 4", "alt 5", "psl2 7", "alt 6", "m10", "m11", "psl3 4"]


def slow_depth(G, x, y, limit=60):
    z = x
    for k in range(limit + 1):
        if z == G.id:
            return k
        z = G.comm(z, y)
    return INFINITY


def test_depth_examples(get_group):
    G = get_group("alt 5")
    x = G.index(parse_perm("(0 1 2 3 4)", 5))
    y = G.index(parse_perm("(0 1 2)", 5))
    assert engel_depth(G, x, y) == INFINITY
    assert slow_depth(G, x, y) == INFINITY
    assert engel_depth(G, G.id, y) == 0
    assert engel_depth(G, x, x) == 1


@pytest.mark.parametrize("spec", ["sym 4", "alt 5", "psl2 7"])
def test_depth_matches_iteration(get_group, spec):
    G = get_group(spec)
    rng = np.random.default_rng(1)
    X = rng.integers(0, G.order, 400)
    Y = rng.integers(0, G.order, 400)
    capped = capped_depths(G, X, Y, 8)
    for x, y, c in zip(X, Y, capped):
        d = engel_depth(G, int(x), int(y))
        assert d == slow_depth(G, int(x), int(y))
        assert c == (d if d <= 8 else 9)


@pytest.mark.parametrize("spec", EQUIVARIANCE_GROUPS)
def test_conjugation_equivariance(get_group, spec):
    G = get_group(spec)
    rng = np.random.default_rng(7)
    E = G.elements
    X = rng.integers(0, G.order, 1000)
    Y = rng.integers(0, G.order, 1000)
    Z = rng.integers(0, G.order, 1000)
    Xg = np.array([G.conjugate_indices([x], E[z])[0] for x, z in zip(X, Z)])
    Yg = np.array([G.conjugate_indices([y], E[z])[0] for y, z in zip(Y, Z)])
    cap = 64
    assert np.array_equal(capped_depths(G, X, Y, cap), capped_depths(G, Xg, Yg, cap))
    for x, y, xg, yg in list(zip(X, Y, Xg, Yg))[:100]:
        assert engel_depth(G, int(x), int(y)) == engel_depth(G, int(xg), int(yg))


def test_commuting_pairs_have_depth_one(get_group):
    G = get_group("psl2 7")
    for x in range(1, G.order, 17):
        for y in G.centralizer_indices(x):
            if x != G.id:
                assert engel_depth(G, x, int(y)) <= 1


def test_arc_word():
    G = symmetric_group(3)
    x = G.index(parse_perm("(0 1)", 3))
    y = G.index(parse_perm("(0 1 2)", 3))
    assert engel_word(G, x, y, 0) == x
    assert engel_arc(G, y, y, 1)
    with pytest.raises(ValueError):
        engel_arc(G, x, y, 0)


def test_oracle_matches_brute_force_sym4(get_group):
    G = get_group("sym 4")
    oracle = EngelOracle(G, 4)
    for n in (1, 2, 3):
        for x in range(G.order):
            want_out = sorted(y for y in range(G.order) if engel_arc(G, x, y, n))
            want_in = sorted(y for y in range(G.order) if engel_arc(G, y, x, n))
            assert sorted(oracle.out_neighbors(x, n).tolist()) == want_out
            assert sorted(oracle.in_neighbors(x, n).tolist()) == want_in


@pytest.mark.parametrize("spec", ["alt 6", "m10"])
def test_oracle_matches_brute_force_sampled(get_group, spec):
    G = get_group(spec)
    oracle = EngelOracle(G, 3)
    rng = np.random.default_rng(3)
    for x in rng.choice(G.order, 12, replace=False):
        x = int(x)
        for n in (2, 3):
            all_y = np.arange(G.order)
            out = np.flatnonzero(capped_depths(G, x, all_y, n) <= n)
            inn = np.flatnonzero(capped_depths(G, all_y, x, n) <= n)
            assert np.array_equal(np.sort(oracle.out_neighbors(x, n)), out)
            assert np.array_equal(np.sort(oracle.in_neighbors(x, n)), inn)


def test_out_neighbors_contain_centralizer(get_group):
    G = get_group("alt 6")
    oracle = EngelOracle(G, 2)
    for x in range(1, G.order, 29):
        cent = set(G.centralizer_indices(x).tolist())
        assert cent <= set(oracle.out_neighbors(x, 1).tolist())


def test_psl34_order7_inbound_from_normalizer(get_group):
    G = get_group("psl3 4")
    oracle = EngelOracle(G, 3)
    g = int(np.flatnonzero(G.element_orders == 7)[0])
    N = G.indices(G.normalizer(G.closure([g])).elements)
    threes = {int(z) for z in N if G.element_orders[z] == 3}
    assert threes
    assert threes <= set(oracle.in_neighbors(g, 2).tolist())
    # and nothing of even order points at g
    inn = oracle.in_neighbors(g, 3)
    assert Counter(G.element_orders[inn].tolist()).keys() <= {1, 3, 7}


@pytest.mark.parametrize("spec", ["sym 4", "alt 5", "psl2 7", "alt 6"])
def test_monotonicity(get_group, spec):
    G = get_group(spec)
    oracle = EngelOracle(G, 5)
    for n in range(1, 5):
        lo, hi = oracle.graph(n), oracle.graph(n + 1)
        common = np.flatnonzero(lo.is_vertex & hi.is_vertex)
        for x in common[:: max(1, len(common) // 40)]:
            a = set(lo.out_neighbors(int(x)).tolist()) & set(common.tolist())
            b = set(hi.out_neighbors(int(x)).tolist())
            assert a <= b


def _center(G):
    E = G.elements
    return sorted(i for i in range(G.order) if all(np.array_equal(E[i][s], s[E[i]]) for s in G.elements))


@pytest.mark.parametrize("gens,degree", [
    (["(0 1 2 3)", "(0 2)"], 4),  # D8
    (["(0 1 2)", "(0 1)", "(3 4 5)"], 6),  # Sym(3) x C3
    (["(0 1 2 3 4)", "(0 1 2)"], 5),
])
def test_engel_set_one_is_center(gens, degree):
    G = generate([parse_perm(g, degree) for g in gens])
    assert engel_set(G, 1).tolist() == _center(G)
    assert sorted(G.center.tolist()) == _center(G)


def test_engel_set_alt5_trivial(get_group):
    G = get_group("alt 5")
    oracle = EngelOracle(G, 8)
    for n in range(1, 9):
        assert oracle.engel_set(n).tolist() == [G.id]


def test_engel_set_abelian_is_everything():
    G = generate([parse_perm("(0 1 2 3)", 4)])
    assert len(engel_set(G, 1)) == G.order
    assert len(EngelOracle(G, 1).graph(1).vertices) == 0


def test_gamma1_symmetric_and_components(get_group):
    G = get_group("alt 5")
    view = EngelOracle(G, 1).graph(1)
    arcs = set(view.arcs())
    assert all((y, x) in arcs for x, y in arcs)
    scc = tarjan_scc(view.vertices, view.out_neighbors)
    comps = sorted(sorted(c) for c in scc.components())
    assert comps == sorted(sorted(c.tolist()) for c in commuting_components(G))


def test_commuting_component_examples(get_group):
    A5 = get_group("alt 5")
    comps = commuting_components(A5)
    fives = [c for c in comps if set(A5.element_orders[c].tolist()) == {5}]
    assert len(fives) == 6 and all(len(c) == 4 for c in fives)
    S3 = symmetric_group(3)
    sizes = sorted(len(c) for c in commuting_components(S3))
    assert sizes == [1, 1, 1, 2]
    A6 = get_group("alt 6")
    even = set(np.flatnonzero(A6.element_orders % 2 == 0).tolist())
    holding = [c for c in commuting_components(A6) if even & set(c.tolist())]
    assert len(holding) == 1 and even <= set(holding[0].tolist())


def test_prime_graphs(get_group):
    assert prime_graph(get_group("alt 5")).components() == [[2], [3], [5]]
    assert prime_graph(symmetric_group(3)).components() == [[2], [3]]
    comps = prime_graph(get_group("psl3 4")).components()
    assert [7] in comps and all(2 not in c for c in comps if 7 in c)
    # no elements of order 6, 10, 14, 15, 21 or 35: every prime is isolated
    assert comps == [[2], [3], [5], [7]]
    assert prime_graph(get_group("m11")).components() == [[2, 3], [5], [11]]


@pytest.mark.parametrize("spec", ["alt 5", "alt 6", "psl2 7", "psl2 11", "m11", "psl3 4"])
def test_hall_components_are_cliques(get_group, spec):
    G = get_group(spec)
    assert is_simple(G)
    comps = {frozenset(c.tolist()) for c in commuting_components(G)}
    for psi in prime_graph(G).components():
        if 2 in psi:
            continue
        H = hall_subgroup(G, psi)
        assert H is not None and H.is_abelian()
        members = frozenset(int(h) for h in G.indices(H.elements) if h != G.id)
        assert members in comps


def test_json_and_dot(get_group):
    G = get_group("sym 3")
    view = EngelOracle(G, 2).graph(2)
    doc = json.loads(view.to_json())
    assert set(doc) == {"group", "order", "n", "vertices", "arcs"}
    assert {v["id"] for v in doc["vertices"]} == set(view.vertices.tolist())
    assert all(engel_arc(G, x, y, 2) for x, y in doc["arcs"])
    dot = view.to_dot()
    assert dot.startswith("digraph") and "->" in dot
    with pytest.raises(ValueError):
        EngelOracle(get_group("alt 7"), 2).graph(2).arcs()
