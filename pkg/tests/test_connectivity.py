import json

import numpy as np
import pytest

from engelgraphs.connectivity import (
    CriterionInapplicable, EmptyVertexSet, Witness, component_type_criterion, corollary_criterion, find_omega,
    find_subgroup, min_strong_n, normalizer_inbound, predict_table1, prediction_for, random_escape, sporadic_reports,
    strongly_connected, subgroup_extension_check, summary_table, table1_entry, two_adic,
)
from engelgraphs.engel_graphs import EngelOracle, engel_arc
from engelgraphs.group_core import generate, is_simple, parse_perm

CROSS_CASES = [
    ("alt 6", 2), ("alt 6", 3), ("alt 7", 2), ("psl2 7", 2), ("psl2 7", 3),
    ("psl2 11", 2), ("psl2 13", 2), ("psl2 13", 3), ("psl2 17", 2), ("psl2 19", 2),
    ("m11", 2), ("m11", 3), ("psl3 4", 2), ("psl3 4", 3),
]
# literal corollary says "fails" while Gamma_n is strongly connected
LITERAL_COUNTEREXAMPLES = [("psl2 7", 3), ("psl2 11", 2), ("psl2 19", 2), ("m11", 2), ("m11", 3), ("psl3 4", 3)]


@pytest.fixture(scope="module")
def oracles(get_group):
    cache = {}

    def get(spec, n_cap=3):
        if spec not in cache:
            cache[spec] = EngelOracle(get_group(spec), n_cap)
        return cache[spec]
    return get


@pytest.mark.parametrize("spec,n", [("alt 6", 3), ("psl2 11", 2), ("psl2 7", 3), ("m10", 3)])
def test_min_strong_n_examples(get_group, spec, n):
    res = min_strong_n(get_group(spec), n_cap=5)
    assert res.n == n
    assert [s["n"] for s in res.steps] == list(range(2, n + 1))
    assert all(not s["strongly_connected"] for s in res.steps[:-1])


def test_min_strong_n_none_for_alt5(get_group):
    res = min_strong_n(get_group("alt 5"), n_cap=6)
    assert not res.found and res.cap == 6 and len(res.steps) == 5


def test_min_strong_n_errors(get_group):
    with pytest.raises(ValueError):
        min_strong_n(get_group("alt 5"), n_cap=1)
    # an abelian group is 2-Engel, so Gamma_2 has no vertices
    C4 = generate([parse_perm("(0 1 2 3)", 4)])
    with pytest.raises(EmptyVertexSet):
        min_strong_n(C4, n_cap=2)


def test_predictions():
    assert predict_table1("psl2", 7).n == 3
    assert predict_table1("psl2", 23).n == 3
    assert predict_table1("psl2", 31).n == 5
    assert predict_table1("psl2", 11).n == 2 and not predict_table1("psl2", 11).generic
    assert predict_table1("psl2", 17).n == 2 and predict_table1("psl2", 17).generic
    assert predict_table1("psl2", 13).n is None
    assert predict_table1("psl2", 8).n is None
    assert predict_table1("psl2", 9).n == 3
    assert predict_table1("alt6").n == 3 and predict_table1("m10").n == 3
    assert predict_table1("suzuki", 8).n is None
    with pytest.raises(ValueError):
        predict_table1("suzuki", 16)
    with pytest.raises(ValueError):
        predict_table1("psl2", 6)
    with pytest.raises(ValueError):
        predict_table1("psl2")
    assert prediction_for("sym 5") is None and prediction_for("alt 4") is None
    assert prediction_for("alt 5").n is None


def test_two_adic_formula_invariant():
    for q in [7, 11, 19, 23, 27, 31, 43, 47, 59, 71, 79, 103, 127]:
        pred = predict_table1("psl2", q)
        assert pred.n == two_adic((q + 1) // 2) + 1 >= 2
        assert pred.n == 2 or ((q + 1) // 2) % 2 == 0


@pytest.mark.parametrize("spec", ["alt 6", "psl2 7"])
def test_strong_connectivity_monotone(get_group, spec):
    oracle = EngelOracle(get_group(spec), 5)
    results = [strongly_connected(oracle, n) for n in range(2, 6)]
    first = results.index(True)
    assert all(results[first:])


@pytest.mark.parametrize("spec", ["alt 5", "psl2 8"])
def test_omega_inapplicable(get_group, spec):
    with pytest.raises(CriterionInapplicable):
        find_omega(get_group(spec))


def test_criteria_need_simple_group(get_group):
    G = get_group("m10")
    assert not is_simple(G)
    with pytest.raises(CriterionInapplicable):
        corollary_criterion(G, 2)
    with pytest.raises(CriterionInapplicable):
        component_type_criterion(G, 2)


def test_omega_holds_even_elements(get_group):
    G = get_group("m11")
    omega = find_omega(G)
    assert omega.even_primes == [2, 3]
    assert np.all(omega.mask[G.element_orders % 2 == 0])
    assert G.id not in omega


@pytest.mark.parametrize("spec,n", CROSS_CASES)
def test_sound_direction_and_type_graph(get_group, oracles, spec, n):
    G = get_group(spec)
    oracle = oracles(spec)
    direct = strongly_connected(oracle, n)
    cor = corollary_criterion(G, n, oracle)
    for w in cor.witnesses.values():
        if w is not None:
            assert w.valid(G, n)
    if cor.holds:
        assert direct
    typ = component_type_criterion(G, n, oracle)
    assert typ.holds == direct
    assert typ.nodes[0] == "omega"


@pytest.mark.parametrize("spec,n", LITERAL_COUNTEREXAMPLES)
def test_literal_corollary_counterexamples(get_group, oracles, spec, n):
    G = get_group(spec)
    oracle = oracles(spec)
    assert strongly_connected(oracle, n)
    cor = corollary_criterion(G, n, oracle)
    assert not cor.holds
    assert any(w is None for w in cor.witnesses.values())


def test_m11_order11_has_no_inbound_from_omega(get_group, oracles):
    # C(h) = <h> for h of order 11, so x |->_2 h forces x into N(<h>) = 11:5
    G = get_group("m11")
    g = int(np.flatnonzero(G.element_orders == 11)[0])
    assert len(G.centralizer_indices(g)) == 11
    N = G.normalizer(G.closure([g]))
    assert N.order == 55
    ins = oracles("m11").in_neighbors(g, 2)
    assert set(G.element_orders[ins].tolist()) <= {1, 5, 11}
    typ = component_type_criterion(G, 2, oracles("m11"))
    arcs = {(typ.nodes[a], typ.nodes[b]) for a, b in typ.arcs}
    assert ((5,), (11,)) in arcs and ((11,), "omega") in arcs


def test_normalizer_inbound(get_group):
    A5 = get_group("alt 5")
    g = A5.index(parse_perm("(0 1 2 3 4)", 5))
    z = normalizer_inbound(A5, g)
    assert z is not None and A5.element_orders[z] == 2 and engel_arc(A5, z, g, 2)
    P = get_group("psl3 4")
    g7 = int(np.flatnonzero(P.element_orders == 7)[0])
    assert normalizer_inbound(P, g7) is None
    z3 = normalizer_inbound(P, g7, primes={3})
    assert P.element_orders[z3] == 3 and engel_arc(P, z3, g7, 2)
    with pytest.raises(ValueError):
        normalizer_inbound(P, P.id)


def test_normalizer_inbound_self_normalizing():
    # <(0 1)> is self-normalizing in Sym(3), so no element of order 3 is available
    S3 = generate([parse_perm("(0 1 2)", 3), parse_perm("(0 1)", 3)])
    t = S3.index(parse_perm("(0 1)", 3))
    assert normalizer_inbound(S3, t, primes={3}) is None


def test_random_escape(get_group):
    A5 = get_group("alt 5")
    g = A5.index(parse_perm("(0 1 2 3 4)", 5))
    # no involution z has g |->_2 z in Alt(5), so an exhaustive budget finds nothing
    assert random_escape(A5, g, budget=10 ** 6) is None
    M11 = get_group("m11")
    g11 = int(np.flatnonzero(M11.element_orders == 11)[0])
    z = random_escape(M11, g11)
    assert z is not None and M11.element_orders[z] == 2 and engel_arc(M11, g11, z, 2)
    assert random_escape(M11, g11) == z


def test_subgroup_extension_m11(get_group):
    G = get_group("m11")
    omega = find_omega(G)
    g11 = int(np.flatnonzero(G.element_orders == 11)[0])
    H = find_subgroup(G, g11, 660, test=is_simple)
    assert H is not None and H.order == 660
    # no h1 in H and Omega with h1 |->_2 g: the normalizer argument above rules it out
    assert subgroup_extension_check(G, omega, g11, H) is None
    g5 = int(np.flatnonzero(G.element_orders == 5)[0])
    S = find_subgroup(G, g5, 120)
    assert S is not None
    pair = subgroup_extension_check(G, omega, g5, S)
    assert pair is not None
    h1, h2 = pair
    assert omega.mask[h1] and omega.mask[h2]
    assert Witness(h1, g5, h2).valid(G, 2)


def test_subgroup_extension_trivial_inside_omega(get_group):
    G = get_group("alt 6")
    omega = find_omega(G)
    t = int(G.involutions()[0])
    H = G.closure([t])
    assert subgroup_extension_check(G, omega, t, H) == (t, t)


def test_reports_are_deterministic(get_group):
    G = get_group("psl2 7")
    a = [r.to_json() for r in sporadic_reports(G, 3, spec="psl2 7")]
    b = [r.to_json() for r in sporadic_reports(G, 3, spec="psl2 7")]
    assert a == b
    doc = json.loads(a[-1])
    assert "seconds" not in doc and doc["method"] == "direct" and doc["match"] is True
    methods = [json.loads(x)["method"] for x in a]
    assert methods[-3:] == ["corollary", "component-types", "direct"]


def test_table1_entry_and_summary():
    rep = table1_entry("psl2 11")
    assert rep.computed == 2 and rep.match
    rep2 = table1_entry("psl2 8", n_cap=4)
    assert rep2.computed is None and rep2.match
    text = summary_table([rep, rep2])
    assert "psl2 11" in text and "does not exist" in text
