"""Decision procedures for strong connectivity of Engel graphs.

* :func:`min_strong_n` decides directly, one ``n`` at a time, with the
  oracle double search.
* :func:`corollary_criterion` reduces the question for a simple group to
  arcs into and out of the odd-order prime-graph components.
* :func:`component_type_criterion` decides the same question exactly on the
  small quotient graph of component types.
* :func:`subgroup_extension_check`, :func:`normalizer_inbound` and
  :func:`random_escape` are the local searches used for sporadic groups.
"""
from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np
from sympy import factorint

from .catalog import build_group
from .digraph import is_strongly_connected
from .engel_graphs import EngelOracle, commuting_components, engel_arc, prime_graph
from .group_core import DEFAULT_SEED, Group, GroupError, hall_subgroup, is_simple

DEFAULT_N_CAP = 8


class EmptyVertexSet(ValueError):
    """G is n-Engel: Gamma_n(G) has no vertices."""


class CriterionInapplicable(ValueError):
    """The commuting graph has no single component holding every even-order element."""


# -- direct decision ---------------------------------------------------------------

@dataclass
class MinStrongResult:
    n: int | None  # None: not strongly connected for any n <= cap
    cap: int
    steps: list[dict] = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.n is not None


def start_vertex(G: Group, vertices) -> int:
    inv = G.involutions()
    mask = np.zeros(G.order, dtype=bool)
    mask[vertices] = True
    inv = inv[mask[inv]]
    return int(inv[0]) if len(inv) else int(vertices[0])


def strongly_connected(oracle: EngelOracle, n: int) -> bool:
    view = oracle.graph(n)
    if not len(view.vertices):
        raise EmptyVertexSet(f"{oracle.G.name} is {n}-Engel")
    return is_strongly_connected(view.digraph(), start=start_vertex(oracle.G, view.vertices))


def min_strong_n(G: Group, n_cap: int = DEFAULT_N_CAP, oracle: EngelOracle | None = None) -> MinStrongResult:
    """Smallest n in [2, n_cap] with Gamma_n(G) strongly connected.

    ``n`` is ``None`` when none up to the cap works; that is not a proof that
    no such n exists.
    """
    if n_cap < 2:
        raise ValueError("n_cap must be at least 2")
    oracle = oracle or EngelOracle(G, n_cap)
    res = MinStrongResult(None, n_cap)
    for n in range(2, n_cap + 1):
        view = oracle.graph(n)
        if not len(view.vertices):
            raise EmptyVertexSet(f"{G.name} is {n}-Engel")
        ok = is_strongly_connected(view.digraph(), start=start_vertex(G, view.vertices))
        res.steps.append({"n": n, "engel_set": int(G.order - len(view.vertices)), "strongly_connected": ok})
        if ok:
            res.n = n
            break
    return res


# -- groups with an exceptional smallest n ----------------------------------------

@dataclass(frozen=True)
class Table1Prediction:
    family: str
    n: int | None  # None: no n works
    generic: bool = False  # True when the group is outside the table (n = 2)

    def describe(self) -> str:
        if self.n is None:
            return "does not exist"
        return f"{self.n}" + (" (generic)" if self.generic else "")


def two_adic(m: int) -> int:
    return factorint(m).get(2, 0)


def predict_table1(family: str, q: int | None = None) -> Table1Prediction:
    """Value of the smallest strongly connected n predicted for a family."""
    fam = family.lower()
    if fam in ("alt6", "psl2_9"):
        return Table1Prediction("Alt6", 3)
    if fam == "m10":
        return Table1Prediction("M10", 3)
    if fam == "psl3_4":
        return Table1Prediction("PSL3_4", 3)
    if fam == "generic2":
        return Table1Prediction("generic2", 2, generic=True)
    if q is None:
        raise ValueError(f"family {family!r} needs a field size q")
    p, f = _prime_power(q)
    if fam == "psl2":
        if q < 4:
            raise ValueError("PSL2(q) is not simple for q < 4")
        if q == 9:
            return Table1Prediction("Alt6", 3)
        if p == 2:
            return Table1Prediction("PSL2evenq", None)
        if q % 8 == 5:
            return Table1Prediction("PSL2q5mod8", None)
        if q % 4 == 3:
            return Table1Prediction("PSL2q3mod4", two_adic((q + 1) // 2) + 1)
        return Table1Prediction("generic2", 2, generic=True)
    if fam in ("suzuki", "autsuzuki"):
        if p != 2 or f % 2 == 0 or f < 3:
            raise ValueError("Suzuki groups need q = 2^(2f+1) with f > 0")
        if fam == "autsuzuki" and not _is_prime(f):
            raise ValueError("the table row for Aut(Sz(q)) needs 2f+1 prime")
        return Table1Prediction("Suzuki" if fam == "suzuki" else "AutSuzuki", None)
    raise ValueError(f"unknown family {family!r}")


def _prime_power(q):
    fac = factorint(q)
    if len(fac) != 1:
        raise ValueError(f"{q} is not a prime power")
    return next(iter(fac.items()))


def _is_prime(n):
    return n > 1 and factorint(n) == {n: 1}


def prediction_for(spec: str) -> Table1Prediction | None:
    """Prediction for a catalog spec, or None where the table makes no claim."""
    parts = spec.lower().split()
    kind, args = parts[0], parts[1:]
    if kind in ("alt", "sym") and int(args[0]) < 5:
        return None  # not almost simple
    if kind == "alt":
        n = int(args[0])
        return predict_table1("psl2", 4) if n == 5 else predict_table1("alt6") if n == 6 else predict_table1("generic2")
    if kind == "sym":
        n = int(args[0])
        return None if n in (5, 6) else predict_table1("generic2")
    if kind == "psl2":
        return predict_table1("psl2", int(args[0]))
    if kind == "psl3":
        return predict_table1("psl3_4") if int(args[0]) == 4 else predict_table1("generic2")
    if kind == "m10":
        return predict_table1("m10")
    if kind in ("m11", "m12", "m22"):
        return predict_table1("generic2")
    if kind == "sz8":
        return predict_table1("suzuki", 8)
    return None


# -- the commuting-graph reduction ---------------------------------------------------

@dataclass
class Omega:
    """The commuting component holding every element of even order."""

    mask: np.ndarray
    even_primes: list[int]  # prime-graph component containing 2

    def __contains__(self, x) -> bool:
        return bool(self.mask[x])


def find_omega(G: Group, components=None) -> Omega:
    """Component of a fixed involution, checked to contain all even-order elements."""
    inv = G.involutions()
    if not len(inv):
        raise CriterionInapplicable("no involutions")
    comps = components if components is not None else commuting_components(G)
    t = int(inv[0])
    comp = next(c for c in comps if t in set(c.tolist()))
    mask = np.zeros(G.order, dtype=bool)
    mask[comp] = True
    even = np.flatnonzero(G.element_orders % 2 == 0)
    missing = even[~mask[even]]
    if len(missing):
        raise CriterionInapplicable(
            f"{G.name}: {len(missing)} even-order elements lie outside the component of involution {t}"
        )
    pg = prime_graph(G)
    even_primes = next(c for c in pg.components() if 2 in c)
    return Omega(mask, even_primes)


@dataclass
class Witness:
    x: int
    h: int
    y: int

    def valid(self, G: Group, n: int) -> bool:
        return engel_arc(G, self.x, self.h, n) and engel_arc(G, self.h, self.y, n)


@dataclass
class CorollaryResult:
    n: int
    holds: bool
    witnesses: dict  # prime set (tuple) -> Witness or None
    hall_orders: dict


def _preferred(G: Group, h: int, candidates: np.ndarray) -> int:
    """Pick a witness: centralizer elements first, then normalizer of <h>, then lowest index."""
    if not len(candidates):
        raise ValueError("no candidates")
    cent = set(G.centralizer_indices(h).tolist())
    for c in candidates:
        if int(c) in cent:
            return int(c)
    H = G.closure([h])
    N = G.indices(G.normalizer(H).elements, check=False)
    nset = set(N.tolist())
    for c in candidates:
        if int(c) in nset:
            return int(c)
    return int(candidates[0])


def corollary_criterion(
    G: Group, n: int, oracle: EngelOracle | None = None, seed: int = DEFAULT_SEED, omega: Omega | None = None
) -> CorollaryResult:
    """Strong connectivity of Gamma_n(G) via arcs between Omega and each odd prime-graph component.

    Needs G simple and Omega to exist; otherwise :class:`CriterionInapplicable`.
    One Hall subgroup is tested per component (they are all conjugate).
    """
    if not is_simple(G):
        raise CriterionInapplicable(f"{G.name} is not simple")
    omega = omega or find_omega(G)
    oracle = oracle or EngelOracle(G, max(n, 2))
    witnesses = {}
    hall_orders = {}
    for comp in prime_graph(G).components():
        if 2 in comp:
            continue
        H = hall_subgroup(G, comp, seed=seed)
        key = tuple(comp)
        if H is None:
            raise GroupError(f"Hall {comp}-subgroup not found within budget")
        hall_orders[key] = H.order
        found = None
        for h in G.indices(H.elements, check=False):
            if h == G.id:
                continue
            ins = oracle.in_neighbors(int(h), n)
            ins = ins[omega.mask[ins]]
            if not len(ins):
                continue
            outs = oracle.out_neighbors(int(h), n)
            outs = outs[omega.mask[outs]]
            if not len(outs):
                continue
            found = Witness(_preferred(G, int(h), np.sort(ins)), int(h), _preferred(G, int(h), np.sort(outs)))
            break
        witnesses[key] = found
    holds = all(w is not None for w in witnesses.values())
    return CorollaryResult(n, holds, witnesses, hall_orders)


@dataclass
class TypeGraphResult:
    n: int
    holds: bool
    nodes: list  # "omega" then one prime tuple per odd component
    arcs: set  # (i, j) on node positions


def component_type_criterion(G: Group, n: int, oracle: EngelOracle | None = None, seed: int = DEFAULT_SEED,
                             omega: Omega | None = None) -> TypeGraphResult:
    """Strong connectivity of Gamma_n(G) decided on a quotient graph of component types.

    Nodes are Omega and the odd prime-graph components psi.  There is an arc
    from psi to psi' when some element of a Hall psi-subgroup has an
    out-neighbour of type psi' (in-arcs are read off the same way).  Omega is
    a conjugation-invariant commuting component and each block H minus 1 is a
    clique of Gamma_1, so Gamma_n is strongly connected iff every node
    reaches Omega and is reached from it.  Unlike :func:`corollary_criterion`
    this allows paths that pass through other odd blocks.
    """
    if not is_simple(G):
        raise CriterionInapplicable(f"{G.name} is not simple")
    omega = omega or find_omega(G)
    oracle = oracle or EngelOracle(G, max(n, 2))
    odd = [tuple(c) for c in prime_graph(G).components() if 2 not in c]
    nodes = ["omega"] + odd
    orders = G.element_orders
    node_of = np.full(G.order, -1, dtype=np.int64)
    node_of[omega.mask] = 0
    for k, comp in enumerate(odd, start=1):
        hit = np.zeros(G.order, dtype=bool)
        for r in comp:
            hit |= orders % r == 0
        node_of[hit & ~omega.mask] = k
    stray = np.flatnonzero(node_of < 0)
    if len(stray) > 1:  # only the identity may be left over
        raise CriterionInapplicable(f"{G.name}: {len(stray) - 1} elements outside Omega and every odd component")
    arcs = set()
    for k, comp in enumerate(odd, start=1):
        H = hall_subgroup(G, list(comp), seed=seed)
        if H is None:
            raise GroupError(f"Hall {list(comp)}-subgroup not found within budget")
        for h in G.indices(H.elements, check=False):
            if h == G.id:
                continue
            for j in set(node_of[oracle.out_neighbors(int(h), n)].tolist()) - {-1, k}:
                arcs.add((k, j))
            for j in set(node_of[oracle.in_neighbors(int(h), n)].tolist()) - {-1, k}:
                arcs.add((j, k))
    fwd, bwd = {0}, {0}
    for _ in nodes:
        fwd |= {b for a, b in arcs if a in fwd}
        bwd |= {a for a, b in arcs if b in bwd}
    holds = len(fwd) == len(bwd) == len(nodes)
    return TypeGraphResult(n, holds, nodes, arcs)


def subgroup_extension_check(G: Group, omega: Omega, g: int, H: Group, n: int = 2):
    """Elements h1, h2 of H inside Omega with h1 |->_n g |->_n h2, or None."""
    hidx = G.indices(H.elements)
    if np.any(hidx < 0):
        raise GroupError("H is not a subgroup of G")
    if g not in set(hidx.tolist()):
        raise GroupError("g is not in H")
    inside = hidx[omega.mask[hidx]]
    h1 = [int(h) for h in inside if engel_arc(G, int(h), g, n)]
    h2 = [int(h) for h in inside if engel_arc(G, g, int(h), n)]
    if not h1 or not h2:
        return None
    return min(h1), min(h2)


def normalizer_inbound(G: Group, g: int, primes=None) -> int | None:
    """Some z' in N_G(<g>) with z' |->_2 g whose order involves only ``primes``.

    ``primes`` defaults to the prime-graph component containing 2.  Centralizer
    elements are tried first.
    """
    if g == G.id:
        raise ValueError("g must be nontrivial")
    if primes is None:
        primes = next(c for c in prime_graph(G).components() if 2 in c)
    primes = set(primes)
    C = G.closure([g])
    cidx = set(G.indices(C.elements, check=False).tolist())
    N = G.indices(G.normalizer(C).elements, check=False)
    cent = set(G.centralizer_indices(g).tolist())
    orders = G.element_orders
    ordered = sorted((int(z) for z in N), key=lambda z: (z not in cent, z))
    for z in ordered:
        if z == G.id or not set(factorint(int(orders[z]))) <= primes:
            continue
        if G.comm(z, g) in cidx and engel_arc(G, z, g, 2):
            return z
    return None


def random_escape(G: Group, g: int, budget: int = 200, seed: int = DEFAULT_SEED) -> int | None:
    """Seeded sampling (without replacement) of involutions z with g |->_2 z."""
    if g == G.id:
        raise ValueError("g must be nontrivial")
    rng = np.random.default_rng(seed)
    inv = G.involutions()
    for z in rng.permutation(inv)[:budget]:
        if engel_arc(G, g, int(z), 2):
            return int(z)
    return None


def find_subgroup(G: Group, g: int, order: int, seed: int = DEFAULT_SEED, budget: int = 2000,
                  test=None) -> Group | None:
    """Random search for <g, y> of the given order (and passing ``test``)."""
    rng = np.random.default_rng(seed)
    for y in rng.permutation(G.order)[:budget]:
        try:
            H = G.closure([g, int(y)], limit=order)
        except GroupError:
            continue
        if H.order == order and (test is None or test(H)):
            return H
    return None


# -- reports ---------------------------------------------------------------------------

@dataclass
class ConnectivityReport:
    group: str
    order: int
    method: str  # direct | corollary | subgroup-extension
    n_tested: list
    outcome: str
    computed: int | None = None
    predicted: str | None = None
    match: bool | None = None  # None: no tabulated claim to compare with
    witnesses: list = field(default_factory=list)
    seconds: float = 0.0

    def to_json(self, timing: bool = False) -> str:
        d = asdict(self)
        if not timing:
            d.pop("seconds")
        return json.dumps(d, sort_keys=True)


DEFAULT_TABLE1 = (
    "alt 5", "alt 6", "alt 7", "sym 5", "sym 6", "sym 7",
    "psl2 7", "psl2 8", "psl2 11", "psl2 13", "psl2 16", "psl2 17", "psl2 19",
    "psl2 23", "psl2 25", "psl2 27", "psl2 29", "psl2 31",
    "psl3 4", "m10", "pgl2_9", "pgammal2_9",
)


def table1_entry(spec: str, n_cap: int = DEFAULT_N_CAP, cache_dir=None) -> ConnectivityReport:
    t0 = time.perf_counter()
    G = build_group(spec, cache_dir=cache_dir)
    pred = prediction_for(spec)
    res = min_strong_n(G, n_cap)
    outcome = f"n={res.n}" if res.found else f"none up to {n_cap}"
    match = None
    if pred is not None:
        match = res.n == pred.n if pred.n is not None else not res.found
    return ConnectivityReport(
        group=spec, order=G.order, method="direct",
        n_tested=[s["n"] for s in res.steps], outcome=outcome, computed=res.n,
        predicted=pred.describe() if pred else None, match=match,
        seconds=round(time.perf_counter() - t0, 3),
    )


def verify_table1_suite(selection=DEFAULT_TABLE1, n_cap: int = DEFAULT_N_CAP, threads: int = 1,
                        cache_dir=None) -> list[ConnectivityReport]:
    """Run :func:`min_strong_n` against the table for each group; results keep selection order."""
    selection = list(selection)
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            return list(pool.map(lambda s: table1_entry(s, n_cap, cache_dir), selection))
    return [table1_entry(s, n_cap, cache_dir) for s in selection]


def _node(label) -> str:
    return label if isinstance(label, str) else "{" + ",".join(map(str, label)) + "}"


def sporadic_reports(G: Group, n: int = 2, seed: int = DEFAULT_SEED, direct: bool = True,
                     spec: str | None = None) -> list[ConnectivityReport]:
    """The local strategy for one group, then the two global criteria and (optionally) the direct search.

    For each odd prime-graph component an element g of prime order is taken;
    the local searches look for an inbound arc from the normalizer of <g> and
    an outbound arc to an involution.
    """
    name = spec or G.name
    oracle = EngelOracle(G, max(n, 2))
    omega = find_omega(G)
    pred = prediction_for(spec) if spec else None
    expect = None if pred is None else pred.n is not None and pred.n <= n
    reports = []
    for comp in prime_graph(G).components():
        if 2 in comp:
            continue
        p = comp[0]
        g = int(np.flatnonzero(G.element_orders == p)[0])
        z_in = normalizer_inbound(G, g)
        z_out = random_escape(G, g, seed=seed)
        ok = z_in is not None and z_out is not None
        reports.append(ConnectivityReport(
            group=name, order=G.order, method="subgroup-extension", n_tested=[n],
            outcome=f"prime {p}: inbound {'found' if z_in is not None else 'none'}, "
                    f"escape {'found' if z_out is not None else 'none'}",
            witnesses=[{"x": z_in, "h": g, "y": z_out}] if ok else [],
        ))
    cor = corollary_criterion(G, n, oracle, seed=seed, omega=omega)
    wit = [{"x": w.x, "h": w.h, "y": w.y} for w in cor.witnesses.values() if w is not None]
    reports.append(ConnectivityReport(
        group=name, order=G.order, method="corollary", n_tested=[n],
        outcome="criterion holds" if cor.holds else "criterion fails", witnesses=wit,
        predicted=None if expect is None else ("strongly connected" if expect else "not strongly connected"),
        match=None if expect is None else cor.holds == expect,
    ))
    typ = component_type_criterion(G, n, oracle, seed=seed, omega=omega)
    reports.append(ConnectivityReport(
        group=name, order=G.order, method="component-types", n_tested=[n],
        outcome=("strongly connected" if typ.holds else "not strongly connected")
        + " via " + ", ".join(f"{_node(typ.nodes[a])}->{_node(typ.nodes[b])}" for a, b in sorted(typ.arcs)),
        predicted=None if expect is None else ("strongly connected" if expect else "not strongly connected"),
        match=None if expect is None else typ.holds == expect,
    ))
    if direct:
        ok = strongly_connected(oracle, n)
        reports.append(ConnectivityReport(
            group=name, order=G.order, method="direct", n_tested=[n],
            outcome="strongly connected" if ok else "not strongly connected",
            predicted=None if expect is None else ("strongly connected" if expect else "not strongly connected"),
            match=None if expect is None else ok == expect,
        ))
    return reports


def summary_table(reports) -> str:
    rows = [("Group", "|G|", "computed n", "table", "match")]
    for r in reports:
        m = "-" if r.match is None else ("yes" if r.match else "NO")
        rows.append((r.group, str(r.order), r.outcome, r.predicted or "(no claim)", m))
    widths = [max(len(row[i]) for row in rows) for i in range(5)]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(row, widths)) for row in rows)
