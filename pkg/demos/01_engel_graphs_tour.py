"""
A first look at Engel graphs
============================

Builds a few small groups, computes Engel depths, and asks for which n the
graph Gamma_n is strongly connected.
"""
import numpy as np

from engelgraphs.catalog import build_group
from engelgraphs.connectivity import min_strong_n, strongly_connected
from engelgraphs.engel_graphs import EngelOracle, commuting_components, engel_depth, prime_graph
from engelgraphs.group_core import cycle_string, parse_perm

# %% Engel depth: the first k with [x, _k y] = 1
A5 = build_group("alt 5")
x = A5.index(parse_perm("(0 1 2 3 4)", 5))
y = A5.index(parse_perm("(0 1 2)", 5))
z = A5.index(parse_perm("(0 1)(2 3)", 5))
for a, b in [(x, y), (y, y), (z, A5.index(parse_perm("(0 2)(1 3)", 5)))]:
    print(cycle_string(A5.elements[a]), cycle_string(A5.elements[b]), "->", engel_depth(A5, a, b))

# %% Commuting graph and prime graph
print("Alt(5) commuting components:", sorted(len(c) for c in commuting_components(A5)))
print("Alt(5) prime graph:", prime_graph(A5).components())

# %% Graph sizes and arcs for Alt(6)
A6 = build_group("alt 6")
oracle = EngelOracle(A6, 4)
for n in range(1, 5):
    view = oracle.graph(n)
    arcs = sum(len(view.out_neighbors(int(v))) for v in view.vertices)
    print(f"Gamma_{n}(Alt6): {len(view.vertices)} vertices, {arcs} arcs,",
          "strongly connected" if strongly_connected(oracle, n) else "not strongly connected")

# %% The smallest such n for a handful of groups
for spec in ["alt 5", "alt 6", "alt 7", "psl2 7", "psl2 11", "psl2 13"]:
    res = min_strong_n(build_group(spec), n_cap=6)
    print(f"{spec:8s} n = {res.n if res.found else 'none up to 6'}")

# %% Out-degree profile of Gamma_2(Alt 6) by element order
view = oracle.graph(2)
orders = A6.element_orders[view.vertices]
deg = np.array([len(view.out_neighbors(int(v))) for v in view.vertices])
for o in np.unique(orders):
    print(f"order {o}: mean out-degree {deg[orders == o].mean():.1f}")
