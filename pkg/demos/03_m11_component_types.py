"""
M11: paths through the odd components
=====================================

In M11 an element h of order 11 is self-centralizing, so an arc x -> h in
Gamma_2 forces x into the normalizer of <h>, a group of order 55.  No element
of even order points at h.  The graph is still strongly connected because
paths enter h through the elements of order 5.
"""
import numpy as np

from engelgraphs.catalog import build_group
from engelgraphs.connectivity import component_type_criterion, corollary_criterion, find_omega, strongly_connected
from engelgraphs.engel_graphs import EngelOracle, prime_graph

G = build_group("m11")
oracle = EngelOracle(G, 2)
omega = find_omega(G)
print("prime graph:", prime_graph(G).components())
print("|Omega| =", int(omega.mask.sum()))

h = int(np.flatnonzero(G.element_orders == 11)[0])
ins = oracle.in_neighbors(h, 2)
print("orders of in-neighbours of h:", sorted(set(G.element_orders[ins].tolist())))
print("|N(<h>)| =", G.normalizer(G.closure([h])).order)

# %% Arcs between component types
typ = component_type_criterion(G, 2, oracle, omega=omega)
for a, b in sorted(typ.arcs):
    print(f"  {typ.nodes[a]} -> {typ.nodes[b]}")
print("type graph criterion:", typ.holds)
print("direct search:       ", strongly_connected(oracle, 2))
print("Omega -> h -> Omega only:", corollary_criterion(G, 2, oracle, omega=omega).holds)
