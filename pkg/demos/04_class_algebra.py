"""
Class algebra on small groups
=============================

Class constants from a character table and by counting, a Delta graph with
its lower bound, and the exact Monster arithmetic.
"""

import engelgraphs.class_algebra as ca
from engelgraphs.group_core import alternating_group, parse_perm, sylow_subgroup

table = ca.load_character_table("alt5")
print(table.name, "degrees", table.degrees)
for row in table.values:
    print("  ", [ca.format_cyclotomic(v) for v in row])

G = alternating_group(5)
res = ca.crosscheck_class_constants(G, table)
print(f"{res.triples} class triples, {len(res.mismatches)} mismatches")

# %% Delta(H, C) for H = Alt(4) and C of order 5
H = G.normalizer(sylow_subgroup(G, 2))
x = G.index(parse_perm("(0 1 2 3 4)", 5))
C = G.closure([x])
print(ca.hypotheses_check(G, H, C))
d = ca.delta_graph(G, H, C)
pc = ca.perm_character(G, H, table)
bound = ca.lower_bound_84(table, pc.multiplicities, ca.fusion_map(G, x, table))
print(f"components {d.c}, cosets {d.coset_count}, lower bound {bound}")

iota = int(G.involutions()[0])
for s in ca.slice_sizes(G, iota):
    print(f"  class {s.cls}: |X_Y| = {s.direct}, m|Y|/|I| = {s.formula}")

# %% Monster
rep = ca.monster_check(ca.read_monster_constants())
for c in rep.checks:
    print(f"({c.name}) {'ok' if c.ok else 'FAIL'}  {c.detail}")
print("all identities hold:", rep.ok)
