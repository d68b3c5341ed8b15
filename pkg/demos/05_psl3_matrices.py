"""
A 2-Engel pair in PSL_3(q), q even
==================================

g is the companion matrix of T^3 + aT + 1 (irreducible), h = diag(c, c, c^-2).
"""
from engelgraphs.matrix_groups import MatrixRep, engel_matrices, mat_comm, perm_matrix_order_agree

for q in (8, 16, 32, 64):
    E = engel_matrices(q)
    com = E.commutator()
    twice = MatrixRep(mat_comm(E.F, com.mat, E.h.mat), E.F)
    print(f"q={q:3d} a={E.a:3d} |g|={E.g.order():5d} bound={E.expected_order_bound():5d}",
          "[g,h]=diag(1,c^3,c^-3)" if com == E.expected_commutator() else "unexpected [g,h]",
          "[g,h,h]=1" if twice.is_identity() else "[g,h,h]!=1")

print("orders as permutations of the projective plane (q=8):", perm_matrix_order_agree(engel_matrices(8).g))
