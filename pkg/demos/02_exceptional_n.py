"""
Which groups need n > 2
=======================

Runs the direct search over the tabulated exceptions and prints the
computed value next to the tabulated one.
"""
from engelgraphs.connectivity import predict_table1, summary_table, verify_table1_suite

groups = ["alt 5", "alt 6", "m10", "psl2 7", "psl2 8", "psl2 11", "psl2 13", "psl2 23"]
reports = verify_table1_suite(groups, n_cap=6)
print(summary_table(reports))

# %% The q = 3 mod 4 row: one more than the 2-adic valuation of (q+1)/2
for q in [7, 11, 19, 23, 31, 47, 127]:
    print(f"PSL2({q}): n = {predict_table1('psl2', q).n}")
