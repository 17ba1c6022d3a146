"""
Lower bounds against exact values
=================================

Each row is an exact rational. Rows that hold only for large n are shown
but not checked.
"""

from fractions import Fraction

from majority.analysis import bounds_report, improved_ratio_gap, lb_cm_improved, optimize_i

for model, k, n in [("CM", 2, 6), ("GM", 3, 6), ("BM", 3, 5)]:
    print(bounds_report(model, k, n).table())
    print()

print("refined even-k bound, k=8:")
for n in (9, 90, 900):
    v = lb_cm_improved(8, n, 5)
    print(f"  n={n}: {v} ~ {float(v):.3f}  vs 2n/9 = {float(Fraction(2 * n, 9)):.3f}  best i = {optimize_i(8, n)[0]}")

print("distance of k*bound/n from 11/5:")
for k in (10, 20, 40, 80):
    print(f"  k={k}: {float(improved_ratio_gap(k, 10**6)):.4f}")
