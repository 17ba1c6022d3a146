"""
Exact query counts on small instances
=====================================

For each model the search walks query sets level by level, one per orbit of
ball permutations, and reports the first level holding a sufficient set.
"-" means no query set at all works.
"""

from majority.analysis import om_exact
from majority.models import ModelId
from majority.verifier import exact_n

print(f"{'k':>2} {'n':>2}  " + "  ".join(f"{m.value:>3}" for m in ModelId) + "   OM formula")
for k in (2, 3):
    for n in range(k, 7):
        vals = [exact_n(m, k, n).value for m in ModelId]
        cells = "  ".join(f"{'-' if v is None else v:>3}" for v in vals)
        print(f"{k:>2} {n:>2}  {cells}   {om_exact(k, n)}")

best = exact_n("CM", 2, 6, all_optimal=True)
print("\noptimal counting-model sets for k=2, n=6:")
for h in best.all_optimal:
    print("  ", h.edge_sets())
