"""
Smallest hypergraphs without Property B or C
============================================

The search grows connected hypergraphs one edge at a time, one
representative per isomorphism class, and stops at the first that cannot be
two-colored.
"""

import time

from majority.hypercore import Hypergraph, are_isomorphic, min_non_property_b, min_non_property_c

fano = Hypergraph.from_sets(7, [(0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5),
                                (1, 4, 6), (2, 3, 6), (2, 4, 5)], 3)

for label, fn, k, n, cap in [("m", min_non_property_b, 2, 5, 4),
                             ("m", min_non_property_b, 3, 7, 8),
                             ("d", min_non_property_c, 2, 6, 4),
                             ("d", min_non_property_c, 4, 8, 6)]:
    t = time.time()
    res = fn(k, n, cap)
    print(f"{label}({k},{n}) = {res.value}   ({time.time() - t:.1f}s)")
    print("   witness:", res.witness.edge_sets())

res = min_non_property_b(3, 7, 8)
print("\nthe 7-edge witness is the Fano plane:", are_isomorphic(res.witness, fano))
