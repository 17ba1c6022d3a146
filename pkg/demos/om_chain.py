"""
Output model: a chain of queries
================================

Overlapping queries in a chain pin down each ball's color relative to ball 0.
Splitting the same queries into two disjoint parts loses that and the
verifier finds two colorings it cannot tell apart.
"""

from majority.formats import replay_witness
from majority.hypercore import Coloring, Hypergraph
from majority.models import answer_vector, valid_outputs
from majority.strategies import build_om, decode
from majority.verifier import verify_deterministic

s = build_om(8, 3)
print("queries:", s.queries.edge_sets())

c = Coloring.from_blue(8, [0, 3, 5, 6, 7])
av = answer_vector("OM", s.queries, c)
for q, a in zip(s.queries.edge_sets(), av.answers):
    print(" ", q, "->", a.sides)
out = decode(s, av)
print("decoded:", out, "valid:", out in valid_outputs(c))

cert = verify_deterministic("OM", s.queries)
print("answer classes in the certificate:", len(cert.table))

# two disjoint triples on six balls
split = Hypergraph.from_sets(6, [(0, 1, 2), (3, 4, 5)], 3)
w = verify_deterministic("OM", split)
print("\ndisjoint triples give a witness:")
for col in w.colorings:
    print("  blue", col.blue_members(), "valid", sorted(map(str, valid_outputs(col))))
print("replay:", replay_witness(w))
