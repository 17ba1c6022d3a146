"""
Pointed pairs: certificates as decision DAGs
============================================

When a YES answer also names a bichromatic pair chosen by an adversary, the
answer vector is no longer a function of the coloring. The verifier walks
the queries keeping the set of still-possible colorings and emits a DAG that
is replayed against every coloring and every adversary choice.
"""

from majority.formats import replay_certificate, replay_witness
from majority.hypercore import Hypergraph
from majority.strategies import build_gm
from majority.verifier import BMCertificate, verify_bm

for n in (5, 7, 9):
    s = build_gm(n, 3)
    cert = verify_bm(s.queries)
    asks = sum(1 for node in cert.nodes if node[0] == "ask")
    print(f"n={n}: {len(s.queries)} queries, certificate={isinstance(cert, BMCertificate)}, "
          f"{asks} decision nodes, replay={replay_certificate(cert)[0]}")

one = verify_bm(Hypergraph.from_sets(3, [(0, 1, 2)], 3))
print("\none query on three balls suffices:", isinstance(one, BMCertificate))

w = verify_bm(Hypergraph.from_sets(6, [(0, 1, 2), (3, 4, 5)], 3))
print("disjoint queries fail; adversary answers:", w.answers)
print("replay:", replay_witness(w))
