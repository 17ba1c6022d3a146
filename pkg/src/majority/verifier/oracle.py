"""Naive sufficiency check used as an independent oracle.

For every coloring c it rescans all colorings for ones that answer every
query the same way, and intersects their valid outputs. Quadratic in 2^n,
pure Python, and built only on the public per-query answer functions.
"""

from __future__ import annotations

import random
from math import comb

from ..hypercore.hypergraph import Coloring, Hypergraph
from ..models import ModelId, answer, answer_key, valid_outputs

ORACLE_CAP = 16


def cross_check_class_verifier(model, queries: Hypergraph) -> bool:
    model = ModelId.parse(model)
    if model is ModelId.BM:
        raise ValueError("the oracle covers OM, CM and GM")
    n = queries.n
    if n > ORACLE_CAP:
        raise ValueError(f"oracle limited to n <= {ORACLE_CAP}")
    colorings = [Coloring(n, b) for b in range(1 << n)]
    vectors = [tuple(answer_key(answer(model, q, c)) for q in queries.edges) for c in colorings]
    outputs = [valid_outputs(c) for c in colorings]
    for vec in vectors:
        common = None
        for other, outs in zip(vectors, outputs):
            if other == vec:
                common = outs if common is None else common & outs
        if not common:
            return False
    return True


def random_query_sets(count: int, seed: int, max_n: int = 10, max_q: int = 6, ks=(2, 3, 4),
                      models=(ModelId.OM, ModelId.CM, ModelId.GM)):
    """Seeded stream of (model, queries) cases cycling through ``models``."""
    rng = random.Random(seed)
    for idx in range(count):
        model = models[idx % len(models)]
        k = rng.choice(ks)
        n = rng.randint(k, max_n)
        q = rng.randint(0, min(max_q, comb(n, k)))
        edges: set[tuple[int, ...]] = set()
        while len(edges) < q:
            edges.add(tuple(sorted(rng.sample(range(n), k))))
        yield model, Hypergraph.from_sets(n, sorted(edges), k)


def run_crosscheck(count: int, seed: int, max_n: int = 10, max_q: int = 6) -> dict:
    """Compare the vectorised verifier with the naive oracle on random sets."""
    from .deterministic import is_sufficient

    cases = []
    agree = 0
    for model, h in random_query_sets(count, seed, max_n, max_q):
        fast = is_sufficient(model, h)
        slow = cross_check_class_verifier(model, h)
        agree += fast == slow
        cases.append({"model": model.value, "n": h.n, "k": h.uniform_k,
                      "queries": [list(e) for e in h.edge_sets()],
                      "verifier": fast, "oracle": slow})
    return {"kind": "crosscheck", "seed": seed, "count": count, "max_n": max_n, "max_q": max_q,
            "agreements": agree, "disagreements": count - agree, "cases": cases}
