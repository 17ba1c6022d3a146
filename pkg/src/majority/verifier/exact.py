"""Exact N(X, k, n) for desk-scale instances.

Query sets are enumerated level by level (q = 0, 1, 2, ...) with one
representative per orbit of the ball-permutation group; the answer is the
first level containing a sufficient set. Asking every k-set is the best any
query set can do, so when that fails the instance is infeasible and the
value is ``None``.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from ..errors import InvalidParameters, ResourceLimit
from ..hypercore.canonical import canonical_form
from ..hypercore.hypergraph import Hypergraph, k_subsets
from ..models import ModelId
from .bm import is_sufficient_bm
from .deterministic import is_sufficient

DEFAULT_MAX_CANDIDATES = 2_000_000


@dataclass(frozen=True)
class ExactResult:
    model: ModelId
    k: int
    n: int
    value: int | None                 # None: no query set at all suffices
    optimal_queries: Hypergraph | None
    candidates_checked: int = 0
    all_optimal: tuple[Hypergraph, ...] = field(default=(), compare=False)


def _sufficient(model: ModelId, queries: Hypergraph) -> bool:
    if model is ModelId.BM:
        return is_sufficient_bm(queries)
    return is_sufficient(model, queries)


def _check(job):
    model, n, k, edges = job
    return _sufficient(model, Hypergraph(n, edges, k))


def exact_n(model, k: int, n: int, upper_hint: int | None = None, lower: int = 0,
            max_candidates: int = DEFAULT_MAX_CANDIDATES, time_budget: float | None = None,
            threads: int = 1, all_optimal: bool = False) -> ExactResult:
    """Least number of k-queries that suffices for n balls under ``model``.

    ``lower`` skips testing levels below it (it must be a proven lower bound).
    ``upper_hint`` only tightens the bracket reported when the budget runs out.
    """
    model = ModelId.parse(model)
    if not 2 <= k <= n:
        raise InvalidParameters(f"need 2 <= k <= n, got k={k}, n={n}")
    deadline = None if time_budget is None else time.monotonic() + time_budget
    every = tuple(k_subsets(n, k))
    if not _sufficient(model, Hypergraph(n, every, k)):
        return ExactResult(model, k, n, None, None, 1)
    upper = len(every) if upper_hint is None else min(upper_hint, len(every))

    pool = ProcessPoolExecutor(threads) if threads > 1 else None
    checked = 1
    level: set[tuple[int, ...]] = {()}
    try:
        for q in range(len(every) + 1):
            reps = sorted(level)
            if q >= lower:
                if checked + len(reps) > max_candidates:
                    raise ResourceLimit(f"candidate budget {max_candidates} exhausted at q={q}",
                                        bracket=(q, upper))
                jobs = [(model, n, k, r) for r in reps]
                if pool is not None:
                    verdicts = list(pool.map(_check, jobs, chunksize=max(1, len(jobs) // (4 * threads))))
                else:
                    verdicts = []
                    for job in jobs:
                        if deadline is not None and time.monotonic() > deadline:
                            raise ResourceLimit("time budget exhausted", bracket=(q, upper))
                        verdicts.append(_check(job))
                checked += len(reps)
                winners = [Hypergraph(n, r, k) for r, ok in zip(reps, verdicts) if ok]
                if winners:
                    return ExactResult(model, k, n, q, winners[0], checked,
                                       tuple(winners) if all_optimal else ())
            nxt = set()
            for r in reps:
                if deadline is not None and time.monotonic() > deadline:
                    raise ResourceLimit("time budget exhausted", bracket=(q + 1, upper))
                present = set(r)
                for e in every:
                    if e not in present:
                        nxt.add(canonical_form(n, r + (e,)))
            level = nxt
    finally:
        if pool is not None:
            pool.shutdown()
    raise AssertionError("the complete query set was sufficient but no level matched")
