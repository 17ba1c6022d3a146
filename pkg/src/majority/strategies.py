"""Upper-bound query strategies and their constructive decoders.

Each constructor returns a :class:`Strategy` whose ``aux`` dict records the
construction data that :func:`decode` relies on.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import ceil

from .errors import InconsistentAnswers, InvalidParameters
from .hypercore import (
    Hypergraph,
    has_property_b,
    has_property_c,
    mask_of,
    members_of,
    min_non_property_b,
    min_non_property_c,
)
from .models import (
    NO_MAJORITY,
    AnswerVector,
    Ball,
    CMAnswer,
    GMAnswer,
    ModelId,
    OMAnswer,
    Output,
    coarsen,
    consistent_coloring,
)

OM_CHAIN = "om-connected-chain"
CM_EVEN_CORE = "cm-even-core"
CM_ODD_FAMILY = "cm-odd-unbalanced-family"
GM_NON_B_FAMILY = "gm-non-b-family"

DEFAULT_FAMILY_CAP = 12


@dataclass(frozen=True)
class Strategy:
    model: ModelId
    queries: Hypergraph
    provenance: str
    aux: dict = field(default_factory=dict, compare=False)

    @property
    def n(self) -> int:
        return self.queries.n

    @property
    def k(self) -> int:
        return self.queries.uniform_k


def om_count(n: int, k: int) -> int:
    """Exact non-adaptive OM query count."""
    return ceil((n - 1) / (k - 1)) if n % 2 == 0 else ceil((n - 2) / (k - 1))


def _chain(m: int, k: int) -> list[int]:
    q = ceil((m - 1) / (k - 1))
    return [mask_of(range(min(t * (k - 1), m - k), min(t * (k - 1), m - k) + k)) for t in range(q)]


def build_om(n: int, k: int) -> Strategy:
    """Connected chain of k-sets; for odd n the chain skips ball n-1."""
    if not 2 <= k <= n:
        raise InvalidParameters(f"build_om needs 2 <= k <= n, got n={n}, k={k}")
    spare = None
    m = n
    if n % 2 == 1:
        m, spare = n - 1, n - 1
    if m < k:
        # only n == k odd lands here; one query over every ball is connected
        edges, spare = [mask_of(range(k))], None
    else:
        edges = _chain(m, k)
    return Strategy(ModelId.OM, Hypergraph(n, tuple(edges), k), OM_CHAIN, {"spare": spare})


def build_cm_even(n: int, k: int) -> Strategy:
    if k % 2 or k < 2 or n < 2 * k - 1:
        raise InvalidParameters(f"build_cm_even needs even k and n >= 2k-1, got n={n}, k={k}")
    core = mask_of(range(k - 1))
    edges = tuple(core | 1 << j for j in range(k - 1, n))
    return Strategy(ModelId.CM, Hypergraph(n, edges, k), CM_EVEN_CORE,
                    {"core": list(range(k - 1))})


@lru_cache(maxsize=None)
def _min_non_c(k, n, cap):
    return min_non_property_c(k, n, cap)


@lru_cache(maxsize=None)
def _min_non_b(k, n, cap):
    return min_non_property_b(k, n, cap)


def _blocking_set_exists(family: list[int], n: int, k: int) -> bool:
    """Is there a ((k+1)/2)-set meeting every member in >= (k-1)/2 balls?

    Such a set is exactly what lets every CM answer equal (k-1)/2, which the
    odd-k decoder cannot resolve.
    """
    need = (k - 1) // 2
    for b in combinations(range(n), (k + 1) // 2):
        bm = mask_of(b)
        if all((bm & g).bit_count() >= need for g in family):
            return True
    return False


def _extra_edge(family: list[int], n: int, k: int) -> int:
    small = (k - 3) // 2
    cands = [mask_of(c) for c in combinations(range(n), k - 1)]
    for g in cands:
        if g not in family and any((g & e).bit_count() < small for e in family):
            return g
    # for k = 3 no edge can meet another in fewer than 0 balls; fall back to the
    # least edge that kills every blocking set
    for g in cands:
        if g not in family and not _blocking_set_exists(family + [g], n, k):
            return g
    raise InvalidParameters(f"no extra edge of size {k - 1} exists on {n} balls")


def _supersets(family: list[int], n: int) -> tuple[int, ...]:
    qs = {g | 1 << j for g in family for j in range(n) if not g >> j & 1}
    return tuple(sorted(qs, key=members_of))


def build_cm_odd(n: int, k: int, F: Hypergraph | None = None,
                 cap: int = DEFAULT_FAMILY_CAP) -> Strategy:
    """All k-supersets of a (k-1)-uniform family without Property C, extended
    by one edge when all pairwise intersections are large."""
    if k % 2 == 0 or k < 3 or n < 2 * k - 1:
        raise InvalidParameters(f"build_cm_odd needs odd k >= 3 and n >= 2k-1, got n={n}, k={k}")
    if F is None:
        res = _min_non_c(k - 1, n, cap)
        if res.witness is None:
            raise InvalidParameters(f"no {k - 1}-uniform non-C family with <= {cap} edges on {n} balls")
        F = res.witness
    if F.n > n or any(e.bit_count() != k - 1 for e in F.edges):
        raise InvalidParameters("F must be (k-1)-uniform on at most n balls")
    if has_property_c(F).colorable:
        raise InvalidParameters("F has Property C")
    family = list(F.edges)
    small = (k - 3) // 2
    extra = None
    if all((a & b).bit_count() >= small for a, b in combinations(family, 2)):
        extra = _extra_edge(family, n, k)
        family.append(extra)
    queries = Hypergraph(n, _supersets(family, n), k)
    aux = {"family": [list(members_of(e)) for e in family], "base_size": len(F.edges),
           "extra_edge": list(members_of(extra)) if extra is not None else None}
    return Strategy(ModelId.CM, queries, CM_ODD_FAMILY, aux)


def build_gm(n: int, k: int, F: Hypergraph | None = None,
             cap: int = DEFAULT_FAMILY_CAP) -> Strategy:
    """All k-supersets of a (k-1)-uniform non-B family on balls 0..n-2.

    Serves GM and, since BM answers refine GM answers, BM as well.
    """
    if k < 2 or n < 2 * k - 1:
        raise InvalidParameters(f"build_gm needs k >= 2 and n >= 2k-1, got n={n}, k={k}")
    if F is None:
        res = _min_non_b(k - 1, n - 1, cap)
        if res.witness is None:
            raise InvalidParameters(f"no {k - 1}-uniform non-B family with <= {cap} edges on {n - 1} balls")
        F = res.witness
    if F.n > n or any(e.bit_count() != k - 1 for e in F.edges):
        raise InvalidParameters("F must be (k-1)-uniform")
    if F.support() >> (n - 1):
        raise InvalidParameters("F must avoid ball n-1")
    if has_property_b(F).colorable:
        raise InvalidParameters("F has Property B")
    family = list(F.edges)
    queries = Hypergraph(n, _supersets(family, n), k)
    return Strategy(ModelId.GM, queries, GM_NON_B_FAMILY,
                    {"family": [list(members_of(e)) for e in family], "spare": n - 1})


# ---------------------------------------------------------------- decoding


def _coarsened(strategy: Strategy, av: AnswerVector):
    qs = strategy.queries.edges
    if len(av.answers) != len(qs):
        raise InconsistentAnswers(f"{len(av.answers)} answers for {len(qs)} queries")
    target = ModelId.GM if strategy.model is ModelId.BM else strategy.model
    try:
        return [coarsen(a, q, target) for a, q in zip(av.answers, qs)]
    except ValueError as exc:
        raise InconsistentAnswers(str(exc)) from None


def _decode_om(strategy, answers):
    n = strategy.n
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in range(n)}
    for q, a in zip(strategy.queries.edges, answers):
        s0, s1 = a.sides
        if mask_of(s0) | mask_of(s1) != q or mask_of(s0) & mask_of(s1) or not s0 or q & -q != 1 << min(s0):
            raise InconsistentAnswers(f"answer {a} is not a canonical partition of {members_of(q)}")
        for side in (s0, s1):
            for v in side[1:]:
                adj[side[0]].append((v, 0))
                adj[v].append((side[0], 0))
        if s1:
            adj[s0[0]].append((s1[0], 1))
            adj[s1[0]].append((s0[0], 1))
    spare = strategy.aux.get("spare")
    start = 0
    parity = {start: 0}
    stack = [start]
    while stack:
        u = stack.pop()
        for v, d in adj[u]:
            want = parity[u] ^ d
            if v not in parity:
                parity[v] = want
                stack.append(v)
            elif parity[v] != want:
                raise InconsistentAnswers("OM answers contradict each other")
    covered = set(range(n)) - ({spare} if spare is not None else set())
    if set(parity) != covered:
        raise ValueError("decoder expects the chain strategy's connected query hypergraph")
    sides = [sorted(v for v, p in parity.items() if p == s) for s in (0, 1)]
    if len(sides[0]) != len(sides[1]):
        return Ball(max(sides, key=len)[0])
    return Ball(spare) if spare is not None else NO_MAJORITY


def _split_by_answer(base: int, n: int, lookup):
    """Answers to base|{j} for every ball j outside base, as {j: answer}."""
    return {j: lookup[base | 1 << j] for j in range(n) if not base >> j & 1}


def _unbalanced_base_decode(n, k, base, by_ball):
    """Shared CM step: ``base`` is a (k-1)-set, by_ball maps outside balls
    to CM answers on base|{j}, and base is known to be unbalanced."""
    values = sorted(set(by_ball.values()))
    if len(values) == 1:
        # all outside balls share one color and outnumber base since n >= 2k-1
        return Ball(min(by_ball))
    if len(values) != 2 or values[1] != values[0] + 1 or 2 * values[0] > k - 2:
        raise InconsistentAnswers(f"CM answers {values} around {members_of(base)} are impossible")
    x = values[0]
    same = sorted(j for j, a in by_ball.items() if a == x)        # base's majority color
    other = sorted(j for j, a in by_ball.items() if a == x + 1)
    major = (k - 1 - x) + len(same)
    minor = x + len(other)
    if major == minor:
        return NO_MAJORITY
    return Ball(same[0] if major > minor else other[0])


def _cm_lookup(strategy, answers):
    lookup = {}
    for q, a in zip(strategy.queries.edges, answers):
        if not 0 <= a.count <= q.bit_count() // 2:
            raise InconsistentAnswers(f"CM count {a.count} impossible for a {q.bit_count()}-query")
        lookup[q] = a.count
    return lookup


def _decode_cm_even(strategy, answers):
    core = mask_of(strategy.aux["core"])
    lookup = _cm_lookup(strategy, answers)
    return _unbalanced_base_decode(strategy.n, strategy.k, core,
                                   _split_by_answer(core, strategy.n, lookup))


def _decode_cm_odd(strategy, answers):
    n, k = strategy.n, strategy.k
    half = (k - 1) // 2
    lookup = _cm_lookup(strategy, answers)
    for g in (mask_of(e) for e in strategy.aux["family"]):
        by_ball = _split_by_answer(g, n, lookup)
        if any(a != half for a in by_ball.values()):
            # a balanced member answers (k-1)/2 on every superset
            return _unbalanced_base_decode(n, k, g, by_ball)
    raise InconsistentAnswers("every CM answer equals (k-1)/2, which no coloring produces here")


def _decode_gm(strategy, answers):
    n, k = strategy.n, strategy.k
    lookup = {q: a.yes for q, a in zip(strategy.queries.edges, answers)}
    family = [mask_of(e) for e in strategy.aux["family"]]
    for g in family:
        by_ball = _split_by_answer(g, n, lookup)
        if all(by_ball.values()):
            continue
        # some superset of g is monochromatic, hence g is
        same = g | mask_of(j for j, yes in by_ball.items() if not yes)
        for q, yes in lookup.items():
            inside = q & same
            if yes != (inside != 0 and inside != q):
                raise InconsistentAnswers("GM answers disagree with the reconstructed coloring")
        size = same.bit_count()
        if 2 * size == n:
            return NO_MAJORITY
        full = (1 << n) - 1
        winners = same if 2 * size > n else full & ~same
        return Ball(members_of(winners)[0])
    support = 0
    for g in family:
        support |= g
    outside = ((1 << n) - 1) & ~support
    return Ball(members_of(outside)[0])


_DECODERS = {
    OM_CHAIN: _decode_om,
    CM_EVEN_CORE: _decode_cm_even,
    CM_ODD_FAMILY: _decode_cm_odd,
    GM_NON_B_FAMILY: _decode_gm,
}


def decode(strategy: Strategy, av: AnswerVector) -> Output:
    """Output valid for every coloring consistent with ``av``.

    Answers from a finer model are accepted and coarsened first (OM answers
    for a CM strategy, BM answers for a GM strategy, ...).
    """
    try:
        decoder = _DECODERS[strategy.provenance]
    except KeyError:
        raise ValueError(f"no decoder for provenance {strategy.provenance!r}") from None
    answers = _coarsened(strategy, av)
    # the constructive decoders read only part of the vector; check all of it
    if consistent_coloring(strategy.queries, av.answers) is None:
        raise InconsistentAnswers("no coloring produces this answer vector")
    return decoder(strategy, answers)
