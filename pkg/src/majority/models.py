"""Answer semantics of the four query models and the output contract."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Iterable, Union

from .hypercore.hypergraph import Coloring, Hypergraph, mask_of, members_of


class ModelId(str, Enum):
    OM = "OM"   # color-anonymous partition of the query
    CM = "CM"   # size of the smaller color class inside the query
    GM = "GM"   # YES iff the query is bichromatic
    BM = "BM"   # GM, and a YES also points out one bichromatic pair

    @classmethod
    def parse(cls, s) -> "ModelId":
        return s if isinstance(s, cls) else cls(str(s).upper())


@dataclass(frozen=True)
class OMAnswer:
    # side holding the query's least ball comes first
    sides: tuple[tuple[int, ...], tuple[int, ...]]


@dataclass(frozen=True)
class CMAnswer:
    count: int


@dataclass(frozen=True)
class GMAnswer:
    yes: bool


@dataclass(frozen=True)
class BMAnswer:
    yes: bool
    pair: tuple[int, int] | None = None

    def __post_init__(self):
        if self.yes != (self.pair is not None):
            raise ValueError("a BM answer carries a pair exactly when it is YES")
        if self.pair is not None:
            x, y = self.pair
            if x == y:
                raise ValueError("BM pair must be two distinct balls")
            object.__setattr__(self, "pair", (min(x, y), max(x, y)))


Answer = Union[OMAnswer, CMAnswer, GMAnswer, BMAnswer]


@dataclass(frozen=True)
class Ball:
    index: int


@dataclass(frozen=True)
class NoMajority:
    pass


NO_MAJORITY = NoMajority()
Output = Union[Ball, NoMajority]


@dataclass(frozen=True)
class AnswerVector:
    model: ModelId
    answers: tuple[Answer, ...]

    def __len__(self):
        return len(self.answers)


def _qmask(query) -> int:
    return query if isinstance(query, int) else mask_of(query)


def valid_outputs(c: Coloring) -> frozenset[Output]:
    b = c.blue.bit_count()
    if 2 * b > c.n:
        return frozenset(Ball(i) for i in members_of(c.blue))
    if 2 * b < c.n:
        return frozenset(Ball(i) for i in members_of(c.red))
    return frozenset([NO_MAJORITY])


def is_valid(out: Output, c: Coloring) -> bool:
    return out in valid_outputs(c)


def answer(model, query: Iterable[int] | int, c: Coloring) -> Answer:
    """Answer of a deterministic model (OM, CM or GM) to one query."""
    model = ModelId.parse(model)
    q = _qmask(query)
    inside = q & c.blue
    if model is ModelId.OM:
        first = inside if inside & q & -q else q & ~c.blue
        return OMAnswer((members_of(first), members_of(q ^ first)))
    if model is ModelId.CM:
        b = inside.bit_count()
        return CMAnswer(min(b, q.bit_count() - b))
    if model is ModelId.GM:
        return GMAnswer(inside != 0 and inside != q)
    raise ValueError("BM answers are a set chosen by the adversary; use bm_answers")


def bm_answers(query: Iterable[int] | int, c: Coloring) -> frozenset[BMAnswer]:
    q = _qmask(query)
    blue = members_of(q & c.blue)
    red = members_of(q & ~c.blue)
    if not blue or not red:
        return frozenset([BMAnswer(False)])
    return frozenset(BMAnswer(True, (x, y)) for x, y in product(blue, red))


def answer_vector(model, queries: Hypergraph, c: Coloring) -> AnswerVector:
    model = ModelId.parse(model)
    if model is ModelId.BM:
        raise ValueError("BM is nondeterministic; enumerate bm_answers per query instead")
    return AnswerVector(model, tuple(answer(model, q, c) for q in queries.edges))


def permits(model, query, ans: Answer, c: Coloring) -> bool:
    """Whether coloring ``c`` can produce ``ans`` on ``query`` under ``model``."""
    model = ModelId.parse(model)
    if model is ModelId.BM:
        return ans in bm_answers(query, c)
    return answer(model, query, c) == ans


def coarsen(ans: Answer, query, target) -> Answer:
    """Map an answer to what a coarser model would have said on the same query.

    OM determines CM, CM determines GM, and BM determines GM.
    """
    target = ModelId.parse(target)
    size = _qmask(query).bit_count()
    if isinstance(ans, OMAnswer):
        if target is ModelId.OM:
            return ans
        smaller = min(len(ans.sides[0]), len(ans.sides[1]))
        return CMAnswer(smaller) if target is ModelId.CM else coarsen(CMAnswer(smaller), query, target)
    if isinstance(ans, CMAnswer):
        if target is ModelId.CM:
            return ans
        if target is ModelId.GM:
            return GMAnswer(ans.count > 0)
    if isinstance(ans, BMAnswer) and target in (ModelId.GM, ModelId.BM):
        return GMAnswer(ans.yes) if target is ModelId.GM else ans
    if isinstance(ans, GMAnswer) and target is ModelId.GM:
        return ans
    raise ValueError(f"cannot coarsen {type(ans).__name__} on a {size}-query to {target.value}")


def model_of(ans: Answer) -> ModelId:
    return {OMAnswer: ModelId.OM, CMAnswer: ModelId.CM,
            GMAnswer: ModelId.GM, BMAnswer: ModelId.BM}[type(ans)]


def answer_key(ans: Answer):
    """Plain hashable tuple for an answer; fast equality in tight loops."""
    if isinstance(ans, OMAnswer):
        return ans.sides
    if isinstance(ans, CMAnswer):
        return ans.count
    if isinstance(ans, GMAnswer):
        return ans.yes
    return ans.pair if ans.yes else None


def _feasible(q: int, ans: Answer, blue: int, red: int) -> bool:
    """Whether a partial coloring (blue, red disjoint) can still give ``ans`` on q."""
    b, r = (q & blue).bit_count(), (q & red).bit_count()
    free = q.bit_count() - b - r
    if isinstance(ans, OMAnswer):
        first, second = mask_of(ans.sides[0]), mask_of(ans.sides[1])
        if first | second != q or first & second or not first & q & -q:
            return False
        # first side one color, second side the other
        return not ((first & blue and first & red) or (second & blue and second & red)
                    or (first & blue and second & blue) or (first & red and second & red))
    if isinstance(ans, CMAnswer):
        size = q.bit_count()
        return any(min(t, size - t) == ans.count for t in range(b, b + free + 1))
    if isinstance(ans, BMAnswer) and ans.yes:
        x, y = ans.pair
        if not (q >> x & 1 and q >> y & 1):
            return False
        return not ((blue >> x & 1 and blue >> y & 1) or (red >> x & 1 and red >> y & 1))
    if ans.yes:
        return free > 0 or (b > 0 and r > 0)
    return b == 0 or r == 0


def consistent_coloring(queries: Hypergraph, answers) -> Coloring | None:
    """Some coloring producing ``answers`` on ``queries``, found by
    backtracking over balls; None when there is none."""
    n = queries.n
    pairs = list(zip(queries.edges, answers))
    touching: list[list[tuple[int, Answer]]] = [[] for _ in range(n)]
    for q, a in pairs:
        if not _feasible(q, a, 0, 0):
            return None
        for v in members_of(q):
            touching[v].append((q, a))
    order = sorted(range(n), key=lambda v: (-len(touching[v]), v))

    def go(i, blue, red):
        if i == n:
            return blue
        v = order[i]
        bit = 1 << v
        # every answer is swap-invariant, so the first ball may be fixed blue
        options = ((blue | bit, red), (blue, red | bit)) if i else ((blue | bit, red),)
        for nb, nr in options:
            if all(_feasible(q, a, nb, nr) for q, a in touching[v]):
                got = go(i + 1, nb, nr)
                if got is not None:
                    return got
        return None

    blue = go(0, 0, 0)
    return None if blue is None else Coloring(n, blue)
