"""Sufficiency of a query set under the deterministic models OM, CM, GM.

All 2^n colorings are encoded as the integers 0..2^n-1 (bit i set means ball
i is blue) and answered with numpy in one pass per query. Colorings with
equal answer vectors form a class; the query set suffices iff every class
has an output that is valid for all of its members.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import InconsistentAnswers, ResourceLimit
from ..hypercore.hypergraph import Coloring, Hypergraph, members_of
from ..models import (
    NO_MAJORITY,
    Answer,
    AnswerVector,
    Ball,
    CMAnswer,
    GMAnswer,
    ModelId,
    OMAnswer,
    Output,
    coarsen,
)

DEFAULT_COLORING_CAP = 24


@dataclass(frozen=True)
class FailureWitness:
    model: ModelId
    queries: Hypergraph
    answers: tuple[Answer, ...]
    colorings: tuple[Coloring, ...]


@dataclass(frozen=True)
class Certificate:
    """Decoder table: raw answer keys per query -> Output.

    Raw keys are the side holding the query's least ball (OM, as a mask),
    the smaller class size (CM) or 0/1 for NO/YES (GM).
    """

    model: ModelId
    queries: Hypergraph
    table: dict

    def decode(self, av: AnswerVector) -> Output:
        key = tuple(raw_key(self.model, q, a) for q, a in zip(self.queries.edges, av.answers))
        try:
            return self.table[key]
        except KeyError:
            raise InconsistentAnswers("answer vector not produced by any coloring") from None

    def entries(self):
        """(AnswerVector, Output) pairs in table order."""
        for key, out in self.table.items():
            yield AnswerVector(self.model, tuple(
                answer_from_key(self.model, q, r) for q, r in zip(self.queries.edges, key))), out


def raw_key(model: ModelId, q: int, a: Answer) -> int:
    a = coarsen(a, q, model)
    if isinstance(a, OMAnswer):
        side = 0
        for v in a.sides[0]:
            side |= 1 << v
        return side
    if isinstance(a, CMAnswer):
        return a.count
    return int(a.yes)


def answer_from_key(model: ModelId, q: int, r: int) -> Answer:
    if model is ModelId.OM:
        return OMAnswer((members_of(r), members_of(q & ~r)))
    if model is ModelId.CM:
        return CMAnswer(int(r))
    return GMAnswer(bool(r))


def all_colorings(n: int) -> np.ndarray:
    return np.arange(1 << n, dtype=np.int64)


def answer_matrix(model: ModelId, queries: Hypergraph, cols: np.ndarray) -> np.ndarray:
    """Raw answer keys, one row per coloring and one column per query."""
    out = np.empty((cols.size, len(queries.edges)), dtype=np.int64)
    for idx, q in enumerate(queries.edges):
        inside = cols & q
        if model is ModelId.OM:
            low = q & -q
            out[:, idx] = np.where(cols & low, inside, q & ~cols)
        else:
            pc = np.bitwise_count(inside).astype(np.int64)
            size = q.bit_count()
            if model is ModelId.CM:
                out[:, idx] = np.minimum(pc, size - pc)
            else:
                out[:, idx] = (pc != 0) & (pc != size)
    return out


def output_masks(n: int, cols: np.ndarray) -> np.ndarray:
    """Valid outputs per coloring: bits 0..n-1 are balls, bit n is NoMajority."""
    pc = np.bitwise_count(cols).astype(np.int64)
    full = (1 << n) - 1
    out = np.where(2 * pc > n, cols, full & ~cols)
    return np.where(2 * pc == n, np.int64(1 << n), out)


def output_from_mask(n: int, m: int) -> Output:
    if m >> n & 1:
        return NO_MAJORITY
    return Ball((m & -m).bit_length() - 1)


def _classes(mat: np.ndarray):
    """Group rows; classes ordered by their least coloring.

    Returns (keys, first, order, starts): class keys in that order, the
    first coloring of each class, and the colorings sorted by class with
    class start offsets."""
    if mat.shape[1] == 0:
        rows = mat.shape[0]
        return (np.zeros((1, 0), dtype=np.int64), np.array([0]),
                np.arange(rows), np.array([0]))
    keys, first, inverse = np.unique(mat, axis=0, return_index=True, return_inverse=True)
    inverse = inverse.reshape(-1)
    rank = np.empty(first.size, dtype=np.int64)
    by_first = np.argsort(first, kind="stable")
    rank[by_first] = np.arange(first.size)
    cls = rank[inverse]
    order = np.argsort(cls, kind="stable")
    starts = np.searchsorted(cls[order], np.arange(first.size))
    return keys[by_first], first[by_first], order, starts


def _greedy_conflict(n: int, members: np.ndarray, outs: np.ndarray) -> list[int]:
    """Colorings (ascending) from one class whose outputs intersect to empty."""
    chosen = [int(members[0])]
    acc = int(outs[0])
    for c, o in zip(members[1:], outs[1:]):
        if acc & int(o) != acc:
            chosen.append(int(c))
            acc &= int(o)
            if acc == 0:
                break
    assert acc == 0
    return chosen


def verify_deterministic(model, queries: Hypergraph, cap: int = DEFAULT_COLORING_CAP):
    """Certificate if ``queries`` always determine a valid output, else the
    first failing answer class (by least coloring) as a FailureWitness."""
    model = ModelId.parse(model)
    if model is ModelId.BM:
        raise ValueError("use verify_bm for BM")
    n = queries.n
    if n > cap:
        raise ResourceLimit(f"n={n} exceeds the coloring cap {cap}")
    cols = all_colorings(n)
    mat = answer_matrix(model, queries, cols)
    outs = output_masks(n, cols)
    keys, _, order, starts = _classes(mat)
    common = np.bitwise_and.reduceat(outs[order], starts)
    bad = np.flatnonzero(common == 0)
    if bad.size:
        ci = int(bad[0])
        stop = starts[ci + 1] if ci + 1 < starts.size else order.size
        members = order[starts[ci]:stop]
        members = np.sort(members)
        chosen = _greedy_conflict(n, members, outs[members])
        key = keys[ci]
        answers = tuple(answer_from_key(model, q, int(r)) for q, r in zip(queries.edges, key))
        return FailureWitness(model, queries, answers, tuple(Coloring(n, c) for c in chosen))
    table = {tuple(int(x) for x in key): output_from_mask(n, int(m)) for key, m in zip(keys, common)}
    return Certificate(model, queries, table)


def is_sufficient(model, queries: Hypergraph, cap: int = DEFAULT_COLORING_CAP) -> bool:
    """Same decision as verify_deterministic without building artifacts."""
    model = ModelId.parse(model)
    n = queries.n
    if n > cap:
        raise ResourceLimit(f"n={n} exceeds the coloring cap {cap}")
    cols = all_colorings(n)
    mat = answer_matrix(model, queries, cols)
    outs = output_masks(n, cols)
    _, _, order, starts = _classes(mat)
    return bool(np.all(np.bitwise_and.reduceat(outs[order], starts) != 0))
