"""Sufficiency under Borzyszkowski's model, where a YES answer points out one
bichromatic pair chosen by the adversary.

The adversary may pick, for a coloring, any pair per query, independently
across queries. A query set suffices iff every answer vector that some
coloring permits leaves a common valid output over all colorings permitting
it. The search walks the queries in order, keeping the set of colorings
still consistent as a bitset (bit c of a Python int for coloring c).

Two facts prune it. If the current set already has a common output, so does
every subset, and the prefix decides. Smaller sets are never harder, so a
branch whose set is contained in a sibling's is covered by that sibling.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from ..errors import InconsistentAnswers, ResourceLimit
from ..hypercore.hypergraph import Coloring, Hypergraph, members_of
from ..models import NO_MAJORITY, AnswerVector, Ball, BMAnswer, ModelId, Output
from .deterministic import FailureWitness, all_colorings, output_masks

BM_COLORING_CAP = 14
DEFAULT_MEMO_CAP = 1_000_000


@dataclass(frozen=True)
class BMCertificate:
    """Decision DAG over answer prefixes.

    ``nodes[i]`` is either ``("out", Output)`` or
    ``("ask", query_index, ((BMAnswer, child), ...))``. Answers no coloring
    can give at that point are absent.
    """

    queries: Hypergraph
    nodes: tuple
    root: int
    model: ModelId = ModelId.BM

    def decode(self, answers) -> Output:
        if isinstance(answers, AnswerVector):
            answers = answers.answers
        node = self.nodes[self.root]
        while node[0] == "ask":
            _, qi, branches = node
            for ans, child in branches:
                if ans == answers[qi]:
                    node = self.nodes[child]
                    break
            else:
                raise InconsistentAnswers(f"answer {answers[qi]} to query {qi} not produced by any consistent coloring")
        return node[1]


def _bitset(flags: np.ndarray) -> int:
    return int.from_bytes(np.packbits(flags, bitorder="little").tobytes(), "little")


class _Confused(Exception):
    def __init__(self, consistent):
        self.consistent = consistent
        self.answers: list[BMAnswer] = []


def verify_bm(queries: Hypergraph, cap: int = BM_COLORING_CAP, memo_cap: int = DEFAULT_MEMO_CAP):
    n = queries.n
    if n > cap:
        raise ResourceLimit(f"n={n} exceeds the BM coloring cap {cap}")
    cols = all_colorings(n)
    bit = [(cols >> v) & 1 for v in range(n)]
    outs = output_masks(n, cols)
    majority = [_bitset(((outs >> b) & 1).astype(bool)) for b in range(n)]
    tie = _bitset(((outs >> n) & 1).astype(bool))
    everything = (1 << (1 << n)) - 1

    differ: dict[tuple[int, int], int] = {}
    per_query = []
    for q in queries.edges:
        vs = members_of(q)
        inside = np.bitwise_count(cols & q)
        opts = [(BMAnswer(False), _bitset((inside == 0) | (inside == len(vs))))]
        for x, y in combinations(vs, 2):
            if (x, y) not in differ:
                differ[(x, y)] = _bitset(bit[x] != bit[y])
            opts.append((BMAnswer(True, (x, y)), differ[(x, y)]))
        per_query.append(opts)

    nq = len(queries.edges)
    nodes: list[tuple] = []
    leaves: dict[Output, int] = {}
    memo: dict[tuple[int, int], int] = {}

    def common(s):
        for b in range(n):
            if s & ~majority[b] == 0:
                return Ball(b)
        if s & ~tie == 0:
            return NO_MAJORITY
        return None

    def leaf(out):
        if out not in leaves:
            leaves[out] = len(nodes)
            nodes.append(("out", out))
        return leaves[out]

    def solve(i, s):
        out = common(s)
        if out is not None:
            return leaf(out)
        if i == nq:
            raise _Confused(s)
        key = (i, s)
        if key in memo:
            return memo[key]
        branches = [(ans, s & m) for ans, m in per_query[i]]
        branches = [(a, t) for a, t in branches if t]
        distinct = sorted({t for _, t in branches}, key=lambda t: -t.bit_count())
        maximal = [t for t in distinct if not any(t != u and t & ~u == 0 for u in distinct)]
        child_of: dict[int, int] = {}
        for t in maximal:
            try:
                child_of[t] = solve(i + 1, t)
            except _Confused as exc:
                exc.answers.append(next(a for a, u in branches if u == t))
                raise
        resolved = []
        for a, t in branches:
            if t not in child_of:
                child_of[t] = child_of[next(u for u in maximal if t & ~u == 0)]
            resolved.append((a, child_of[t]))
        node_id = len(nodes)
        nodes.append(("ask", i, tuple(resolved)))
        if len(memo) < memo_cap:
            memo[key] = node_id
        return node_id

    try:
        root = solve(0, everything)
    except _Confused as exc:
        answers = tuple(reversed(exc.answers))
        members = [c for c in range(1 << n) if exc.consistent >> c & 1]
        chosen = [members[0]]
        acc = int(outs[members[0]])
        for c in members[1:]:
            o = int(outs[c])
            if acc & o != acc:
                chosen.append(c)
                acc &= o
                if not acc:
                    break
        return FailureWitness(ModelId.BM, queries, answers, tuple(Coloring(n, c) for c in chosen))
    return BMCertificate(queries, tuple(nodes), root)


def is_sufficient_bm(queries: Hypergraph, cap: int = BM_COLORING_CAP) -> bool:
    return isinstance(verify_bm(queries, cap), BMCertificate)
