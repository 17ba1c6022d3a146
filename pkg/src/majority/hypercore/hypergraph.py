"""Bitmask hypergraphs and two-colorings.

Vertex sets are plain Python ints used as bitmasks (bit ``i`` set means
ball ``i`` is a member). The library is capped at 64 vertices; exhaustive
verification is only practical up to about 24.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, NamedTuple, Sequence

MAX_N = 64


def mask_of(members: Iterable[int]) -> int:
    m = 0
    for v in members:
        if v < 0:
            raise ValueError(f"negative vertex index {v}")
        m |= 1 << v
    return m


def members_of(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def k_subsets(n: int, k: int) -> list[int]:
    """All k-subsets of range(n) as masks, in lexicographic order of members."""
    return [mask_of(c) for c in combinations(range(n), k)]


@dataclass(frozen=True)
class Hypergraph:
    """``n`` labelled vertices and an ordered tuple of edge masks.

    Duplicate edges are rejected unless ``multi`` is set. If ``uniform_k`` is
    given every edge must have exactly that many members.
    """

    n: int
    edges: tuple[int, ...]
    uniform_k: int | None = None
    multi: bool = False

    def __post_init__(self):
        if not 0 <= self.n <= MAX_N:
            raise ValueError(f"n={self.n} outside [0, {MAX_N}]")
        edges = tuple(int(e) for e in self.edges)
        object.__setattr__(self, "edges", edges)
        full = (1 << self.n) - 1
        for e in edges:
            if e & ~full:
                raise ValueError(f"edge {members_of(e)} not inside [0, {self.n})")
            if self.uniform_k is not None and e.bit_count() != self.uniform_k:
                raise ValueError(
                    f"edge {members_of(e)} has size {e.bit_count()}, expected {self.uniform_k}"
                )
        if not self.multi and len(set(edges)) != len(edges):
            raise ValueError("duplicate edges in a simple hypergraph")

    @classmethod
    def from_sets(cls, n: int, edges: Iterable[Iterable[int]], k: int | None = None,
                  multi: bool = False) -> "Hypergraph":
        return cls(n, tuple(mask_of(e) for e in edges), k, multi)

    def edge_sets(self) -> list[tuple[int, ...]]:
        return [members_of(e) for e in self.edges]

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self) -> Iterator[int]:
        return iter(self.edges)

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for e in self.edges:
            for v in members_of(e):
                deg[v] += 1
        return deg

    def support(self) -> int:
        s = 0
        for e in self.edges:
            s |= e
        return s

    def with_edge(self, edge: int) -> "Hypergraph":
        return Hypergraph(self.n, self.edges + (edge,), self.uniform_k, self.multi)

    def relabel(self, perm: Sequence[int]) -> "Hypergraph":
        """Apply the vertex map ``v -> perm[v]``."""
        edges = tuple(mask_of(perm[v] for v in members_of(e)) for e in self.edges)
        return Hypergraph(self.n, edges, self.uniform_k, self.multi)


@dataclass(frozen=True)
class Coloring:
    """A two-coloring of range(n); ``blue`` is a mask, the rest is red."""

    n: int
    blue: int

    def __post_init__(self):
        if self.blue < 0 or self.blue >> self.n:
            raise ValueError(f"blue mask {self.blue:#x} not inside [0, {self.n})")

    @classmethod
    def from_blue(cls, n: int, blue: Iterable[int]) -> "Coloring":
        return cls(n, mask_of(blue))

    @property
    def red(self) -> int:
        return ((1 << self.n) - 1) & ~self.blue

    def is_blue(self, v: int) -> bool:
        return bool(self.blue >> v & 1)

    def swapped(self) -> "Coloring":
        return Coloring(self.n, self.red)

    def blue_members(self) -> tuple[int, ...]:
        return members_of(self.blue)


def components(h: Hypergraph) -> list[tuple[int, ...]]:
    """Connected components of ``h`` (isolated vertices are singletons),
    ordered by their least vertex."""
    parent = list(range(h.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in h.edges:
        vs = members_of(e)
        for v in vs[1:]:
            a, b = find(vs[0]), find(v)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for v in range(h.n):
        groups.setdefault(find(v), []).append(v)
    return sorted((tuple(g) for g in groups.values()), key=lambda g: g[0])


def is_connected(h: Hypergraph) -> bool:
    return len(components(h)) <= 1


def is_linear(h: Hypergraph) -> bool:
    """True iff every two edges (including repeated ones) share at most one vertex."""
    return all((a & b).bit_count() <= 1 for a, b in combinations(h.edges, 2))


class LinearCycle(NamedTuple):
    edges: tuple[int, ...]    # indices into the hypergraph's edge tuple, in cycle order
    joints: tuple[int, ...]   # joints[j] is the vertex shared by edges[j] and edges[j+1]
    covered: int              # number of vertices in the union of the cycle's edges


def linear_cycles(h: Hypergraph, len_cap: int) -> list[LinearCycle]:
    """Every linear cycle of length 3..len_cap.

    Consecutive edges meet in exactly one vertex, non-consecutive edges are
    disjoint and the joint vertices are distinct. Each cycle is reported once:
    it starts at its least edge index and its second edge index is smaller
    than its last.
    """
    E = h.edges
    m = len(E)
    found: list[LinearCycle] = []

    def extend(path, joints):
        last = E[path[-1]]
        ell = len(path)
        if ell >= 3:
            shared = last & E[path[0]]
            if shared.bit_count() == 1 and path[1] < path[-1]:
                v = lowest(shared)
                if v not in joints and all(
                    (E[path[i]] & E[path[j]]) == 0
                    for i in range(ell) for j in range(i + 2, ell)
                    if not (i == 0 and j == ell - 1)
                ):
                    union = 0
                    for idx in path:
                        union |= E[idx]
                    found.append(LinearCycle(tuple(path), tuple(joints) + (v,),
                                             union.bit_count()))
        if ell == len_cap:
            return
        for nxt in range(path[0] + 1, m):
            if nxt in path:
                continue
            cand = E[nxt]
            shared = cand & last
            if shared.bit_count() != 1:
                continue
            v = lowest(shared)
            if v in joints:
                continue
            # a new edge may only touch the path at its last edge, and possibly the
            # first edge when it closes the cycle
            if any(cand & E[p] for p in path[1:-1]):
                continue
            extend(path + [nxt], joints + [v])

    for start in range(m):
        extend([start], [])
    return found


def snd(i: int) -> int:
    """Smallest positive integer that does not divide ``i``."""
    if i < 1:
        raise ValueError("snd is defined for positive integers")
    j = 2
    while i % j == 0:
        j += 1
    return j
