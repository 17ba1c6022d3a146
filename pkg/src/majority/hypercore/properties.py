"""Exact decision of Property B (no monochromatic edge) and Property C
(every edge balanced) by backtracking over vertices."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .hypergraph import Coloring, Hypergraph, members_of


@dataclass(frozen=True)
class PropertyWitness:
    colorable: bool
    witness: Coloring | None = None


def non_monochromatic(edge: int, blue: int) -> bool:
    inside = edge & blue
    return inside != 0 and inside != edge


def balanced(edge: int, blue: int) -> bool:
    b = (edge & blue).bit_count()
    return abs(2 * b - edge.bit_count()) <= 1


def _backtrack(h: Hypergraph, dead: Callable[[int, int, int], bool]) -> PropertyWitness:
    # dead(edge, blue_assigned, red_assigned) -> True when no completion can satisfy edge
    n = h.n
    incident: list[list[int]] = [[] for _ in range(n)]
    for e in h.edges:
        for v in members_of(e):
            incident[v].append(e)
    order = sorted((v for v in range(n) if incident[v]), key=lambda v: (-len(incident[v]), v))
    if not order:
        return PropertyWitness(True, Coloring(n, 0))

    def go(i, blue, red):
        if i == len(order):
            return blue
        v = order[i]
        bit = 1 << v
        # the first vertex is fixed blue: both properties are invariant under color swap
        choices = ((blue | bit, red), (blue, red | bit)) if i else ((blue | bit, red),)
        for b, r in choices:
            if any(dead(e, b, r) for e in incident[v]):
                continue
            got = go(i + 1, b, r)
            if got is not None:
                return got
        return None

    blue = go(0, 0, 0)
    if blue is None:
        return PropertyWitness(False)
    return PropertyWitness(True, Coloring(n, blue))


def _mono_dead(e, blue, red):
    return (e & blue) == e or (e & red) == e


def _unbalanced_dead(e, blue, red):
    cap = (e.bit_count() + 1) // 2
    return (e & blue).bit_count() > cap or (e & red).bit_count() > cap


def has_property_b(h: Hypergraph) -> PropertyWitness:
    if any(e == 0 for e in h.edges):
        raise ValueError("Property B needs nonempty edges")
    return _backtrack(h, _mono_dead)


def has_property_c(h: Hypergraph) -> PropertyWitness:
    if any(e.bit_count() < 2 for e in h.edges):
        raise ValueError("Property C needs edges of size >= 2")
    return _backtrack(h, _unbalanced_dead)


def brute_force_colorable(h: Hypergraph, prop: str) -> bool:
    """Plain loop over all 2^n colorings; kept independent of the backtracker."""
    ok = non_monochromatic if prop == "B" else balanced
    return any(all(ok(e, blue) for e in h.edges) for blue in range(1 << h.n))
