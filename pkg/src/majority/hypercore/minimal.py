"""Smallest k-uniform hypergraphs on at most n vertices without Property B
(the value m(k, n)) or without Property C (the value d(k, n)).

The search grows connected hypergraphs one edge at a time and keeps one
canonical representative per isomorphism class. Two facts about a smallest
failing hypergraph H with q edges keep it small:

* H is connected, otherwise one of its components already fails.
* An edge of H has few private vertices (vertices in no other edge). Drop
  the edge, colour the rest, then recolour the private vertices: for
  Property B one private vertex repairs the edge (k >= 2); for Property C
  floor(k/2) private vertices do. So every edge has at most ``p`` private
  vertices with p = 0 (B) or floor(k/2) - 1 (C), which also bounds the
  number of vertices by q(k + p)/2.

A connected hypergraph can always be built by adding edges that meet the
vertices already used, and new vertices are interchangeable, so each step
only has to choose which old vertices the new edge reuses.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations

from ..errors import InvalidParameters, ResourceLimit
from .canonical import canonical_form
from .hypergraph import Hypergraph, mask_of, members_of
from .properties import has_property_b, has_property_c

PROPERTIES = {"B": has_property_b, "C": has_property_c}


@dataclass(frozen=True)
class MinimalResult:
    prop: str                     # "B" or "C"
    k: int
    n: int
    q_cap: int
    value: int | None             # None means every hypergraph with <= q_cap edges has the property
    witness: Hypergraph | None
    classes_examined: dict[int, int] = field(default_factory=dict)


def _private_cap(prop: str, k: int) -> int:
    return 0 if prop == "B" else k // 2 - 1


def _excess(edges, p):
    """Sum over edges of (private vertices - p), counting only positive parts."""
    deg: dict[int, int] = {}
    for e in edges:
        for v in members_of(e):
            deg[v] = deg.get(v, 0) + 1
    total = 0
    for e in edges:
        priv = sum(1 for v in members_of(e) if deg[v] == 1)
        total += max(0, priv - p)
    return total


def _level_search(prop, k, q, vcap, deadline, counts):
    """Canonical connected k-graphs with q edges on <= vcap vertices that can
    still be finished (by 0 more edges) into a smallest failing hypergraph.
    Returns the least failing canonical form, or None."""
    p = _private_cap(prop, k)
    check = PROPERTIES[prop]
    level = {tuple([mask_of(range(k))])}
    if q == 1:
        return _first_failure(level, check, p)
    for j in range(1, q):
        remaining = q - j - 1
        reps = sorted(level)
        counts[j] = max(counts.get(j, 0), len(reps))
        last = remaining == 0
        nxt: set[tuple[int, ...]] = set()
        for form in reps:
            if deadline is not None and time.monotonic() > deadline:
                raise ResourceLimit("time budget exhausted")
            v = max(e.bit_length() for e in form)
            present = set(form)
            for s in range(1, min(k, v) + 1):
                if v + (k - s) > vcap:
                    continue
                fresh = mask_of(range(v, v + k - s))
                for old in combinations(range(v), s):
                    e = mask_of(old) | fresh
                    if e in present:
                        continue
                    edges = form + (e,)
                    if _excess(edges, p) > remaining * k:
                        continue
                    if last:
                        # final level: no dedup needed, only failures get canonicalised
                        nv = v + k - s
                        if not check(Hypergraph(nv, edges)).colorable:
                            nxt.add(canonical_form(nv, edges))
                    else:
                        nxt.add(canonical_form(v + k - s, edges))
        if last:
            counts[q] = len(nxt)
            return min(nxt) if nxt else None
        level = nxt
    return None


def _first_failure(level, check, p):
    for form in sorted(level):
        if _excess(form, p) == 0:
            v = max(e.bit_length() for e in form)
            if not check(Hypergraph(v, form)).colorable:
                return form
    return None


def min_non_property(prop: str, k: int, n: int, q_cap: int,
                     time_budget: float | None = None) -> MinimalResult:
    if prop not in PROPERTIES:
        raise InvalidParameters(f"unknown property {prop!r}")
    if k < 1 or n < k or q_cap < 1:
        raise InvalidParameters(f"need 1 <= k <= n and q_cap >= 1, got k={k}, n={n}, q_cap={q_cap}")
    if prop == "C" and k < 2:
        raise InvalidParameters("Property C needs k >= 2")
    deadline = None if time_budget is None else time.monotonic() + time_budget
    counts: dict[int, int] = {}
    if k == 1:
        # a single one-vertex edge is monochromatic under every coloring
        return MinimalResult(prop, k, n, q_cap, 1, Hypergraph(n, (1,), 1), counts)
    p = _private_cap(prop, k)
    for q in range(1, q_cap + 1):
        vcap = min(n, q * (k + p) // 2)
        if vcap < k:
            continue
        try:
            form = _level_search(prop, k, q, vcap, deadline, counts)
        except ResourceLimit as exc:
            raise ResourceLimit(str(exc), bracket=(q, None)) from None
        if form is not None:
            return MinimalResult(prop, k, n, q_cap, q, Hypergraph(n, form, k), counts)
    return MinimalResult(prop, k, n, q_cap, None, None, counts)


def min_non_property_b(k: int, n: int, q_cap: int, time_budget: float | None = None) -> MinimalResult:
    return min_non_property("B", k, n, q_cap, time_budget)


def min_non_property_c(k: int, n: int, q_cap: int, time_budget: float | None = None) -> MinimalResult:
    return min_non_property("C", k, n, q_cap, time_budget)
