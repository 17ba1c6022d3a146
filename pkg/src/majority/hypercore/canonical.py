"""Canonical labelling of hypergraphs under vertex permutations.

Colour refinement on the vertex/edge incidence structure, followed by
individualisation of the first non-singleton cell. The canonical form is the
least sorted edge-mask tuple over all leaves of that search tree, so it does
not depend on how strong the refinement is. Vertices with identical edge
incidence are interchangeable, so only one of them is individualised per cell.
"""

from __future__ import annotations

from .hypergraph import Hypergraph, mask_of, members_of

Form = tuple[int, ...]


def canonical_labeling(n: int, edges) -> tuple[Form, list[int]]:
    """Return ``(form, perm)`` where relabelling ``v -> perm[v]`` maps the
    hypergraph onto its canonical form (sorted tuple of edge masks)."""
    mem = [members_of(e) for e in edges]
    inc: list[list[int]] = [[] for _ in range(n)]
    for idx, vs in enumerate(mem):
        for v in vs:
            inc[v].append(idx)
    twin_key = [tuple(x) for x in inc]

    def refine(colors):
        ncol = len(set(colors))
        while True:
            esig = [tuple(sorted(colors[v] for v in vs)) for vs in mem]
            sig = [(colors[v], tuple(sorted(esig[i] for i in inc[v]))) for v in range(n)]
            uniq = sorted(set(sig))
            rank = {s: i for i, s in enumerate(uniq)}
            colors = [rank[s] for s in sig]
            if len(uniq) == ncol:
                return colors
            ncol = len(uniq)

    best_form: Form | None = None
    best_perm: list[int] = list(range(n))

    def search(colors):
        nonlocal best_form, best_perm
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        target = next((cells[c] for c in sorted(cells) if len(cells[c]) > 1), None)
        if target is None:
            form = tuple(sorted(mask_of(colors[v] for v in vs) for vs in mem))
            if best_form is None or form < best_form:
                best_form, best_perm = form, list(colors)
            return
        tried = set()
        for v in target:
            if twin_key[v] in tried:
                continue
            tried.add(twin_key[v])
            split = [2 * c + 1 for c in colors]
            split[v] = 2 * colors[v]
            search(refine(split))

    search(refine([0] * n))
    assert best_form is not None
    return best_form, best_perm


def canonical_form(n: int, edges) -> Form:
    return canonical_labeling(n, edges)[0]


def canonical_hypergraph(h: Hypergraph) -> Hypergraph:
    form, _ = canonical_labeling(h.n, h.edges)
    return Hypergraph(h.n, form, h.uniform_k, h.multi)


def are_isomorphic(a: Hypergraph, b: Hypergraph) -> bool:
    if a.n != b.n or len(a) != len(b):
        return False
    return canonical_form(a.n, a.edges) == canonical_form(b.n, b.edges)
