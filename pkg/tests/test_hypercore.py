from itertools import combinations, permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from majority.hypercore import (
    Coloring,
    Hypergraph,
    are_isomorphic,
    brute_force_colorable,
    canonical_form,
    canonical_hypergraph,
    canonical_labeling,
    components,
    has_property_b,
    has_property_c,
    is_connected,
    is_linear,
    k_subsets,
    linear_cycles,
    mask_of,
    members_of,
    min_non_property_b,
    min_non_property_c,
    snd,
)
from majority.hypercore.properties import balanced, non_monochromatic

FANO = [(0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5)]


@st.composite
def hypergraphs(draw, max_n=8, ks=(2, 3, 4), max_q=7):
    k = draw(st.sampled_from(ks))
    n = draw(st.integers(k, max_n))
    pool = list(combinations(range(n), k))
    edges = draw(st.lists(st.sampled_from(pool), max_size=max_q, unique=True))
    return Hypergraph.from_sets(n, edges, k)


def test_mask_round_trip():
    assert members_of(mask_of([5, 0, 3])) == (0, 3, 5)
    assert mask_of([]) == 0
    with pytest.raises(ValueError):
        mask_of([-1])


def test_hypergraph_validation():
    with pytest.raises(ValueError):
        Hypergraph.from_sets(3, [(0, 3)])
    with pytest.raises(ValueError):
        Hypergraph.from_sets(4, [(0, 1), (1, 2, 3)], 2)
    with pytest.raises(ValueError):
        Hypergraph.from_sets(4, [(0, 1), (0, 1)])
    h = Hypergraph.from_sets(4, [(0, 1), (0, 1)], multi=True)
    assert h.degrees() == [2, 2, 0, 0]


def test_coloring_helpers():
    c = Coloring.from_blue(5, [1, 4])
    assert c.red == 0b01101
    assert c.is_blue(4) and not c.is_blue(0)
    assert c.swapped().blue_members() == (0, 2, 3)
    with pytest.raises(ValueError):
        Coloring(3, 0b1000)


def test_components_and_connectivity():
    h = Hypergraph.from_sets(7, [(0, 1, 2), (3, 4, 5)], 3)
    assert components(h) == [(0, 1, 2), (3, 4, 5), (6,)]
    assert not is_connected(h)
    assert is_connected(h.with_edge(mask_of([2, 3, 6])))


def test_linear_and_cycles():
    tri = Hypergraph.from_sets(6, [(0, 1, 2), (2, 3, 4), (4, 5, 0)], 3)
    assert is_linear(tri)
    cyc = linear_cycles(tri, 5)
    assert len(cyc) == 1 and cyc[0].covered == 6
    assert sorted(cyc[0].joints) == [0, 2, 4]
    assert not is_linear(Hypergraph.from_sets(5, [(0, 1, 2), (1, 2, 3)], 3))
    # the Fano plane is linear and full of triangles
    fano = Hypergraph.from_sets(7, FANO, 3)
    assert is_linear(fano)
    assert len([c for c in linear_cycles(fano, 3)]) > 0


def test_star_has_no_cycles():
    star = Hypergraph.from_sets(7, [(0, 1, 2), (0, 3, 4), (0, 5, 6)], 3)
    assert linear_cycles(star, 6) == []


def test_snd_values():
    assert [snd(i) for i in range(1, 13)] == [2, 3, 2, 3, 2, 4, 2, 3, 2, 3, 2, 5]


def test_fano_lacks_property_b():
    fano = Hypergraph.from_sets(7, FANO, 3)
    assert not has_property_b(fano).colorable
    assert has_property_b(Hypergraph.from_sets(7, FANO[:-1], 3)).colorable


def test_property_witness_is_valid():
    h = Hypergraph.from_sets(6, [(0, 1, 2, 3), (2, 3, 4, 5)], 4)
    w = has_property_c(h)
    assert w.colorable
    assert all(balanced(e, w.witness.blue) for e in h.edges)


def test_property_c_rejects_singletons():
    with pytest.raises(ValueError):
        has_property_c(Hypergraph.from_sets(3, [(0,)]))


def test_triangle_has_neither_property():
    tri = Hypergraph.from_sets(3, [(0, 1), (0, 2), (1, 2)], 2)
    assert not has_property_b(tri).colorable
    assert not has_property_c(tri).colorable


@settings(max_examples=150, deadline=None)
@given(hypergraphs())
def test_backtracker_matches_brute_force(h):
    b = has_property_b(h)
    c = has_property_c(h)
    assert b.colorable == brute_force_colorable(h, "B")
    assert c.colorable == brute_force_colorable(h, "C")
    if b.colorable:
        assert all(non_monochromatic(e, b.witness.blue) for e in h.edges)
    if c.colorable:
        assert all(balanced(e, c.witness.blue) for e in h.edges)


@settings(max_examples=150, deadline=None)
@given(hypergraphs(ks=(3,), max_n=8, max_q=10))
def test_property_b_equals_c_for_triples(h):
    assert has_property_b(h).colorable == has_property_c(h).colorable


@settings(max_examples=100, deadline=None)
@given(hypergraphs(), st.randoms(use_true_random=False))
def test_canonical_form_is_relabel_invariant(h, rnd):
    perm = list(range(h.n))
    rnd.shuffle(perm)
    g = h.relabel(perm)
    assert canonical_form(h.n, h.edges) == canonical_form(g.n, g.edges)
    assert are_isomorphic(h, g)


@settings(max_examples=100, deadline=None)
@given(hypergraphs())
def test_canonical_labeling_maps_onto_form(h):
    form, perm = canonical_labeling(h.n, h.edges)
    assert tuple(sorted(h.relabel(perm).edges)) == form


def test_canonical_form_separates_non_isomorphic():
    # every 3-edge 2-uniform graph on 4 vertices: triangle, path, star (+ isolated)
    forms = {canonical_form(4, es) for es in combinations(k_subsets(4, 2), 3)}
    assert len(forms) == 3


def test_canonical_orbit_count_matches_brute_force():
    n, k = 5, 3
    for q in range(4):
        orbits = set()
        for es in combinations(k_subsets(n, k), q):
            orbits.add(min(tuple(sorted(mask_of(p[v] for v in members_of(e)) for e in es))
                           for p in permutations(range(n))))
        forms = {canonical_form(n, es) for es in combinations(k_subsets(n, k), q)}
        assert len(forms) == len(orbits)


def test_canonical_hypergraph_is_isomorphic():
    fano = Hypergraph.from_sets(7, FANO, 3)
    assert are_isomorphic(fano, canonical_hypergraph(fano))
    assert not are_isomorphic(fano, Hypergraph.from_sets(7, FANO[:-1] + [(0, 1, 3)], 3))


def test_min_non_c_triangle():
    res = min_non_property_c(2, 3, 4)
    assert res.value == 3
    assert are_isomorphic(res.witness, Hypergraph.from_sets(3, [(0, 1), (0, 2), (1, 2)], 2))


def test_min_non_b_small():
    assert min_non_property_b(2, 5, 4).value == 3
    assert min_non_property_b(3, 5, 10).value == 10
    # below the true value the cap reports nothing
    assert min_non_property_b(3, 7, 6).value is None


def test_min_non_c_k4_golden():
    res = min_non_property_c(4, 8, 6)
    assert res.value == 4
    assert not brute_force_colorable(res.witness, "C")


def test_min_witness_fails_property_everywhere():
    for res in (min_non_property_b(2, 6, 4), min_non_property_c(2, 6, 4)):
        assert not brute_force_colorable(res.witness, res.prop)
        assert len(res.witness) == res.value


def test_min_search_is_minimal_by_brute_force():
    # every 2-edge 3-uniform set on 5 balls, and every 9-edge one, has Property B
    for q in (2, 9):
        for es in combinations(k_subsets(5, 3), q):
            assert brute_force_colorable(Hypergraph(5, es, 3), "B")

