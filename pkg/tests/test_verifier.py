import random
from itertools import combinations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from majority.errors import ResourceLimit
from majority.formats import replay_certificate, replay_witness
from majority.hypercore import Coloring, Hypergraph
from majority.models import ModelId, bm_answers, valid_outputs
from majority.strategies import build_cm_even, build_gm, build_om
from majority.verifier import (
    BMCertificate,
    Certificate,
    FailureWitness,
    cross_check_class_verifier,
    is_sufficient,
    is_sufficient_bm,
    random_query_sets,
    verify_bm,
    verify_deterministic,
)


def bm_oracle(h):
    """Definition-level BM check: every achievable answer combination (any pair
    per query, chosen independently) must leave a common valid output."""
    cols = [Coloring(h.n, b) for b in range(1 << h.n)]
    options = [set().union(*(bm_answers(q, c) for c in cols)) for q in h.edges]
    for combo in product(*options):
        common = None
        for c in cols:
            if all(a in bm_answers(q, c) for q, a in zip(h.edges, combo)):
                outs = valid_outputs(c)
                common = outs if common is None else common & outs
        if common is not None and not common:
            return False
    return True


@st.composite
def query_sets(draw, max_n=7, ks=(2, 3), max_q=5):
    k = draw(st.sampled_from(ks))
    n = draw(st.integers(k, max_n))
    pool = list(combinations(range(n), k))
    edges = draw(st.lists(st.sampled_from(pool), max_size=max_q, unique=True))
    return Hypergraph.from_sets(n, edges, k)


def test_om_chain_certificate():
    cert = verify_deterministic("OM", build_om(6, 3).queries)
    assert isinstance(cert, Certificate)
    assert replay_certificate(cert)[0]


def test_disjoint_triples_fail_om():
    h = Hypergraph.from_sets(6, [(0, 1, 2), (3, 4, 5)], 3)
    w = verify_deterministic("OM", h)
    assert isinstance(w, FailureWitness)
    ok, msg = replay_witness(w)
    assert ok, msg


def test_empty_query_set_fails():
    for n in (4, 5):
        w = verify_deterministic("GM", Hypergraph(n, (), 2))
        assert isinstance(w, FailureWitness)
        assert replay_witness(w)[0]


def test_single_ball_is_trivially_fine():
    # one ball is always the majority
    assert is_sufficient("GM", Hypergraph(1, ()))


def test_cap_raises():
    with pytest.raises(ResourceLimit):
        verify_deterministic("OM", Hypergraph(6, (), 2), cap=5)
    with pytest.raises(ResourceLimit):
        verify_bm(Hypergraph(6, (), 2), cap=5)


def test_certificate_decode_matches_table():
    s = build_cm_even(6, 2)
    cert = verify_deterministic("CM", s.queries)
    from majority.models import answer_vector
    for b in range(64):
        c = Coloring(6, b)
        assert cert.decode(answer_vector("CM", s.queries, c)) in valid_outputs(c)


def test_oracle_agrees_on_om_chain():
    h = build_om(8, 3).queries
    for m in ("OM", "CM", "GM"):
        assert is_sufficient(m, h) == cross_check_class_verifier(m, h)


def test_oracle_agrees_on_random_triples():
    rng = random.Random(11)
    pool = list(combinations(range(8), 3))
    for i in range(100):
        h = Hypergraph.from_sets(8, rng.sample(pool, 5), 3)
        m = ("OM", "CM", "GM")[i % 3]
        assert is_sufficient(m, h) == cross_check_class_verifier(m, h)


def test_oracle_on_empty_set():
    h = Hypergraph(5, (), 3)
    assert not cross_check_class_verifier("GM", h)
    assert not is_sufficient("GM", h)


def test_random_query_sets_seeded():
    a = [(m, h) for m, h in random_query_sets(20, 5)]
    b = [(m, h) for m, h in random_query_sets(20, 5)]
    assert a == b
    assert all(h.n <= 10 and len(h) <= 6 for _, h in a)


@settings(max_examples=120, deadline=None)
@given(query_sets(), st.sampled_from(["OM", "CM", "GM"]))
def test_verifier_agrees_with_oracle(h, model):
    res = verify_deterministic(model, h)
    assert isinstance(res, Certificate) == cross_check_class_verifier(model, h)
    ok, msg = replay_certificate(res) if isinstance(res, Certificate) else replay_witness(res)
    assert ok, msg


@settings(max_examples=120, deadline=None)
@given(query_sets())
def test_refinement_monotonicity(h):
    om, cm, gm = (is_sufficient(m, h) for m in ("OM", "CM", "GM"))
    bm = is_sufficient_bm(h)
    if gm:
        assert cm and bm
    if cm or bm:
        assert om


def test_bm_single_full_query():
    cert = verify_bm(Hypergraph.from_sets(3, [(0, 1, 2)], 3))
    assert isinstance(cert, BMCertificate)
    assert replay_certificate(cert)[0]


def test_bm_disjoint_queries_fail():
    for k in (2, 3):
        h = Hypergraph.from_sets(2 * k, [range(k), range(k, 2 * k)], k)
        w = verify_bm(h)
        assert isinstance(w, FailureWitness)
        assert replay_witness(w)[0]


def test_bm_on_gm_construction():
    for n in (5, 6, 7):
        cert = verify_bm(build_gm(n, 3).queries)
        assert isinstance(cert, BMCertificate)
        ok, msg = replay_certificate(cert)
        assert ok, msg


@settings(max_examples=60, deadline=None)
@given(query_sets(max_n=6, max_q=4))
def test_bm_matches_definition_oracle(h):
    res = verify_bm(h)
    assert isinstance(res, BMCertificate) == bm_oracle(h)
    ok, msg = replay_certificate(res) if isinstance(res, BMCertificate) else replay_witness(res)
    assert ok, msg


def test_bm_certificate_decode():
    s = build_gm(6, 3)
    cert = verify_bm(s.queries)
    rng = random.Random(2)
    for b in range(64):
        c = Coloring(6, b)
        answers = tuple(rng.choice(sorted(bm_answers(q, c), key=lambda a: a.pair or ())) for q in s.queries.edges)
        assert cert.decode(answers) in valid_outputs(c)


def test_witness_is_deterministic():
    h = Hypergraph.from_sets(6, [(0, 1, 2), (3, 4, 5)], 3)
    assert verify_deterministic("OM", h) == verify_deterministic("OM", h)
    assert verify_bm(h) == verify_bm(h)
