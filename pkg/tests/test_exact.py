from itertools import combinations

import pytest

from majority.errors import InvalidParameters, ResourceLimit
from majority.hypercore import Hypergraph, k_subsets
from majority.verifier import exact_n, is_sufficient, is_sufficient_bm


def brute_exact(model, k, n):
    """No symmetry reduction: try every q-subset of k-sets."""
    every = k_subsets(n, k)
    check = is_sufficient_bm if model == "BM" else (lambda h: is_sufficient(model, h))
    for q in range(len(every) + 1):
        for es in combinations(every, q):
            if check(Hypergraph(n, es, k)):
                return q
    return None


@pytest.mark.parametrize("k,n,value", [(2, 4, 3), (3, 5, 2), (3, 7, 3)])
def test_om_examples(k, n, value):
    res = exact_n("OM", k, n)
    assert res.value == value
    assert len(res.optimal_queries) == value
    assert is_sufficient("OM", res.optimal_queries)


@pytest.mark.parametrize("model,k,n", [("OM", 2, 5), ("CM", 2, 5), ("GM", 2, 5), ("BM", 2, 4),
                                       ("CM", 3, 5), ("GM", 3, 4), ("OM", 3, 6)])
def test_matches_unreduced_search(model, k, n):
    assert exact_n(model, k, n).value == brute_exact(model, k, n)


def test_infeasible_instance():
    # three balls, one 3-query: counting answers cannot tell which ball is the majority
    res = exact_n("CM", 3, 3)
    assert res.value is None and res.optimal_queries is None
    assert exact_n("BM", 3, 3).value == 1


def test_threads_do_not_change_result():
    a = exact_n("GM", 2, 6)
    b = exact_n("GM", 2, 6, threads=2)
    assert a == b


def test_all_optimal_are_sufficient_and_distinct():
    res = exact_n("CM", 2, 6, all_optimal=True)
    assert res.value == 5
    assert len(res.all_optimal) >= 1
    assert all(is_sufficient("CM", h) and len(h) == 5 for h in res.all_optimal)


def test_budget_gives_bracket():
    with pytest.raises(ResourceLimit) as info:
        exact_n("GM", 3, 6, max_candidates=5)
    lo, hi = info.value.bracket
    assert lo <= hi


def test_lower_skips_levels():
    assert exact_n("OM", 2, 6, lower=5).value == 5


def test_bad_parameters():
    with pytest.raises(InvalidParameters):
        exact_n("OM", 4, 3)
    with pytest.raises(InvalidParameters):
        exact_n("OM", 1, 3)
