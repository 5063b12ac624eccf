import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bbext.protocols.error_free import find_eset, majority_of, select_majority
from bbext.star import (
    PartyGraph,
    StarResult,
    brute_force_max_matching_size,
    brute_force_star_exists,
    derive_fe,
    is_matching,
    is_star,
    max_matching,
    star,
)


@st.composite
def graphs(draw, min_n=2, max_n=8):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    present = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return PartyGraph.from_edges(n, (pair for pair, keep in zip(pairs, present) if keep))


def test_from_rows():
    g = PartyGraph.from_rows(["011", "100", "100"])
    assert g.sorted_edges() == [(1, 2), (1, 3)]
    assert g.neighbors(1) == {2, 3}
    assert g.complement().sorted_edges() == [(2, 3)]
    assert PartyGraph.from_rows(g.to_rows()) == g
    with pytest.raises(ValueError):
        PartyGraph.from_rows(["01", "00"])
    with pytest.raises(ValueError):
        PartyGraph.from_rows(["1"])


@settings(max_examples=200, deadline=None)
@given(graphs())
def test_max_matching_is_maximum(g):
    matching = max_matching(g)
    assert is_matching(g, matching)
    assert len(matching) == brute_force_max_matching_size(g)


@settings(max_examples=200, deadline=None)
@given(graphs(min_n=3), st.data())
def test_star_returns_valid_stars(g, data):
    t = data.draw(st.integers(min_value=0, max_value=(g.n - 1) // 2))
    result = star(g, g.n, t)
    if result is not None:
        assert is_star(g, result.C, result.D, g.n, t)
        assert brute_force_star_exists(g, g.n, t)


@pytest.mark.parametrize("t", [1, 2, 3])
def test_honest_clique_yields_eset_of_all_honest(t):
    n = 3 * t + 1
    honest = set(range(1, n - t + 1))
    corrupt = set(range(n - t + 1, n + 1))
    # honest parties pairwise consistent, corrupt parties each agree with one honest party
    edges = [pair for pair in itertools.combinations(sorted(honest), 2)]
    edges += [(party, min(honest) + i) for i, party in enumerate(sorted(corrupt))]
    g = PartyGraph.from_edges(n, edges)

    result = star(g, n, t)
    assert result is not None
    F, E = derive_fe(g, result.C, result.D, n, t)
    assert honest <= F and honest <= E
    assert find_eset(g, n, t) == E


def test_members_of_c_count_themselves_towards_f():
    # five consistent parties, parties 6 and 7 silent
    g = PartyGraph.from_edges(7, itertools.combinations(range(1, 6), 2))
    result = star(g, 7, 2)
    assert result is not None
    assert len(result.C) == 3
    assert result.D == frozenset(range(1, 6))
    # each member of C has only t = 2 other neighbours in C
    assert all(len(g.neighbors(c) & result.C) == 2 for c in result.C)

    F, E = derive_fe(g, result.C, result.D, 7, 2)
    assert F == E == frozenset(range(1, 6))


def test_derive_fe_without_enough_f():
    g = PartyGraph.from_edges(3, [(1, 2)])
    result = star(g, 3, 1)
    assert result is not None
    assert len(result.C) == 1
    assert derive_fe(g, result.C, result.D, 3, 1) is None
    assert find_eset(g, 3, 1) is None


def test_derive_fe_without_enough_e():
    # a consistent triangle that everybody else agrees with, and nothing more
    edges = list(itertools.combinations(range(1, 4), 2))
    edges += [(party, member) for party in range(4, 8) for member in range(1, 4)]
    g = PartyGraph.from_edges(7, edges)
    result = star(g, 7, 2)
    assert result == StarResult(frozenset({1, 2, 3}), frozenset(range(1, 8)))
    assert derive_fe(g, result.C, result.D, 7, 2) is None
    assert find_eset(g, 7, 2) is None


def test_no_star_without_consistency():
    g = PartyGraph.from_edges(7, [(1, 2), (3, 4)])
    assert star(g, 7, 2) is None
    assert find_eset(g, 7, 2) is None


def test_majority_selection():
    cross = {1: b"a", 2: b"a", 3: b"b", 4: b"a"}
    assert majority_of(frozenset({1, 2, 3}), cross) == b"a"
    assert majority_of(frozenset({1, 3}), cross) is None
    esets = {1: frozenset({1, 2, 3}), 2: frozenset({1, 3}), 3: frozenset({2, 4})}
    assert select_majority(esets, cross, t=1) == b"a"
    assert select_majority(esets, cross, t=2) is None
