import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from robmatch.errors import InputError, ResourceError
from robmatch.exact import SQRT2
from robmatch.generators import gen_fig1, gen_random, gen_random_bipartite, good_corpus
from robmatch.solvers import (
    augmenting_matchings,
    bipartite_profile,
    greedy,
    lex_greater,
    lex_key,
    lex_max,
    max_weight_at_most_k,
    opt_profile,
    surrogate_weights,
)
from robmatch.systems import MatchingSystem, UniformMatroid, WeightedGraph, top_k, total


def test_fig1_profile_exact():
    g = gen_fig1()
    prof = opt_profile(MatchingSystem(g), g.weights)
    assert prof.values == (0, SQRT2, 2)
    assert prof.opt(5) == 2
    assert bipartite_profile(g).values == prof.values


def test_k22_profile():
    g = WeightedGraph(4, [(0, 2), (0, 3), (1, 2), (1, 3)], [4, 1, 1, 4])
    assert opt_profile(MatchingSystem(g), g.weights).values == (0, 4, 8)
    assert bipartite_profile(g).values == (0, 4, 8)


def test_profile_matches_oracle_on_corpus():
    for sys, w in good_corpus(45, seed=2, max_elements=9):
        assert list(opt_profile(sys, w).values) == pytest.approx(oracles.opt_profile(sys, w), rel=1e-12)


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.floats(0.2, 1.0), st.integers(0, 10**6))
def test_augmenting_paths_match_enumeration(l, r, p, seed):
    g = gen_random_bipartite(l, r, p, "uniform-int", 30, seed=seed)
    if g.n_edges == 0:
        return
    assert bipartite_profile(g).values == opt_profile(MatchingSystem(g), g.weights).values
    for S, val in augmenting_matchings(g):
        assert oracles.is_matching(g.edges, S)
        assert total(S, g.weights) == val


def test_augmenting_rejects_non_bipartite():
    tri = WeightedGraph(3, [(0, 1), (1, 2), (0, 2)], [1, 1, 1])
    with pytest.raises(InputError):
        augmenting_matchings(tri)


def test_large_bipartite_beyond_cap():
    g = gen_random_bipartite(8, 8, 0.6, "uniform-int", 50, seed=4)
    assert g.n_edges > 20
    sys = MatchingSystem(g)
    prof = opt_profile(sys, g.weights)
    S, v = max_weight_at_most_k(sys, g.weights, 3)
    assert v == prof.opt(3) and len(S) <= 3


def test_large_general_graph_raises():
    g = gen_random(12, 0.5, seed=1)
    assert not g.is_bipartite() and g.n_edges > 20
    with pytest.raises(ResourceError):
        opt_profile(MatchingSystem(g), g.weights)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 5))
def test_max_weight_at_most_k_is_optimal(seed, k):
    sys, w = good_corpus(1, seed=seed, max_elements=8)[0]
    S, v = max_weight_at_most_k(sys, w, k)
    assert sys.is_independent(S) and len(S) <= k and total(S, w) == v
    prof = oracles.opt_profile(sys, w)
    assert v == prof[min(k, len(prof) - 1)]


def test_lex_order():
    assert lex_greater((4, 1), (3, 3, 3))
    assert lex_greater((2, 2, 1), (2, 2))
    assert not lex_greater((2, 2), (2, 2))
    assert lex_key({0, 1}, [1, 3]) == (3, 1)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_lex_max_matches_oracle(seed):
    rng = random.Random(seed)
    sys, w = good_corpus(3, seed=seed, max_elements=8)[seed % 3]
    # coarse weights give plenty of ties
    w = tuple(rng.randint(0, 3) for _ in w)
    S = lex_max(sys, w)
    assert sys.is_independent(S)
    best = oracles.lex_best(oracles.lex_max_value_sequences(sys, w))
    assert lex_key(S, w) == best


def test_lex_max_truncation_property():
    # every prefix of the lex max set is a weight-maximal set of its size when weights are powers of 2
    for sys, w in good_corpus(30, seed=5, max_elements=8):
        bits = tuple(1 << (int(x) % 4) for x in w)
        S = lex_max(sys, bits)
        prof = oracles.opt_profile(sys, bits)
        for k in range(1, len(prof)):
            assert total(top_k(S, bits, k), bits) == prof[k]


def test_surrogate_preserves_order_and_dominates():
    w = [3, Fraction(1, 2), 3, 7, 0]
    s = surrogate_weights(w)
    for i in range(len(w)):
        for j in range(len(w)):
            assert (w[i] < w[j]) == (s[i] < s[j])
    big = sorted(set(s))[-1]
    others = sorted(s)[:-1]
    assert big > sum(x for x in others)


def test_greedy_on_matroid_is_optimal():
    w = [5, 1, 4, 2, 3]
    sys = UniformMatroid(5, 2)
    assert greedy(sys, w) == frozenset({0, 2})
