import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from robmatch.errors import InputError
from robmatch.exact import SQRT2, QSqrt2, log2_exact
from robmatch.generators import gen_fig1, gen_random, gen_random_bipartite, good_corpus
from robmatch.robust import (
    PriorityDistribution,
    RandomizedSolution,
    breakpoints,
    brute_force_priority_optimum,
    mu_to_priorities,
    priorities_to_mu,
    priority_value,
    randomized_robust,
    randomized_robustness,
    robustness,
    rounded_weights,
    squared_weight_solution,
)
from robmatch.solvers import lex_key
from robmatch.systems import MatchingSystem, WeightedGraph, total

LN4 = 1 / math.log(4)


def test_fig1_randomized_exact():
    g = gen_fig1()
    sys = MatchingSystem(g)
    lam = randomized_robust(sys, g.weights)
    assert dict(lam.support) == {frozenset({0, 2}): Fraction(1, 2), frozenset({1}): Fraction(1, 2)}
    rep = randomized_robustness(sys, g.weights, lam)
    assert rep.alpha == Fraction(1, 2) + QSqrt2(0, Fraction(1, 4))


def test_fig1_deterministic_robustness():
    g = gen_fig1()
    sys = MatchingSystem(g)
    for S in ({0, 2}, {1}):
        assert robustness(sys, g.weights, S).alpha == QSqrt2(0, Fraction(1, 2))


def test_robustness_matches_oracle():
    rng = random.Random(3)
    for sys, w in good_corpus(30, seed=3, max_elements=8):
        sets = oracles.independent_sets(sys)
        S = rng.choice(sets)
        assert float(robustness(sys, w, S).alpha) == pytest.approx(oracles.robustness_of(sys, w, S))


def test_robustness_rejects_dependent_set():
    g = gen_fig1()
    with pytest.raises(InputError):
        robustness(MatchingSystem(g), g.weights, {0, 1})


def test_solution_validation():
    with pytest.raises(InputError):
        RandomizedSolution(((frozenset(), Fraction(1, 2)),))
    with pytest.raises(InputError):
        RandomizedSolution(((frozenset(), 0), (frozenset({1}), 1)))
    RandomizedSolution(((frozenset(), 0.3), (frozenset({1}), 0.7)))


@given(st.lists(st.integers(1, 10**6), min_size=1, max_size=8), st.fractions(0, 1))
def test_rounding_sandwich(ws, x):
    if x == 1:
        return
    r = rounded_weights(ws, x)
    for w, v in zip(ws, r):
        # w / 2 < v * 2**x <= w
        assert math.log2(w) - x - 1 < math.log2(v) <= math.log2(w) - x + 1e-12
        assert Fraction(float(log2_exact(v))) == log2_exact(v)


def test_breakpoints_include_fractional_parts():
    pts = breakpoints([1, 3, SQRT2, 8])
    assert pts[0] == 0 and pts[-1] == 1
    assert Fraction(1, 2) in pts
    assert pts == sorted(set(pts))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_randomized_support_is_lex_max_of_rounding(seed):
    sys, w = good_corpus(3, seed=seed, max_elements=8)[seed % 3]
    lam = randomized_robust(sys, w)
    lam.check_independent(sys)
    assert sum(p for _, p in lam.support) == 1
    rng = random.Random(seed)
    for _ in range(5):
        x = Fraction(rng.randrange(1, 1000), 1000)
        bits = rounded_weights(w, x)
        best = oracles.lex_best(oracles.lex_max_value_sequences(sys, bits))
        assert any(lex_key(S, bits) == best for S in lam.sets())


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.integers(-3, 3))
def test_power_of_two_scaling_invariance(seed, j):
    sys, w = good_corpus(1, seed=seed, max_elements=8)[0]
    w = tuple(Fraction(int(round(x * 4)) + 1, 4) for x in w)
    scaled = tuple(x * Fraction(2) ** j for x in w)
    assert randomized_robust(sys, w).support == randomized_robust(sys, scaled).support


def test_zero_weights_are_stripped():
    g = WeightedGraph(4, [(0, 1), (1, 2), (2, 3)], [0, 5, 0])
    lam = randomized_robust(MatchingSystem(g), g.weights)
    assert lam.sets() == [frozenset({1})]


def test_meets_ln4_on_random_graphs():
    for seed in range(40):
        g = gen_random(6, 0.5, "log-uniform", 1000, seed=seed)
        if g.n_edges == 0:
            continue
        sys = MatchingSystem(g)
        lam = randomized_robust(sys, g.weights)
        assert float(randomized_robustness(sys, g.weights, lam).alpha) >= LN4 - 1e-9


def test_squared_weight_solution_maximises_squares():
    for seed in range(30):
        g = gen_random_bipartite(3, 3, 0.6, "uniform-int", 20, seed=seed)
        if g.n_edges == 0:
            continue
        sys = MatchingSystem(g)
        S = squared_weight_solution(sys, g.weights)
        sq = [x * x for x in g.weights]
        best = max(total(T, sq) for T in oracles.independent_sets(sys))
        assert total(S, sq) == best
        assert float(robustness(sys, g.weights, S).alpha) >= 1 / math.sqrt(2) - 1e-12


def test_priorities_roundtrip():
    c = [5, 3, 3, 1]
    mu, c1 = priorities_to_mu(c)
    assert c1 == 5 and sum(mu.values()) == 1
    assert mu_to_priorities(mu, 4) == tuple(Fraction(x, 5) for x in c)
    with pytest.raises(InputError):
        priorities_to_mu([1, 2])


def test_priority_value_equals_weighted_sorted_sum():
    c = [4, 2, 1]
    mu, c1 = priorities_to_mu(c)
    w = [7, 1, 3, 5]
    S = {0, 2, 3}
    ordered = sorted((w[e] for e in S), reverse=True)
    assert priority_value(S, w, mu) * c1 == sum(ci * x for ci, x in zip(c, ordered))


def test_brute_force_priority_point_mass_is_opt_k():
    for sys, w in good_corpus(12, seed=9, max_elements=8):
        prof = oracles.opt_profile(sys, w)
        for k in range(1, len(prof)):
            _, v = brute_force_priority_optimum(sys, w, PriorityDistribution.point(k))
            assert v == pytest.approx(prof[k])


def test_priority_distribution_validation():
    with pytest.raises(InputError):
        PriorityDistribution({0: 1})
    with pytest.raises(InputError):
        PriorityDistribution({1: 0.5})
