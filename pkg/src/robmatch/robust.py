"""Robust solutions: squared-weight sets, randomized power-of-two rounding,
robustness evaluation and priority objectives.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import InputError
from .exact import div, encode_number, encode_rational, is_exact, log2_exact, simplify
from .solvers import OptProfile, augmenting_matchings, lex_max, opt_profile
from .systems import (
    DEFAULT_CAP,
    Deletion,
    IndependenceSystem,
    MatchingSystem,
    check_weights,
    enumerate_independent,
    top_k,
    total,
)

PROB_TOL = 1e-9


def _check_probabilities(probs, what="probabilities"):
    if any(p < 0 for p in probs):
        raise InputError(f"{what} must be non-negative")
    s = sum(probs, 0)
    if all(is_exact(p) for p in probs):
        if s != 1:
            raise InputError(f"{what} sum to {s}, not 1")
    elif abs(float(s) - 1.0) > PROB_TOL:
        raise InputError(f"{what} sum to {float(s)}, not 1")


@dataclass(frozen=True)
class RandomizedSolution:
    """A finite distribution over independent sets.

    Probabilities are exact rationals for the rounding algorithm; LP-derived
    strategies may carry ``QSqrt2`` or float entries.
    """

    support: tuple  # ((frozenset, probability), ...)

    def __post_init__(self):
        sup = tuple((frozenset(S), simplify(p)) for S, p in self.support)
        if not sup:
            raise InputError("empty support")
        if any(not p > 0 for _, p in sup):
            raise InputError("support probabilities must be positive")
        _check_probabilities([p for _, p in sup])
        object.__setattr__(self, "support", sup)

    @classmethod
    def point(cls, S):
        return cls(((frozenset(S), 1),))

    def sets(self):
        return [S for S, _ in self.support]

    def check_independent(self, sys: IndependenceSystem):
        for S, _ in self.support:
            if not sys.is_independent(S):
                raise InputError(f"support set {sorted(S)} is not independent")

    def to_dict(self) -> dict:
        out = []
        for S, p in self.support:
            prob = encode_rational(p) if isinstance(p, (int, Fraction)) else encode_number(p)
            out.append({"set": sorted(S), "prob": prob, "prob_float": float(p)})
        return {"support": out}


@dataclass(frozen=True)
class RobustnessReport:
    per_k: tuple  # ((k, achieved, opt, ratio), ...)
    alpha: object
    argmin_k: object

    def ratio(self, k):
        for kk, _, _, r in self.per_k:
            if kk == k:
                return r
        raise KeyError(k)

    def to_dict(self) -> dict:
        return {
            "alpha": float(self.alpha),
            "alpha_exact": encode_number(self.alpha) if is_exact(self.alpha) else None,
            "argmin_k": self.argmin_k,
            "per_k": [{"k": k, "achieved": float(a), "opt": float(o), "ratio": float(r)}
                      for k, a, o, r in self.per_k],
        }


class PriorityDistribution(Mapping):
    """Distribution ``mu`` over cardinalities ``k >= 1``."""

    def __init__(self, mu):
        items = dict(mu.items() if isinstance(mu, Mapping) else mu)
        for k in items:
            if not isinstance(k, int) or k < 1:
                raise InputError("cardinalities must be positive integers")
        _check_probabilities(list(items.values()), "priority weights")
        self._mu = {k: simplify(p) for k, p in sorted(items.items()) if p != 0}

    def __getitem__(self, k):
        return self._mu[k]

    def __iter__(self):
        return iter(self._mu)

    def __len__(self):
        return len(self._mu)

    def __repr__(self):
        return f"PriorityDistribution({self._mu!r})"

    @classmethod
    def point(cls, k):
        return cls({k: 1})


def _build_report(rows) -> RobustnessReport:
    alpha, argmin = 1, None
    for k, _, _, ratio in rows:
        if argmin is None or ratio < alpha:
            alpha, argmin = ratio, k
    return RobustnessReport(tuple(rows), alpha, argmin)


def robustness(sys, w, S, profile: OptProfile = None, cap: int = DEFAULT_CAP) -> RobustnessReport:
    """Ratios ``w(S_k) / OPT_k`` for ``k = 1..r``."""
    w = check_weights(w, sys.ground_size)
    if not sys.is_independent(S):
        raise InputError(f"set {sorted(S)} is not independent")
    profile = profile or opt_profile(sys, w, cap=cap)
    rows = []
    for k in range(1, profile.r + 1):
        achieved = simplify(total(top_k(S, w, k), w))
        opt = profile.opt(k)
        ratio = div(achieved, opt) if opt > 0 else 1
        rows.append((k, achieved, opt, ratio))
    return _build_report(rows)


def randomized_robustness(sys, w, lam: RandomizedSolution, profile: OptProfile = None,
                          cap: int = DEFAULT_CAP) -> RobustnessReport:
    """Ratios ``E[w(S_k)] / OPT_k`` for a distribution over sets."""
    w = check_weights(w, sys.ground_size)
    lam.check_independent(sys)
    profile = profile or opt_profile(sys, w, cap=cap)
    rows = []
    for k in range(1, profile.r + 1):
        achieved = simplify(sum((p * total(top_k(S, w, k), w) for S, p in lam.support), 0))
        opt = profile.opt(k)
        ratio = div(achieved, opt) if opt > 0 else 1
        rows.append((k, achieved, opt, ratio))
    return _build_report(rows)


# -- squared weights -------------------------------------------------------

def squared_weight_solution(sys, w, cap: int = DEFAULT_CAP) -> frozenset:
    """Independent set maximizing the sum of squared weights.

    Ties prefer more elements, then the lexicographically smallest sorted ids.
    """
    w = check_weights(w, sys.ground_size)
    sq = [x * x for x in w]
    if sys.ground_size <= cap:
        best, best_key = None, None
        for S in enumerate_independent(sys, cap=cap):
            val = total(S, sq)
            if best is None or val > best_key[0] or (
                    val == best_key[0] and (len(S) > best_key[1] or (
                        len(S) == best_key[1] and sorted(S) < sorted(best)))):
                best, best_key = S, (val, len(S))
        return best
    if isinstance(sys, MatchingSystem) and sys.graph.is_bipartite():
        seq = augmenting_matchings(sys.graph, sq)
        best_j = max(range(len(seq)), key=lambda j: (seq[j][1], j))
        return seq[best_j][0]
    return lex_max(sys, w, cap=cap)  # raises the resource error


# -- randomized rounding ---------------------------------------------------

def _floor(q) -> int:
    return math.floor(q)


def rounded_weights(w: Sequence, x) -> tuple:
    """``2 ** floor(log2(w_e) - x)`` for every element (exact powers of two)."""
    x = Fraction(x) if not isinstance(x, Fraction) else x
    out = []
    for v in w:
        if not v > 0:
            raise InputError("rounding needs strictly positive weights")
        out.append(Fraction(2) ** _floor(log2_exact(v) - x))
    return tuple(out)


def breakpoints(w: Sequence) -> list:
    """Sorted fractional parts of ``log2 w`` together with 0 and 1."""
    pts = {Fraction(0), Fraction(1)}
    for v in w:
        ell = log2_exact(v)
        pts.add(ell - _floor(ell))
    return sorted(pts)


def _positive_part(sys, w):
    keep = [e for e in range(sys.ground_size) if w[e] > 0]
    if not keep:
        raise InputError("all weights are zero")
    if len(keep) == sys.ground_size:
        return sys, keep
    if isinstance(sys, MatchingSystem):
        return MatchingSystem(sys.graph.subgraph(keep)), keep
    dropped = [e for e in range(sys.ground_size) if w[e] == 0]
    return Deletion(sys, dropped), keep


def randomized_robust(sys, w, cap: int = DEFAULT_CAP) -> RandomizedSolution:
    """Distribution from rounding weights down to powers of two at a uniform
    random offset ``x`` in [0, 1).

    Between consecutive breakpoints the rounded weights do not change, so one
    lexicographic maximum per interval suffices; its probability is the
    interval length.
    """
    w = check_weights(w, sys.ground_size)
    sub, keep = _positive_part(sys, w)
    ws = [w[e] for e in keep]
    pts = breakpoints(ws)
    merged = {}
    for a, b in zip(pts, pts[1:]):
        bits = rounded_weights(ws, (a + b) / 2)
        S = lex_max(sub, bits, cap=cap)
        S = frozenset(keep[e] for e in S)
        merged[S] = merged.get(S, 0) + (b - a)
    support = sorted(merged.items(), key=lambda t: (-t[1], sorted(t[0])))
    return RandomizedSolution(tuple(support))


# -- priorities ------------------------------------------------------------

def priority_value(S, w, mu: Mapping):
    """``sum_k mu_k * w(S_k)``."""
    return simplify(sum((p * total(top_k(S, w, k), w) for k, p in mu.items()), 0))


def priority_best_in_support(lam: RandomizedSolution, w, mu: Mapping) -> frozenset:
    if not lam.support:
        raise InputError("empty support")
    best, best_val = None, None
    for S, _ in lam.support:
        val = priority_value(S, w, mu)
        if best is None or val > best_val:
            best, best_val = S, val
    return best


def priorities_to_mu(c: Sequence):
    """Priorities ``c_1 >= c_2 >= ... >= 0`` to ``(mu, c_1)``."""
    c = [simplify(v) for v in c]
    if not c or not c[0] > 0:
        raise InputError("c_1 must be positive")
    if any(v < 0 for v in c):
        raise InputError("priorities must be non-negative")
    if any(c[i] < c[i + 1] for i in range(len(c) - 1)):
        raise InputError("priorities must be non-increasing")
    n = len(c)
    mu = {}
    for k in range(1, n + 1):
        nxt = c[k] if k < n else 0
        mu[k] = div(c[k - 1] - nxt, c[0])
    return PriorityDistribution(mu), c[0]


def mu_to_priorities(mu: Mapping, length: int = None) -> tuple:
    """``c_k = sum_{i >= k} mu_i`` for ``k = 1..length``."""
    top = max(mu) if mu else 0
    length = max(length or 0, top)
    return tuple(simplify(sum((p for i, p in mu.items() if i >= k), 0)) for k in range(1, length + 1))


def brute_force_priority_optimum(sys, w, mu: Mapping, cap: int = DEFAULT_CAP):
    """Maximum of ``priority_value`` over all independent sets."""
    best, best_val = frozenset(), 0
    for S in enumerate_independent(sys, maximal_only=True, cap=cap):
        val = priority_value(S, w, mu)
        if val > best_val:
            best, best_val = S, val
    return best, best_val
