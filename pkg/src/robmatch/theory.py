"""Structural checkers: minors, bit-concavity, goodness and 2-extendibility.

All checks enumerate the independent sets of a small system.  Bit-functions
are sampled; the sampler covers every two-level pattern first when the
ground set is small and mixes in widely separated exponents.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .errors import InputError
from .solvers import lex_greater, lex_key
from .systems import (
    DEFAULT_CAP,
    Contraction,
    Deletion,
    IndependenceSystem,
    Truncation,
    enumerate_independent,
    top_k,
    total,
)


@dataclass(frozen=True)
class BitFunction:
    exponents: tuple

    def weights(self) -> tuple:
        """Integer weights ``2**(l_e - min l)``; the common scale changes nothing."""
        if not self.exponents:
            return ()
        lo = min(self.exponents)
        return tuple(1 << (x - lo) for x in self.exponents)


def apply_minor(sys: IndependenceSystem, spec) -> IndependenceSystem:
    """Apply ``("delete", X)``, ``("contract", X)`` and ``("truncate", k)`` in order.

    Element ids in each step refer to the system produced by the previous step.
    """
    for op, arg in spec:
        if op == "delete":
            sys = Deletion(sys, arg)
        elif op == "contract":
            sys = Contraction(sys, arg)
        elif op == "truncate":
            sys = Truncation(sys, arg)
        else:
            raise InputError(f"unknown minor operation {op!r}")
    return sys


class _Profiler:
    """Fast OPT profiles for one system under many weightings."""

    def __init__(self, sys, cap=DEFAULT_CAP):
        self.sys = sys
        sets = enumerate_independent(sys, cap=cap)
        self.sets = [tuple(S) for S in sets]
        self.r = max(len(S) for S in self.sets)

    def profile(self, w):
        best = [0] * (self.r + 1)
        for S in self.sets:
            v = 0
            for e in S:
                v += w[e]
            j = len(S)
            if v > best[j]:
                best[j] = v
        for j in range(1, self.r + 1):
            if best[j] < best[j - 1]:
                best[j] = best[j - 1]
        return best

    def lex_max_sets(self, w):
        best_key, out = None, []
        for S in self.sets:
            key = lex_key(S, w)
            if best_key is None or lex_greater(key, best_key):
                best_key, out = key, [S]
            elif key == best_key:
                out.append(S)
        return out


def concavity_violation(values):
    """First ``k`` with ``OPT_k + OPT_{k+2} > 2 OPT_{k+1}``, else None."""
    for k in range(len(values) - 2):
        if values[k] + values[k + 2] > 2 * values[k + 1]:
            return k
    return None


def sample_bit_functions(n: int, samples: int, exponent_range=(-4, 4), seed=0):
    """Exponent vectors: all 0/1 patterns when ``2**n <= samples``, then
    uniform integers in ``exponent_range`` with occasional extremes ``+-(n+2)``.

    Two-level patterns are the usual counterexamples, so when they cannot all
    be listed every fourth random sample is a random 0/1 pattern instead.
    """
    rng = random.Random(seed)
    lo, hi = exponent_range
    out = []
    listed = n and 2 ** n <= samples
    if listed:
        out.extend(itertools.product((0, 1), repeat=n))
    i = 0
    while len(out) < samples:
        ex = [rng.randint(lo, hi) for _ in range(n)]
        if i % 4 == 1 and not listed:
            ex = [rng.randint(0, 1) for _ in range(n)]
        elif i % 4 == 3:
            ex = [rng.choice((-(n + 2), n + 2)) if rng.random() < 0.3 else x for x in ex]
        out.append(tuple(ex))
        i += 1
    return out[:samples] if n else [()]


def check_bit_concave(sys, samples: int = 1000, exponent_range=(-4, 4), seed=0, cap=DEFAULT_CAP):
    """Returns ``(True, None)`` or ``(False, {"exponents", "k", "opt"})``."""
    prof = _Profiler(sys, cap)
    for ex in sample_bit_functions(sys.ground_size, samples, exponent_range, seed):
        vals = prof.profile(BitFunction(ex).weights())
        k = concavity_violation(vals)
        if k is not None:
            return False, {"exponents": list(ex), "k": k, "opt": vals}
    return True, None


def _good_for(prof: _Profiler, w):
    vals = prof.profile(w)
    for S in prof.lex_max_sets(w):
        for k in range(1, prof.r + 1):
            if total(top_k(S, w, k), w) != vals[k]:
                return S, k, vals
    return None


def check_good(sys, w, cap=DEFAULT_CAP):
    """Every lexicographically maximal set must be 1-robust for ``w``.

    Returns ``(True, None)`` or ``(False, {"set", "k", "achieved", "opt"})``.
    """
    prof = _Profiler(sys, cap)
    bad = _good_for(prof, tuple(w))
    if bad is None:
        return True, None
    S, k, vals = bad
    return False, {"set": sorted(S), "k": k,
                   "achieved": total(top_k(S, w, k), w), "opt": vals[k]}


def check_good_sampled(sys, samples: int = 1000, exponent_range=(-4, 4), seed=0, cap=DEFAULT_CAP):
    prof = _Profiler(sys, cap)
    for ex in sample_bit_functions(sys.ground_size, samples, exponent_range, seed):
        w = BitFunction(ex).weights()
        bad = _good_for(prof, w)
        if bad is not None:
            S, k, vals = bad
            return False, {"exponents": list(ex), "set": sorted(S), "k": k,
                           "achieved": total(top_k(S, w, k), w), "opt": vals[k]}
    return True, None


def check_2_extendible(sys, cap=DEFAULT_CAP):
    """For all independent ``X, Y`` and ``y`` in ``Y - X``: some ``Z`` in
    ``X - Y`` with ``|Z| <= 2`` makes ``(X + y) - Z`` independent.

    Only ``X & Y`` matters besides ``y``, so each ``(X, y, X & Y)`` is tested once.
    """
    sets = enumerate_independent(sys, cap=cap)
    containing = {}
    for Y in sets:
        for y in Y:
            containing.setdefault(y, []).append(Y)
    for X in sets:
        for y, Ys in containing.items():
            if y in X:
                continue
            seen = set()
            for Y in Ys:
                T = X & Y
                if T in seen:
                    continue
                seen.add(T)
                free = sorted(X - T)
                base = X | {y}
                ok = any(sys._independent(base - frozenset(Z))
                         for size in range(3) for Z in itertools.combinations(free, size))
                if not ok:
                    return False, {"X": sorted(X), "Y": sorted(Y), "y": y}
    return True, None


def single_minor_steps(sys):
    """All one-step minor specs: delete or contract one element, or truncate."""
    steps = []
    n = sys.ground_size
    r = max(len(S) for S in enumerate_independent(sys))
    for e in range(n):
        steps.append((("delete", (e,)),))
        if sys._independent(frozenset({e})):
            steps.append((("contract", (e,)),))
    for k in range(r):
        steps.append((("truncate", k),))
    return steps


def minors_up_to(sys, depth: int):
    """``(spec, system)`` pairs for all minors reachable in ``depth`` steps (incl. itself)."""
    out = [((), sys)]
    frontier = [((), sys)]
    for _ in range(depth):
        nxt = []
        for spec, m in frontier:
            for step in single_minor_steps(m):
                nxt.append((spec + step, apply_minor(m, step)))
        out.extend(nxt)
        frontier = nxt
    return out


@dataclass
class EquivalenceReport:
    bit_concave: bool
    minors_bit_concave: bool
    lex_optimal: bool
    good: bool
    witnesses: dict = field(default_factory=dict)

    @property
    def agree(self) -> bool:
        vals = (self.bit_concave, self.minors_bit_concave, self.lex_optimal, self.good)
        return all(vals) or not any(vals)

    def to_dict(self):
        return {"bit_concave": self.bit_concave, "minors_bit_concave": self.minors_bit_concave,
                "lex_optimal": self.lex_optimal, "good": self.good, "agree": self.agree,
                "witnesses": self.witnesses}


def check_theorem32(sys, minor_depth: int = 1, samples: int = 200, seed=0,
                    minor_samples: int = None, cap=DEFAULT_CAP) -> EquivalenceReport:
    """Evaluate the four equivalent conditions on sampled bit-functions.

    (i) bit-concavity, (ii) bit-concavity of every minor up to ``minor_depth``,
    (iii) lexicographic maxima are weight-maximal in every sampled minor,
    (iv) goodness.  The conditions are equivalent, so disagreement signals a bug.
    """
    minor_samples = minor_samples or max(20, samples // 10)
    wit = {}
    ok1, w1 = check_bit_concave(sys, samples, seed=seed, cap=cap)
    ok4, w4 = check_good_sampled(sys, samples, seed=seed, cap=cap)
    ok2, ok3 = ok1, True
    if w1:
        wit["bit_concave"] = w1
    if w4:
        wit["good"] = w4
    for spec, m in minors_up_to(sys, minor_depth):
        if m.ground_size == 0:
            continue
        prof = _Profiler(m, cap)
        cnt = samples if not spec else minor_samples
        for ex in sample_bit_functions(m.ground_size, cnt, seed=seed):
            w = BitFunction(ex).weights()
            vals = None
            if ok2:
                vals = prof.profile(w)
                k = concavity_violation(vals)
                if k is not None:
                    ok2 = False
                    wit["minors_bit_concave"] = {"minor": [list(s) for s in spec],
                                                 "exponents": list(ex), "k": k}
            if ok3:
                vals = vals or prof.profile(w)
                for S in prof.lex_max_sets(w):
                    if total(S, w) != vals[-1]:
                        ok3 = False
                        wit["lex_optimal"] = {"minor": [list(s) for s in spec],
                                              "exponents": list(ex), "set": sorted(S)}
                        break
            if not ok2 and not ok3:
                break
        if not ok2 and not ok3:
            break
    return EquivalenceReport(ok1, ok2, ok3, ok4, wit)
