"""The robustness game: Alice picks a set, Bob picks a cardinality ``k``,
Alice receives ``w(S_k) / OPT_k``.  Optimal mixed strategies come from one
LP and its dual.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError
from .exact import div, encode_number, is_exact, simplify
from .robust import PriorityDistribution, RandomizedSolution
from .simplex import maximize
from .solvers import opt_profile
from .systems import DEFAULT_CAP, check_weights, enumerate_independent, top_k, total


@dataclass(frozen=True)
class GameMatrix:
    rows: tuple      # candidate sets
    ks: tuple        # cardinalities 1..r
    opt: tuple       # OPT_k per column
    payoff: tuple    # payoff[i][j] = w(rows[i]_{ks[j]}) / opt[j]

    @property
    def shape(self):
        return len(self.rows), len(self.ks)


@dataclass(frozen=True)
class GameSolution:
    alpha_star: object
    alice: tuple     # ((set, prob), ...), unvalidated so corrupted claims can be checked
    bob: tuple       # ((k, y), ...)
    beta: object

    def alice_solution(self) -> RandomizedSolution:
        return RandomizedSolution(tuple((S, p) for S, p in self.alice if p > 0))

    def to_dict(self) -> dict:
        return {
            "alpha_star": float(self.alpha_star),
            "alpha_star_exact": encode_number(self.alpha_star) if is_exact(self.alpha_star) else None,
            "beta": float(self.beta),
            "alice": [{"set": sorted(S), "prob": float(p)} for S, p in self.alice if p > 0],
            "bob": [{"k": k, "y": float(y)} for k, y in self.bob],
        }


def build_matrix(sys, w, full_support: bool = False, cap: int = DEFAULT_CAP) -> GameMatrix:
    """Payoff matrix over maximal sets (or all independent sets)."""
    w = check_weights(w, sys.ground_size)
    rows = enumerate_independent(sys, maximal_only=not full_support, cap=cap)
    rows = sorted(rows, key=lambda S: (len(S), sorted(S)))
    prof = opt_profile(sys, w, cap=cap)
    ks = tuple(range(1, prof.r + 1))
    if not ks:
        raise InputError("system has no non-empty independent set")
    opt = tuple(prof.opt(k) for k in ks)
    payoff = []
    for S in rows:
        row = []
        for k, o in zip(ks, opt):
            row.append(div(simplify(total(top_k(S, w, k), w)), o) if o > 0 else 1)
        payoff.append(tuple(row))
    return GameMatrix(tuple(rows), ks, opt, tuple(payoff))


def matrix_from_payoff(payoff, rows=None, ks=None) -> GameMatrix:
    """Wrap a bare payoff matrix (rows labelled 0..m-1 as singleton sets)."""
    payoff = tuple(tuple(r) for r in payoff)
    if not payoff or not payoff[0]:
        raise InputError("empty payoff matrix")
    m, n = len(payoff), len(payoff[0])
    rows = tuple(rows) if rows is not None else tuple(frozenset({i}) for i in range(m))
    ks = tuple(ks) if ks is not None else tuple(range(1, n + 1))
    return GameMatrix(rows, ks, (1,) * n, payoff)


def _as_fraction(v):
    return Fraction(v) if isinstance(v, float) else v


def solve_game(matrix: GameMatrix, exact: bool = None) -> GameSolution:
    """Optimal strategies via ``max sum t  s.t.  A t <= 1, t >= 0``.

    The game value is ``1 / sum t``; Bob plays ``t`` normalised and Alice
    plays the normalised row duals.  Exact entries (rationals or Q(sqrt2))
    are solved exactly; ``exact=True`` also converts floats to rationals.
    """
    A = [list(r) for r in matrix.payoff]
    if not A or not A[0] or any(len(r) != len(A[0]) for r in A):
        raise InputError("payoff matrix must be non-empty and rectangular")
    all_exact = all(is_exact(v) for r in A for v in r)
    if exact:
        A = [[_as_fraction(v) for v in r] for r in A]
    elif exact is False or not all_exact:
        A = [[float(v) for v in r] for r in A]
    m, n = len(A), len(A[0])
    for j in range(n):
        if not any(A[i][j] > 0 for i in range(m)):
            raise InputError(f"column {matrix.ks[j]} is all zero: game value is 0")
    res = maximize([1] * n, A, [1] * m)
    s = sum(res.x, 0)
    value = div(1, s) if is_exact(s) else 1.0 / s
    bob = tuple((k, simplify(t * value)) for k, t in zip(matrix.ks, res.x))
    alice = tuple((S, simplify(u * value)) for S, u in zip(matrix.rows, res.y))
    # beta: Bob's guaranteed upper bound, evaluated from scratch
    beta = max(simplify(sum((y * A[i][j] for j, (_, y) in enumerate(bob)), 0)) for i in range(m))
    return GameSolution(simplify(value), alice, bob, beta)


def verify_solution(matrix: GameMatrix, sol: GameSolution, tol: float = 1e-9):
    """Recheck feasibility of both strategies and the duality gap.

    Returns ``(ok, violations)`` where each violation is a short string.
    """
    A = matrix.payoff
    violations = []
    x = [p for _, p in sol.alice]
    y = [v for _, v in sol.bob]
    if len(x) != len(A):
        violations.append("alice strategy has wrong length")
        x = []
    if len(y) != len(matrix.ks):
        violations.append("bob strategy has wrong length")
        y = []
    if any(float(p) < -tol for p in x):
        violations.append("alice has a negative probability")
    if abs(float(sum(x, 0)) - 1) > tol:
        violations.append(f"alice probabilities sum to {float(sum(x, 0)):.12g}")
    if any(float(v) < -tol for v in y):
        violations.append("bob has a negative weight")
    if abs(float(sum(y, 0)) - 1) > tol:
        violations.append(f"bob weights sum to {float(sum(y, 0)):.12g}")
    alpha = float(sol.alpha_star)
    if x:
        for j, k in enumerate(matrix.ks):
            got = sum(float(x[i]) * float(A[i][j]) for i in range(len(A)))
            if got < alpha - tol:
                violations.append(f"primal violated at k={k}: {got:.12g} < {alpha:.12g}")
    if y:
        for i, S in enumerate(matrix.rows):
            got = sum(float(y[j]) * float(A[i][j]) for j in range(len(y)))
            if got > alpha + tol:
                violations.append(f"dual violated at row {sorted(S)}: {got:.12g} > {alpha:.12g}")
    if abs(alpha - float(sol.beta)) > tol:
        violations.append(f"duality gap {abs(alpha - float(sol.beta)):.3g}")
    return not violations, violations


def deterministic_best(matrix: GameMatrix):
    """Best pure strategy for Alice: ``max_S min_k payoff``."""
    best, arg = None, None
    for S, row in zip(matrix.rows, matrix.payoff):
        v = min(row)
        if best is None or v > best:
            best, arg = v, S
    return best, arg


def induced_priority(matrix: GameMatrix, sol: GameSolution) -> PriorityDistribution:
    """Bob's strategy as a distribution over ``k``: ``mu_k`` proportional to ``y_k / OPT_k``."""
    raw = {k: div(y, o) if is_exact(y) and is_exact(o) else float(y) / float(o)
           for (k, y), o in zip(sol.bob, matrix.opt) if y > 0}
    z = sum(raw.values(), 0)
    mu = {k: (div(v, z) if is_exact(v) and is_exact(z) else float(v) / float(z)) for k, v in raw.items()}
    if not all(is_exact(v) for v in mu.values()):
        # absorb float rounding so the distribution validates
        mu = {k: float(v) for k, v in mu.items()}
    return PriorityDistribution(mu)
