"""Dense tableau simplex with Bland's rule over any ordered field.

Entries may be ``Fraction``, ``QSqrt2`` (exact) or ``float`` (compared with
a tolerance).  Only the form ``max c.x  s.t.  A x <= b, x >= 0`` with
``b >= 0`` is needed here, so the slack basis is always a feasible start.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError, InternalError
from .exact import simplify


@dataclass(frozen=True)
class LPResult:
    x: tuple
    y: tuple  # dual prices of the rows
    value: object


def _lift(v):
    if isinstance(v, int) and not isinstance(v, bool):
        return Fraction(v)
    return v


def maximize(c, A, b, tol=None, max_iter=100000) -> LPResult:
    """Solve ``max c.x`` subject to ``A x <= b``, ``x >= 0``.

    ``tol`` defaults to 0 for exact inputs and 1e-12 when any entry is a
    float.  Raises :class:`InputError` on unbounded problems or negative ``b``.
    """
    m, n = len(A), len(c)
    if any(len(row) != n for row in A) or len(b) != m:
        raise InputError("dimension mismatch in LP data")
    entries = [*c, *b, *(v for row in A for v in row)]
    if tol is None:
        tol = 1e-12 if any(isinstance(v, float) for v in entries) else 0
    if any(v < -tol for v in b):
        raise InputError("right-hand side must be non-negative")

    width = n + m
    # rows: [coefficients..., rhs]
    T = []
    for i in range(m):
        row = [_lift(v) for v in A[i]] + [Fraction(int(i == j)) for j in range(m)] + [_lift(b[i])]
        T.append(row)
    obj = [-_lift(v) for v in c] + [Fraction(0)] * m + [Fraction(0)]
    basis = [n + i for i in range(m)]

    for _ in range(max_iter):
        enter = next((j for j in range(width) if obj[j] < -tol), None)
        if enter is None:
            break
        leave, best = None, None
        for i in range(m):
            a = T[i][enter]
            if a > tol:
                ratio = T[i][-1] / a
                if (best is None or ratio < best - tol
                        or (abs(ratio - best) <= tol and basis[i] < basis[leave])):
                    leave, best = i, ratio
        if leave is None:
            raise InputError("LP is unbounded")
        piv = T[leave][enter]
        T[leave] = [v / piv for v in T[leave]]
        prow = T[leave]
        for i in range(m):
            if i != leave:
                f = T[i][enter]
                if f:
                    T[i] = [v - f * p for v, p in zip(T[i], prow)]
        f = obj[enter]
        obj = [v - f * p for v, p in zip(obj, prow)]
        basis[leave] = enter
    else:
        raise InternalError("simplex iteration limit reached")

    x = [Fraction(0)] * width
    for i, j in enumerate(basis):
        x[j] = T[i][-1]
    xs = tuple(simplify(v) for v in x[:n])
    ys = tuple(simplify(obj[n + i]) for i in range(m))
    return LPResult(xs, ys, simplify(obj[-1]))
