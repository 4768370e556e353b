import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from robmatch.errors import InputError
from robmatch.exact import SQRT2
from robmatch.simplex import maximize


def test_small_lp_exact():
    # max 3x + 2y, x + y <= 4, x + 3y <= 6, x <= 3
    res = maximize([3, 2], [[1, 1], [1, 3], [1, 0]], [4, 6, 3])
    assert res.value == 11
    assert tuple(res.x) == (3, 1)
    assert all(isinstance(v, (int, Fraction)) for v in res.x)


def test_duals_give_matching_bound():
    c, A, b = [3, 2], [[1, 1], [1, 3], [1, 0]], [4, 6, 3]
    res = maximize(c, A, b)
    assert all(y >= 0 for y in res.y)
    assert sum(y * bi for y, bi in zip(res.y, b)) == res.value
    for j in range(2):
        assert sum(res.y[i] * A[i][j] for i in range(3)) >= c[j]


def test_qsqrt2_coefficients():
    res = maximize([SQRT2, 1], [[1, 1]], [1])
    assert res.value == SQRT2


def test_unbounded_and_bad_rhs():
    with pytest.raises(InputError):
        maximize([1], [[-1]], [1])
    with pytest.raises(InputError):
        maximize([1], [[1]], [-1])


def _vertex_oracle(c, A, b):
    """Enumerate basic solutions of the 2-variable LP."""
    rows = [(r, bi) for r, bi in zip(A, b)] + [([1, 0], 0), ([0, 1], 0)]
    best = None
    for (r1, b1), (r2, b2) in itertools.combinations(rows, 2):
        det = r1[0] * r2[1] - r1[1] * r2[0]
        if det == 0:
            continue
        x = Fraction(b1 * r2[1] - b2 * r1[1], det)
        y = Fraction(r1[0] * b2 - r2[0] * b1, det)
        if x < 0 or y < 0 or any(ri[0] * x + ri[1] * y > bi for ri, bi in zip(A, b)):
            continue
        v = c[0] * x + c[1] * y
        best = v if best is None or v > best else best
    return best


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 6), min_size=2, max_size=2),
       st.lists(st.tuples(st.integers(1, 5), st.integers(1, 5), st.integers(0, 9)), min_size=1, max_size=4))
def test_two_variable_lps_match_vertex_enumeration(c, rows):
    A = [[a, b] for a, b, _ in rows]
    b = [r for _, _, r in rows]
    res = maximize(c, A, b)
    assert res.value == _vertex_oracle(c, A, b)
    # strong duality
    assert sum(y * bi for y, bi in zip(res.y, b)) == res.value
