"""Exact arithmetic in the field Q(sqrt 2) plus number helpers.

Weights in this package are plain Python numbers: ``int``, ``Fraction``,
``float`` or :class:`QSqrt2`.  ``QSqrt2`` mixes with ``int``/``Fraction``
exactly and degrades to ``float`` when combined with a float.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

_SQRT2 = math.sqrt(2.0)

# grid used to snap irrational log2 values to rationals
LOG2_GRID = 2 ** 40


class QSqrt2:
    """The number ``a + b*sqrt(2)`` with rational ``a`` and ``b``."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    # -- coercion --------------------------------------------------------
    @staticmethod
    def _lift(other):
        if isinstance(other, QSqrt2):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return QSqrt2(other, 0)
        if isinstance(other, Rational):
            return QSqrt2(Fraction(other), 0)
        return None

    def __float__(self):
        return float(self.a) + float(self.b) * _SQRT2

    def __repr__(self):
        return f"QSqrt2({self.a}, {self.b})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}*sqrt2"
        return f"{self.a}{'+' if self.b > 0 else '-'}{abs(self.b)}*sqrt2"

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return float(self) + other if isinstance(other, float) else NotImplemented
        return QSqrt2(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QSqrt2(-self.a, -self.b)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return float(self) - other if isinstance(other, float) else NotImplemented
        return QSqrt2(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return other - float(self) if isinstance(other, float) else NotImplemented
        return QSqrt2(o.a - self.a, o.b - self.b)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return float(self) * other if isinstance(other, float) else NotImplemented
        return QSqrt2(self.a * o.a + 2 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def inverse(self):
        norm = self.a * self.a - 2 * self.b * self.b
        if norm == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt2)")
        return QSqrt2(self.a / norm, -self.b / norm)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return float(self) / other if isinstance(other, float) else NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return other / float(self) if isinstance(other, float) else NotImplemented
        return o * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return float(self) ** n
        if n < 0:
            return self.inverse() ** (-n)
        out, base = QSqrt2(1), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- ordering --------------------------------------------------------
    def sign(self):
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return (b > 0) - (b < 0)
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: compare a^2 with 2 b^2
        d = a * a - 2 * b * b
        s = (d > 0) - (d < 0)
        return s if a > 0 else -s

    def _cmp(self, other):
        o = self._lift(other)
        if o is None:
            if isinstance(other, float):
                f = float(self)
                return (f > other) - (f < other)
            return NotImplemented
        return (self - o).sign()

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return float(self) == other if isinstance(other, float) else NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __lt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c >= 0

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def is_rational(self):
        return self.b == 0


SQRT2 = QSqrt2(0, 1)


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, QSqrt2)) and not isinstance(x, bool)


def to_float(x) -> float:
    return float(x)


def simplify(x):
    """Collapse a rational ``QSqrt2`` to ``Fraction`` and integral fractions to ``int``."""
    if isinstance(x, QSqrt2) and x.b == 0:
        x = x.a
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x.numerator)
    return x


def exact_sqrt(x):
    """Square root inside Q(sqrt 2) when it exists there, else ``float``."""
    x = simplify(x)
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        if x < 0:
            raise ValueError("negative square root")
        n, d = x.numerator, x.denominator
        rn, rd = math.isqrt(n), math.isqrt(d)
        if rn * rn == n and rd * rd == d:
            return simplify(Fraction(rn, rd))
        # x = 2 q^2  ->  sqrt(x) = q sqrt2
        h = x / 2
        hn, hd = h.numerator, h.denominator
        rn, rd = math.isqrt(hn), math.isqrt(hd)
        if rn * rn == hn and rd * rd == hd:
            return QSqrt2(0, Fraction(rn, rd))
    return math.sqrt(float(x))


def _log2_power_of_two(q: Fraction):
    """Exact integer log2 of a positive rational power of two, else None."""
    n, d = q.numerator, q.denominator
    if n & (n - 1) == 0 and d & (d - 1) == 0:
        return n.bit_length() - d.bit_length()
    return None


def log2_exact(w) -> Fraction:
    """``log2(w)`` as a ``Fraction``.

    Exact for powers of two and for ``2**j * sqrt2``; otherwise the float
    logarithm snapped to the ``2**-40`` grid.
    """
    w = simplify(w)
    if isinstance(w, (int, Fraction)):
        q = Fraction(w)
        if q <= 0:
            raise ValueError("log2 of non-positive weight")
        j = _log2_power_of_two(q)
        if j is not None:
            return Fraction(j)
    elif isinstance(w, QSqrt2):
        if w.a == 0 and w.b > 0:
            j = _log2_power_of_two(w.b)
            if j is not None:
                return Fraction(2 * j + 1, 2)
        if w.sign() <= 0:
            raise ValueError("log2 of non-positive weight")
    elif isinstance(w, float):
        if not w > 0 or math.isinf(w):
            raise ValueError("log2 of non-positive or non-finite weight")
        m, e = math.frexp(w)
        if m == 0.5:
            return Fraction(e - 1)
    return Fraction(round(math.log2(float(w)) * LOG2_GRID), LOG2_GRID)


def pow2(j: int) -> Fraction:
    return Fraction(2) ** j


# -- JSON-friendly encoding ----------------------------------------------

def encode_rational(q) -> dict:
    q = Fraction(q)
    return {"num": q.numerator, "den": q.denominator}


def decode_rational(obj) -> Fraction:
    if isinstance(obj, dict):
        return Fraction(int(obj["num"]), int(obj.get("den", 1)))
    if isinstance(obj, str):
        return Fraction(obj)
    if isinstance(obj, float):
        return Fraction(obj)
    return Fraction(int(obj))


def encode_number(x):
    """Plain JSON number for ints/floats, object form for exact non-integers."""
    x = simplify(x)
    if isinstance(x, (int, float)):
        return x
    if isinstance(x, Fraction):
        return {"num": x.numerator, "den": x.denominator, "sqrt2_coeff": 0}
    a = x.a
    out = {"num": a.numerator, "den": a.denominator}
    out["sqrt2_coeff"] = encode_rational(x.b) if x.b.denominator != 1 else int(x.b)
    return out


def decode_number(obj):
    if isinstance(obj, bool):
        raise ValueError("boolean is not a weight")
    if isinstance(obj, (int, float)):
        return obj
    if isinstance(obj, str):
        return simplify(Fraction(obj))
    if isinstance(obj, dict):
        a = Fraction(int(obj.get("num", 0)), int(obj.get("den", 1)))
        b = decode_rational(obj.get("sqrt2_coeff", 0))
        return simplify(QSqrt2(a, b)) if b else simplify(a)
    raise ValueError(f"cannot decode number from {obj!r}")


def div(a, b):
    """``a / b`` staying exact when both operands are exact."""
    if is_exact(a) and is_exact(b):
        if isinstance(a, QSqrt2) or isinstance(b, QSqrt2):
            return simplify(QSqrt2._lift(a) / b)
        return simplify(Fraction(a) / Fraction(b))
    return float(a) / float(b)
