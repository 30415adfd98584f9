"""Exact arithmetic for numbers of the form a + b*sqrt(d).

Values of this shape show up as intersection points of rational lines
with the rank-normalized discriminant parabolas.  All predicates here
(sign, comparison, equality) are decided by integer arithmetic alone;
floating point is used only for display.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering
from typing import Union

RationalLike = Union[int, Fraction]

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59,
                 61, 67, 71, 73, 79, 83, 89, 97)

_FACTOR_LIMIT = 10**12


def _reduce_radicand(b: Fraction, d: int) -> tuple[Fraction, int]:
    """Pull square factors out of d, folding them into b.

    Small radicands are made fully square-free.  Huge radicands (they
    appear at larger recursion depths, where full factorization is not
    feasible) only get square factors of small primes removed; every
    predicate in this module is exact regardless of square-freeness.
    """
    if d < 0:
        raise ValueError("negative radicand")
    if d in (0, 1):
        return b * d, 0
    root = math.isqrt(d)
    if root * root == d:
        return b * root, 0
    s = 1
    for p in _SMALL_PRIMES:
        p2 = p * p
        while d % p2 == 0:
            d //= p2
            s *= p
    if d <= _FACTOR_LIMIT:
        f = 3
        while f * f * f <= d:
            f2 = f * f
            while d % f2 == 0:
                d //= f2
                s *= f
            f += 2
        root = math.isqrt(d)
        if root * root == d:
            return b * s * root, 0
    return b * s, d


def _sign_of(x: Fraction | int) -> int:
    return (x > 0) - (x < 0)


def _surd_sign(a: Fraction, b: Fraction, d: int) -> int:
    """Exact sign of a + b*sqrt(d) for a nonnegative integer d."""
    if b == 0 or d == 0:
        return _sign_of(a)
    if a == 0:
        return _sign_of(b)
    sa, sb = _sign_of(a), _sign_of(b)
    if sa == sb:
        return sa
    # opposite signs: compare a^2 with b^2 d
    return sa if a * a > b * b * d else sb if a * a < b * b * d else 0


def _mixed_sign(r: Fraction, b1: Fraction, d1: int, b2: Fraction, d2: int) -> int:
    """Exact sign of r + b1*sqrt(d1) + b2*sqrt(d2) by repeated squaring."""
    if b1 == 0 or d1 == 0:
        return _surd_sign(r, b2, d2)
    if b2 == 0 or d2 == 0:
        return _surd_sign(r, b1, d1)
    # sign of u = b1*sqrt(d1) + b2*sqrt(d2)
    if _sign_of(b1) == _sign_of(b2):
        su = _sign_of(b1)
    else:
        lhs, rhs = b1 * b1 * d1, b2 * b2 * d2
        su = _sign_of(b1) if lhs > rhs else _sign_of(b2) if lhs < rhs else 0
    if r == 0:
        return su
    sr = _sign_of(r)
    if su == 0 or sr == su:
        return sr
    # r and u have opposite signs: compare r^2 with u^2 = b1^2 d1 + b2^2 d2 + 2 b1 b2 sqrt(d1 d2)
    t = r * r - b1 * b1 * d1 - b2 * b2 * d2
    s_t = _surd_sign(t, -2 * b1 * b2, d1 * d2)
    if s_t > 0:
        return sr
    if s_t < 0:
        return su
    return 0


@total_ordering
class QuadReal:
    """a + b*sqrt(d) with rational a, b and a nonnegative integer d.

    Rational values are normalized to b == 0, d == 0.  Arithmetic stays
    within one quadratic extension; adding surds over distinct radicands
    raises, but comparisons across radicands are exact.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a: RationalLike = 0, b: RationalLike = 0, d: int = 0):
        a, b = Fraction(a), Fraction(b)
        if b != 0:
            b, d = _reduce_radicand(b, int(d))
            if d == 0:
                # the radicand was a perfect square: fold into the rational part
                a, b = a + b, Fraction(0)
        else:
            d = 0
        if b == 0:
            d = 0
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("QuadReal is immutable")

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("irrational quadratic value")
        return self.a

    @staticmethod
    def _coerce(x: "QuadReal | RationalLike") -> "QuadReal":
        if isinstance(x, QuadReal):
            return x
        if isinstance(x, (int, Fraction)):
            return QuadReal(x)
        return NotImplemented  # type: ignore[return-value]

    def _compatible(self, other: "QuadReal") -> int:
        if self.b == 0 or other.b == 0 or self.d == other.d:
            return self.d if self.b != 0 else other.d
        raise ValueError("values live in different quadratic extensions")

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        d = self._compatible(o)
        return QuadReal(self.a + o.a, self.b + o.b, d)

    __radd__ = __add__

    def __neg__(self):
        return QuadReal(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        d = self._compatible(o)
        return QuadReal(self.a * o.a + self.b * o.b * d,
                        self.a * o.b + self.b * o.a, d)

    __rmul__ = __mul__

    def inverse(self) -> "QuadReal":
        if self.sign() == 0:
            raise ZeroDivisionError("division by zero")
        n = self.a * self.a - self.b * self.b * self.d
        # n == 0 would force a = b sqrt(d) with d square-ish; sign()==0 already caught value 0
        return QuadReal(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def sign(self) -> int:
        return _surd_sign(self.a, self.b, self.d)

    def _cmp(self, other) -> int:
        o = self._coerce(other)
        if o is NotImplemented:
            raise TypeError(f"cannot compare QuadReal with {type(other).__name__}")
        if self.b == 0 or o.b == 0 or self.d == o.d:
            return (self - o).sign()
        return _mixed_sign(self.a - o.a, self.b, self.d, -o.b, o.d)

    def __eq__(self, other):
        if not isinstance(other, (QuadReal, int, Fraction)):
            return NotImplemented
        return self._cmp(other) == 0

    def __lt__(self, other):
        if not isinstance(other, (QuadReal, int, Fraction)):
            return NotImplemented
        return self._cmp(other) < 0

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        raise TypeError("irrational QuadReal is unhashable")

    def isolating_interval(self, scale: int = 10**30) -> tuple[Fraction, Fraction]:
        """A rational interval containing the value (width 1/scale)."""
        if self.b == 0:
            return self.a, self.a
        q = self.b * self.b * self.d * scale * scale
        root = math.isqrt(q.numerator // q.denominator)  # floor(|b| sqrt(d) scale)
        approx = Fraction(root, scale)
        if self.b < 0:
            return self.a - approx - Fraction(1, scale), self.a - approx
        return self.a + approx, self.a + approx + Fraction(1, scale)

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __repr__(self) -> str:
        if self.b == 0:
            return f"QuadReal({self.a})"
        return f"QuadReal({self.a} + {self.b}*sqrt({self.d}))"

    def to_json(self) -> dict:
        from .corekit import format_rational
        return {"a": format_rational(self.a), "b": format_rational(self.b), "d": self.d}

    @classmethod
    def from_json(cls, obj: dict) -> "QuadReal":
        from .corekit import parse_rational
        return cls(parse_rational(obj["a"]), parse_rational(obj["b"]), int(obj["d"]))


Number = Union[int, Fraction, QuadReal]


def nsign(x: Number) -> int:
    """Sign of a rational or quadratic number."""
    if isinstance(x, QuadReal):
        return x.sign()
    return (x > 0) - (x < 0)
