"""Exact rational arithmetic, rank-three character vectors, and plane geometry.

Everything downstream reduces to predicates defined here: the Euler
pairing on characters, discriminants, 3x3 determinants, exact ray
comparison around a base point, and point-in-polygon tests with explicit
edge and vertex inclusion flags.  No floating point in any decision.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .surd import Number, QuadReal, nsign

Rational = Fraction


def parse_rational(text: str) -> Fraction:
    """Parse 'p/q', 'p', or a decimal string into an exact Fraction."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed rational: {text!r}") from exc


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def format_number(x: Number) -> str:
    """Compact display form; exact for rationals, 'a+b*sqrt(d)' for surds."""
    if isinstance(x, QuadReal):
        if x.is_rational:
            return format_rational(x.a)
        return f"{format_rational(x.a)}+{format_rational(x.b)}*sqrt({x.d})"
    return format_rational(Fraction(x))


def to_fraction(x: Number) -> Fraction:
    """Exact rational value of x; raises for irrational surds."""
    if isinstance(x, QuadReal):
        return x.as_fraction()
    return Fraction(x)


@dataclass(frozen=True)
class CharVec:
    """A character (ch0, ch1, ch2) with exact rational entries."""

    ch0: Fraction
    ch1: Fraction
    ch2: Fraction

    def __init__(self, ch0, ch1, ch2):
        object.__setattr__(self, "ch0", Fraction(ch0))
        object.__setattr__(self, "ch1", Fraction(ch1))
        object.__setattr__(self, "ch2", Fraction(ch2))

    def __add__(self, other: "CharVec") -> "CharVec":
        return CharVec(self.ch0 + other.ch0, self.ch1 + other.ch1, self.ch2 + other.ch2)

    def __sub__(self, other: "CharVec") -> "CharVec":
        return CharVec(self.ch0 - other.ch0, self.ch1 - other.ch1, self.ch2 - other.ch2)

    def __neg__(self) -> "CharVec":
        return CharVec(-self.ch0, -self.ch1, -self.ch2)

    def scale(self, k) -> "CharVec":
        k = Fraction(k)
        return CharVec(k * self.ch0, k * self.ch1, k * self.ch2)

    def __rmul__(self, k) -> "CharVec":
        return self.scale(k)

    def is_zero(self) -> bool:
        return self.ch0 == 0 and self.ch1 == 0 and self.ch2 == 0

    def proj(self) -> "AffPt":
        """Projection to the affine plane (ch1/ch0, ch2/ch0)."""
        if self.ch0 == 0:
            raise ValueError("no affine projection: ch0 = 0")
        return AffPt(self.ch1 / self.ch0, self.ch2 / self.ch0)

    def to_json(self) -> list[str]:
        return [format_rational(self.ch0), format_rational(self.ch1), format_rational(self.ch2)]

    @classmethod
    def from_json(cls, items: Sequence[str]) -> "CharVec":
        return cls(*(parse_rational(s) for s in items))


def euler_chi(v: CharVec, w: CharVec) -> Fraction:
    """The (non-symmetric) Euler pairing of two characters."""
    return (v.ch0 * w.ch0
            + Fraction(3, 2) * (v.ch0 * w.ch1 - w.ch0 * v.ch1)
            + v.ch0 * w.ch2 + w.ch0 * v.ch2
            - v.ch1 * w.ch1)


def slope(v: CharVec) -> Fraction:
    if v.ch0 == 0:
        raise ValueError("slope undefined: ch0 = 0")
    return v.ch1 / v.ch0


def delta(v: CharVec) -> Fraction:
    """Discriminant (1/2) slope^2 - ch2/ch0."""
    mu = slope(v)
    return mu * mu / 2 - v.ch2 / v.ch0


def det3(u: CharVec, v: CharVec, w: CharVec) -> Fraction:
    return (u.ch0 * (v.ch1 * w.ch2 - v.ch2 * w.ch1)
            - u.ch1 * (v.ch0 * w.ch2 - v.ch2 * w.ch0)
            + u.ch2 * (v.ch0 * w.ch1 - v.ch1 * w.ch0))


@dataclass(frozen=True)
class AffPt:
    """A point of the affine (ch1/ch0, ch2/ch0) plane; coordinates may be surds."""

    x: Number
    y: Number

    def delta(self) -> Number:
        return self.x * self.x * Fraction(1, 2) - self.y

    def is_rational(self) -> bool:
        return not (isinstance(self.x, QuadReal) and not self.x.is_rational) and \
               not (isinstance(self.y, QuadReal) and not self.y.is_rational)

    def to_json(self):
        def one(c):
            if isinstance(c, QuadReal) and not c.is_rational:
                return c.to_json()
            if isinstance(c, QuadReal):
                return format_rational(c.a)
            return format_rational(Fraction(c))
        return {"x": one(self.x), "y": one(self.y)}

    def approx(self) -> tuple[float, float]:
        return float(self.x), float(self.y)


def vec(p: AffPt, q: AffPt) -> tuple[Number, Number]:
    """Displacement q - p."""
    return q.x - p.x, q.y - p.y


def cross2(u: tuple[Number, Number], v: tuple[Number, Number]) -> Number:
    return u[0] * v[1] - u[1] * v[0]


def collinear(p: AffPt, q: AffPt, r: AffPt) -> bool:
    return nsign(cross2(vec(p, q), vec(p, r))) == 0


def pts_det3(p: AffPt, q: AffPt, r: AffPt) -> Number:
    """Determinant of the rows (1, x, y) for three affine points."""
    return cross2(vec(p, q), vec(p, r))


@dataclass(frozen=True)
class ProjLine:
    """A projective line c0*ch0 + c1*ch1 + c2*ch2 = 0 in character coordinates.

    On the affine chart (1, x, y) this is c0 + c1 x + c2 y = 0.
    """

    c0: Fraction
    c1: Fraction
    c2: Fraction

    def __post_init__(self):
        if self.c0 == 0 and self.c1 == 0 and self.c2 == 0:
            raise ValueError("degenerate line: all coefficients zero")

    @classmethod
    def through(cls, p: AffPt, q: AffPt) -> "ProjLine":
        if p == q:
            raise ValueError("two distinct points required")
        px, py = to_fraction(p.x), to_fraction(p.y)
        qx, qy = to_fraction(q.x), to_fraction(q.y)
        return cls(px * qy - py * qx, py - qy, qx - px)

    def eval_at(self, p: AffPt) -> Number:
        return self.c0 + self.c1 * p.x + self.c2 * p.y

    def contains(self, p: AffPt) -> bool:
        return nsign(self.eval_at(p)) == 0

    def eval_char(self, v: CharVec) -> Fraction:
        return self.c0 * v.ch0 + self.c1 * v.ch1 + self.c2 * v.ch2

    def same_line(self, other: "ProjLine") -> bool:
        a = (self.c0, self.c1, self.c2)
        b = (other.c0, other.c1, other.c2)
        return (a[0] * b[1] == a[1] * b[0]
                and a[0] * b[2] == a[2] * b[0]
                and a[1] * b[2] == a[2] * b[1])

    def y_at(self, x: Number) -> Number:
        if self.c2 == 0:
            raise ValueError("vertical line has no y(x)")
        return -(self.c0 + self.c1 * x) / self.c2


@dataclass(frozen=True)
class Segment:
    """A straight segment with explicit endpoint inclusion flags."""

    a: AffPt
    b: AffPt
    include_a: bool = True
    include_b: bool = True

    def __post_init__(self):
        if self.a == self.b:
            raise ValueError("degenerate segment")

    def x_range(self) -> tuple[Number, Number]:
        return (self.a.x, self.b.x) if nsign(self.b.x - self.a.x) >= 0 else (self.b.x, self.a.x)

    def contains(self, p: AffPt) -> bool:
        if p == self.a:
            return self.include_a
        if p == self.b:
            return self.include_b
        u, w = vec(self.a, self.b), vec(self.a, p)
        if nsign(cross2(u, w)) != 0:
            return False
        # strictly between along the dominant axis
        if nsign(u[0]) != 0:
            su = nsign(u[0])
            return nsign(p.x - self.a.x) == su and nsign(self.b.x - p.x) == su
        su = nsign(u[1])
        return nsign(p.y - self.a.y) == su and nsign(self.b.y - p.y) == su


@dataclass(frozen=True)
class Ray:
    """A ray from a base point in a given direction."""

    base: AffPt
    direction: tuple[Number, Number]
    include_base: bool = True


class RayOrder(enum.Enum):
    BELOW = -1
    EQUAL = 0
    ABOVE = 1


def _halfplane_dir(u: tuple[Number, Number]) -> tuple[Number, Number]:
    """Flip u to the closed right half-plane used for ray comparisons.

    Admissible directions have positive x, or zero x with positive y
    (straight up).  A line's other ray represents the same comparison
    datum, so directions are normalized by sign.
    """
    sx = nsign(u[0])
    if sx < 0 or (sx == 0 and nsign(u[1]) < 0):
        return (-u[0], -u[1])
    return u


def ray_above(p: AffPt, a: AffPt, b: AffPt) -> RayOrder:
    """Compare the rays p->a and p->b by angle from the downward vertical.

    Both rays are taken on the right-half-plane side of their lines; the
    angle increases counterclockwise from straight down (0) through
    horizontal (1/2 turn of pi) to straight up (pi).
    """
    if a == p or b == p:
        raise ValueError("ray endpoint coincides with the base point")
    u = _halfplane_dir(vec(p, a))
    v = _halfplane_dir(vec(p, b))
    u_vert = nsign(u[0]) == 0
    v_vert = nsign(v[0]) == 0
    if u_vert and v_vert:
        return RayOrder.EQUAL
    if u_vert:
        return RayOrder.ABOVE
    if v_vert:
        return RayOrder.BELOW
    c = nsign(cross2(u, v))
    if c > 0:
        return RayOrder.BELOW
    if c < 0:
        return RayOrder.ABOVE
    return RayOrder.EQUAL


@dataclass(frozen=True)
class Polygon:
    """A simple polygon with per-edge and per-vertex inclusion flags.

    Edge i joins vertices[i] to vertices[i+1] (cyclically).  The region
    may be star-shaped; membership is decided by exact crossing parity.
    """

    vertices: tuple[AffPt, ...]
    edge_included: tuple[bool, ...]
    vertex_included: tuple[bool, ...]

    def __post_init__(self):
        n = len(self.vertices)
        if n < 3 or len(self.edge_included) != n or len(self.vertex_included) != n:
            raise ValueError("degenerate polygon")
        area2 = Fraction(0)
        for i in range(n):
            p, q = self.vertices[i], self.vertices[(i + 1) % n]
            if p == q:
                raise ValueError("degenerate polygon: repeated vertex")
            area2 += to_fraction(p.x) * to_fraction(q.y) - to_fraction(q.x) * to_fraction(p.y)
        if area2 == 0:
            raise ValueError("degenerate polygon: zero area")

    def edges(self) -> Iterable[tuple[AffPt, AffPt, bool]]:
        n = len(self.vertices)
        for i in range(n):
            yield self.vertices[i], self.vertices[(i + 1) % n], self.edge_included[i]


def point_in_polygon(p: AffPt, poly: Polygon) -> bool:
    """Exact membership with the polygon's inclusion flags.

    Boundary cases are resolved first (vertices, then open edges); the
    interior test is even-odd crossing counting with a horizontal ray,
    exact because the point is strictly off the boundary there.
    """
    for v, flag in zip(poly.vertices, poly.vertex_included):
        if p == v:
            return flag
    for a, b, flag in poly.edges():
        u, w = vec(a, b), vec(a, p)
        if nsign(cross2(u, w)) != 0:
            continue
        t_num = u[0] * w[0] + u[1] * w[1]
        t_den = u[0] * u[0] + u[1] * u[1]
        if nsign(t_num) > 0 and nsign(t_den - t_num) > 0:
            return flag
    crossings = 0
    for a, b, _ in poly.edges():
        ya, yb = a.y - p.y, b.y - p.y
        sa, sb = nsign(ya), nsign(yb)
        # half-open rule: an edge counts when it spans the ray level
        if (sa > 0) == (sb > 0):
            continue
        # x-coordinate where the edge meets the horizontal through p
        t = ya / (ya - yb)
        x_hit = a.x + t * (b.x - a.x)
        if nsign(x_hit - p.x) > 0:
            crossings += 1
    return crossings % 2 == 1
