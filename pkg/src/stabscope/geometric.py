"""Central charges on the character lattice and exact phase machinery.

A charge in normal form is determined by a point (s, q) of the geometric
region: it sends a character to the complex number

    (-ch2 + q*ch0) + i*(ch1 - s*ch0).

This module evaluates charges exactly, decides heart membership of sheaf
classes at the character level, compares phases without ever computing a
floating-point argument, tests stability of exceptional bundles through
the segment criterion, and recovers the normal form (s, q) of a general
nondegenerate charge from its kernel line.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Union

from .corekit import AffPt, CharVec, slope, to_fraction
from .exceptional import ExcBundle
from .lepotier import GeoAnswer, RegionClass, classify_point, geo_contains_segment


@dataclass(frozen=True)
class RatComplex:
    """A complex number with exact rational real and imaginary parts."""

    re: Fraction
    im: Fraction

    def __init__(self, re, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __add__(self, other: "RatComplex") -> "RatComplex":
        return RatComplex(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "RatComplex") -> "RatComplex":
        return RatComplex(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "RatComplex":
        return RatComplex(-self.re, -self.im)

    def __mul__(self, other: "RatComplex") -> "RatComplex":
        return RatComplex(self.re * other.re - self.im * other.im,
                          self.re * other.im + self.im * other.re)

    def scale(self, k) -> "RatComplex":
        k = Fraction(k)
        return RatComplex(k * self.re, k * self.im)

    def __rmul__(self, k) -> "RatComplex":
        return self.scale(k)

    def cross(self, other: "RatComplex") -> Fraction:
        """Signed area with the other value; zero iff real-proportional."""
        return self.re * other.im - self.im * other.re

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def approx(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __str__(self) -> str:
        return f"{self.re}{'+' if self.im >= 0 else ''}{self.im}i"


@dataclass(frozen=True)
class SQCharge:
    """A charge in normal form, anchored at the kernel point (1, s, q).

    Constructing through ``at`` verifies that (s, q) lies in the
    geometric region at the requested depth; the plain constructor
    leaves the instance flagged as unchecked.
    """

    s: Fraction
    q: Fraction
    checked: bool = False

    def __init__(self, s, q, checked: bool = False):
        object.__setattr__(self, "s", Fraction(s))
        object.__setattr__(self, "q", Fraction(q))
        object.__setattr__(self, "checked", bool(checked))

    @classmethod
    def at(cls, s, q, depth: int) -> "SQCharge":
        s = Fraction(s)
        q = Fraction(q)
        if classify_point(AffPt(s, q), depth) is not RegionClass.GEO_LP:
            raise ValueError("(s, q) is not inside the geometric region")
        return cls(s, q, checked=True)

    @property
    def point(self) -> AffPt:
        return AffPt(self.s, self.q)

    def as_general(self) -> "GeneralCharge":
        return GeneralCharge(w0=RatComplex(self.q, -self.s),
                             w1=RatComplex(0, 1),
                             w2=RatComplex(-1, 0))


@dataclass(frozen=True)
class GeneralCharge:
    """An arbitrary exact linear map from characters to complex numbers.

    The value on a character x is  w0*ch0(x) + w1*ch1(x) + w2*ch2(x)
    with rational-complex coefficients.  Degenerate maps (image inside
    a real line) are representable; ``kernel_point`` rejects them.
    """

    w0: RatComplex
    w1: RatComplex
    w2: RatComplex

    @classmethod
    def from_ab(cls, a: RatComplex, b: RatComplex) -> "GeneralCharge":
        """The charge -ch2 + a*ch1 + b*ch0."""
        return cls(w0=b, w1=a, w2=RatComplex(-1, 0))

    def scale_by(self, u: RatComplex) -> "GeneralCharge":
        """Multiply the whole functional by a complex scalar."""
        return GeneralCharge(u * self.w0, u * self.w1, u * self.w2)


Charge = Union[SQCharge, GeneralCharge]


def z_eval(Z: Charge, v: CharVec) -> RatComplex:
    """Exact complex value of the charge on a character."""
    if isinstance(Z, SQCharge):
        return RatComplex(-v.ch2 + Z.q * v.ch0, v.ch1 - Z.s * v.ch0)
    return Z.w0.scale(v.ch0) + Z.w1.scale(v.ch1) + Z.w2.scale(v.ch2)


@dataclass(frozen=True)
class ShiftedChar:
    """A character with a homological shift, standing for E[n].

    The character is taken on trust as the class of a slope-semistable
    sheaf (or torsion sheaf); phases are only meaningful under that
    reading.
    """

    char: CharVec
    shift: int = 0

    def to_json(self) -> dict:
        return {"char": self.char.to_json(), "shift": self.shift}

    @classmethod
    def from_json(cls, obj: dict) -> "ShiftedChar":
        return cls(CharVec.from_json(obj["char"]), int(obj["shift"]))


class HeartPos(enum.Enum):
    IN_HEART = "InHeart"
    NEEDS_SHIFT_ONE = "NeedsShiftOne"
    TORSION = "Torsion"


def heart_position(s, x: Union[ExcBundle, CharVec], *,
                   declared_sheaf: bool = False) -> HeartPos:
    """Locate a sheaf class relative to the slope-s tilted heart.

    Positive-rank classes land in the heart when their slope exceeds s
    and need a single shift otherwise; rank-zero classes are torsion and
    always lie in the heart.  A bare character carries no torsion-freeness
    information, so plain CharVec input must be declared as the class of
    a slope-semistable sheaf by the caller.
    """
    if isinstance(x, ExcBundle):
        v = x.char
    else:
        if not declared_sheaf:
            raise ValueError(
                "torsion-freeness cannot be read off a character; "
                "pass declared_sheaf=True for a slope-semistable sheaf class")
        v = x
    if v.is_zero():
        raise ValueError("zero class has no heart position")
    if v.ch0 == 0:
        return HeartPos.TORSION
    if v.ch0 < 0:
        raise ValueError("sheaf classes have nonnegative rank")
    return HeartPos.IN_HEART if slope(v) > to_fraction(s) else HeartPos.NEEDS_SHIFT_ONE


def _heart_shift(s: Fraction, v: CharVec) -> int:
    pos = heart_position(s, v, declared_sheaf=True)
    return 1 if pos is HeartPos.NEEDS_SHIFT_ONE else 0


def to_upper(re, im) -> tuple[Fraction, Fraction, int]:
    """Flip a nonzero vector into the upper half (angle in (0, 1]).

    Returns (re', im', j) with (-1)^j * (re, im) = (re', im') and the
    flipped vector having positive imaginary part, or zero imaginary
    part with negative real part.
    """
    re = Fraction(re)
    im = Fraction(im)
    if re == 0 and im == 0:
        raise ValueError("zero vector has no direction")
    if im < 0 or (im == 0 and re > 0):
        return -re, -im, 1
    return re, im, 0


def _primitive(re: Fraction, im: Fraction) -> tuple[int, int]:
    k = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
    a, b = int(re * k), int(im * k)
    g = gcd(a, b)
    return a // g, b // g


@dataclass(frozen=True)
class Phase(object):
    """An exact phase k + a, with a in (0, 1] the angle of a direction.

    The direction (re, im) is stored as a primitive integer vector in
    the closed upper half-plane minus the positive real axis, so that
    its angle, measured in half-turns, lies in (0, 1].  The value of
    the phase is k plus that angle.  Comparisons are exact; the angle
    itself is only materialized approximately for display.
    """

    re: int
    im: int
    k: int = 0

    def __init__(self, re, im, k: int = 0):
        re = Fraction(re)
        im = Fraction(im)
        if re == 0 and im == 0:
            raise ValueError("zero vector has no phase")
        if im < 0 or (im == 0 and re > 0):
            raise ValueError("phase direction must lie in the upper half-plane")
        p, q = _primitive(re, im)
        object.__setattr__(self, "re", p)
        object.__setattr__(self, "im", q)
        object.__setattr__(self, "k", int(k))

    def value_direction(self) -> tuple[int, int]:
        """Direction of the underlying complex value, (-1)^k times stored."""
        if self.k % 2:
            return -self.re, -self.im
        return self.re, self.im

    def shifted(self, n: int) -> "Phase":
        return Phase(self.re, self.im, self.k + n)

    def exact_value(self) -> Optional[Fraction]:
        """The value as a rational, when the angle is a quarter multiple."""
        if self.im == 0:
            return Fraction(self.k + 1)
        if self.re == 0:
            return self.k + Fraction(1, 2)
        if self.re == -self.im:
            return self.k + Fraction(3, 4)
        if self.re == self.im:
            return self.k + Fraction(1, 4)
        return None

    def approx(self) -> float:
        return self.k + math.atan2(self.im, self.re) / math.pi

    def _angle_cmp(self, other: "Phase") -> int:
        if (self.re, self.im) == (other.re, other.im):
            return 0
        if self.im == 0:
            return 1
        if other.im == 0:
            return -1
        c = self.re * other.im - self.im * other.re
        return -1 if c > 0 else (1 if c < 0 else 0)

    def compare(self, other: "Phase") -> int:
        if self.k != other.k:
            return -1 if self.k < other.k else 1
        return self._angle_cmp(other)

    def __lt__(self, other: "Phase") -> bool:
        return self.compare(other) < 0

    def __le__(self, other: "Phase") -> bool:
        return self.compare(other) <= 0

    def __gt__(self, other: "Phase") -> bool:
        return self.compare(other) > 0

    def __ge__(self, other: "Phase") -> bool:
        return self.compare(other) >= 0

    def __str__(self) -> str:
        exact = self.exact_value()
        if exact is not None:
            return str(exact)
        return f"~{self.approx():.6f}"


class PhaseOrder(enum.Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def _phase_of(Z: SQCharge, x: ShiftedChar) -> Phase:
    z0 = z_eval(Z, x.char)
    if z0.is_zero():
        raise ValueError("class in kernel")
    h = _heart_shift(Z.s, x.char)
    u = -z0 if h % 2 else z0
    if u.im < 0 or (u.im == 0 and u.re > 0):
        raise ValueError("charge value falls outside the heart half-plane")
    return Phase(u.re, u.im, x.shift - h)


def phase(Z: SQCharge, x: ShiftedChar) -> Phase:
    """Exact phase of a heart object, a value in (0, 1].

    The shift must match the heart position of the underlying class:
    zero for classes already in the heart (including torsion), one for
    positive-rank classes of slope at most s.
    """
    if z_eval(Z, x.char).is_zero():
        raise ValueError("class in kernel")
    h = _heart_shift(Z.s, x.char)
    if x.shift != h:
        raise ValueError("shift inconsistent with the heart position")
    return _phase_of(Z, x)


def phase_less(Z: SQCharge, x: ShiftedChar, y: ShiftedChar) -> PhaseOrder:
    """Exact phase comparison of two shifted classes under one charge.

    Each homological shift adds one to the phase; the comparison itself
    reduces to integer ordering plus a cross-product sign, with no
    floating-point in the path.
    """
    c = _phase_of(Z, x).compare(_phase_of(Z, y))
    return PhaseOrder(c)


class StabResult(enum.Enum):
    STABLE_UNSHIFTED = "StableUnshifted"
    STABLE_SHIFTED = "StableShifted"
    NOT_STABLE = "NotStable"
    UNKNOWN = "Unknown"


def exc_stable_at(E: ExcBundle, P: AffPt, depth: int) -> StabResult:
    """Stability of an exceptional bundle at a geometric-region point.

    The criterion is that the half-open segment from the bundle's
    projected character to P stays inside the region.  When the slope
    of E exceeds the point's first coordinate the bundle itself is the
    stable object, otherwise its single shift is.  The refinement depth
    is raised to the label's own depth so the bundle's anchoring data
    is always present in the approximation.
    """
    if classify_point(P, depth) is not RegionClass.GEO_LP:
        raise ValueError("stability test requires a point in the geometric region")
    eff = max(depth, E.label.m)
    answer = geo_contains_segment(E.char.proj(), P, eff, exclude_a=True)
    if answer is GeoAnswer.UNKNOWN:
        return StabResult.UNKNOWN
    if answer is GeoAnswer.NO:
        return StabResult.NOT_STABLE
    if to_fraction(P.x) < E.slope:
        return StabResult.STABLE_UNSHIFTED
    return StabResult.STABLE_SHIFTED


@dataclass(frozen=True)
class KernelPoint:
    """A generator of the kernel line of a nondegenerate charge.

    The generator is scaled to a primitive integer vector whose first
    nonzero coordinate is positive.  When the rank coordinate is
    nonzero the kernel meets the affine (s, q) plane in a single point.
    """

    gen: CharVec

    @property
    def is_finite(self) -> bool:
        return self.gen.ch0 != 0

    def point(self) -> AffPt:
        if not self.is_finite:
            raise ValueError("kernel direction has rank zero: point at infinity")
        return self.gen.proj()


def _normalize_gen(c0: Fraction, c1: Fraction, c2: Fraction) -> CharVec:
    den = 1
    for f in (c0, c1, c2):
        den = den * f.denominator // gcd(den, f.denominator)
    ints = [int(f * den) for f in (c0, c1, c2)]
    g = gcd(gcd(abs(ints[0]), abs(ints[1])), abs(ints[2]))
    ints = [a // g for a in ints]
    for a in ints:
        if a:
            if a < 0:
                ints = [-b for b in ints]
            break
    return CharVec(*ints)


def kernel_point(Z: GeneralCharge) -> KernelPoint:
    """The kernel line of the charge, as a projective point.

    The real and imaginary parts of the coefficients form a 2 x 3 real
    matrix; nondegeneracy means rank two, and the kernel is spanned by
    the cross product of the rows.
    """
    row_re = (Z.w0.re, Z.w1.re, Z.w2.re)
    row_im = (Z.w0.im, Z.w1.im, Z.w2.im)
    k0 = row_re[1] * row_im[2] - row_re[2] * row_im[1]
    k1 = row_re[2] * row_im[0] - row_re[0] * row_im[2]
    k2 = row_re[0] * row_im[1] - row_re[1] * row_im[0]
    if k0 == 0 and k1 == 0 and k2 == 0:
        raise ValueError("degenerate charge: image lies in a real line")
    return KernelPoint(_normalize_gen(k0, k1, k2))


@dataclass(frozen=True)
class GLElement:
    """An orientation-preserving 2 x 2 matrix with a branch integer.

    The matrix acts on charge values (re, im); the branch integer picks
    the lift of the induced circle action to phases, pinned down by the
    convention that branch zero moves phases by less than a full turn
    upward from the base angle of the first column.
    """

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction
    k: int = 0

    def __init__(self, a, b, c, d, k: int = 0):
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))
        object.__setattr__(self, "c", Fraction(c))
        object.__setattr__(self, "d", Fraction(d))
        object.__setattr__(self, "k", int(k))
        if self.det <= 0:
            raise ValueError("matrix must preserve orientation")

    @property
    def det(self) -> Fraction:
        return self.a * self.d - self.b * self.c

    @classmethod
    def identity(cls) -> "GLElement":
        return cls(1, 0, 0, 1)

    @classmethod
    def rotation(cls, co, si, k: int = 0) -> "GLElement":
        """Rotation by a rational point (co, si) on the unit circle."""
        co = Fraction(co)
        si = Fraction(si)
        if co * co + si * si != 1:
            raise ValueError("rotation needs a rational point on the unit circle")
        return cls(co, -si, si, co, k)

    def act(self, z: RatComplex) -> RatComplex:
        return RatComplex(self.a * z.re + self.b * z.im,
                          self.c * z.re + self.d * z.im)

    def act_charge(self, Z: GeneralCharge) -> GeneralCharge:
        return GeneralCharge(self.act(Z.w0), self.act(Z.w1), self.act(Z.w2))


def normalize_charge(Z: GeneralCharge, depth: int
                     ) -> Optional[tuple[Fraction, Fraction, GLElement]]:
    """Recover the normal form of a nondegenerate charge, if it has one.

    The pair (s, q) is read directly off the kernel line rather than
    from any closed-form coordinate formula in the coefficients; the
    kernel computation settles the sign conventions unambiguously.  The
    charge is a transform of the normal-form charge at (s, q) exactly
    when that point is in the geometric region and the change of basis
    preserves orientation; the transform sends the normal form's values
    on (0,1,0) and (0,0,1) to this charge's, which forces the matrix
    columns to be -w2 and w1.
    """
    kp = kernel_point(Z)
    if not kp.is_finite:
        return None
    p = kp.point()
    if classify_point(p, depth) is not RegionClass.GEO_LP:
        return None
    s = to_fraction(p.x)
    q = to_fraction(p.y)
    det = Z.w1.re * Z.w2.im - Z.w1.im * Z.w2.re
    if det <= 0:
        return None
    g = GLElement(-Z.w2.re, Z.w1.re, -Z.w2.im, Z.w1.im)
    return s, q, g
