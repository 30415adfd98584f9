"""Exceptional bundle characters indexed by dyadic rationals.

Integer labels carry the line bundle characters (1, n, n^2/2).  A label
p/2^m with odd p is filled in from its two half-depth neighbours by a
three-term recursion; each resulting character c satisfies the
exceptionality identity euler_chi(c, c) = 1 and the closed-form
discriminant (1/2)(1 - 1/ch0^2).
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass
from fractions import Fraction

from .corekit import AffPt, CharVec, delta, euler_chi, slope
from .surd import QuadReal


class DyadicLabel:
    """An index p / 2^m, stored in lowest terms (m == 0 or p odd)."""

    __slots__ = ("p", "m")

    def __init__(self, p: int, m: int = 0):
        if m < 0:
            raise ValueError("negative dyadic depth")
        while m > 0 and p % 2 == 0:
            p //= 2
            m -= 1
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "m", m)

    def __setattr__(self, name, value):
        raise AttributeError("DyadicLabel is immutable")

    @classmethod
    def from_value(cls, value: Fraction | int) -> "DyadicLabel":
        value = Fraction(value)
        den = value.denominator
        m = den.bit_length() - 1
        if 1 << m != den:
            raise ValueError(f"not a dyadic rational: {value}")
        return cls(value.numerator, m)

    @classmethod
    def parse(cls, text: str) -> "DyadicLabel":
        return cls.from_value(Fraction(text.strip()))

    @property
    def value(self) -> Fraction:
        return Fraction(self.p, 1 << self.m)

    def ulp(self) -> Fraction:
        """The step 1 / 2^m at this label's own depth."""
        return Fraction(1, 1 << self.m)

    def shift(self, k: int) -> "DyadicLabel":
        return DyadicLabel(self.p + k * (1 << self.m), self.m)

    def left_neighbor(self) -> "DyadicLabel":
        return DyadicLabel(self.p - 1, self.m)

    def right_neighbor(self) -> "DyadicLabel":
        return DyadicLabel(self.p + 1, self.m)

    def __eq__(self, other):
        return isinstance(other, DyadicLabel) and self.p == other.p and self.m == other.m

    def __lt__(self, other: "DyadicLabel") -> bool:
        return self.value < other.value

    def __le__(self, other: "DyadicLabel") -> bool:
        return self.value <= other.value

    def __hash__(self):
        return hash((self.p, self.m))

    def __str__(self) -> str:
        v = self.value
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"

    def __repr__(self) -> str:
        return f"DyadicLabel({self})"


@functools.cache
def char_of(label: DyadicLabel) -> CharVec:
    """The character of the exceptional bundle at a dyadic label."""
    if label.m == 0:
        n = label.p
        return CharVec(1, n, Fraction(n * n, 2))
    p, m = label.p, label.m
    if p % 4 == 3:
        helper = char_of(DyadicLabel(p + 1, m))
        base = char_of(DyadicLabel(p - 1, m))
        far = char_of(DyadicLabel(p - 3, m))
    else:
        helper = char_of(DyadicLabel(p - 1, m))
        base = char_of(DyadicLabel(p + 1, m))
        far = char_of(DyadicLabel(p + 3, m))
    k = 3 * helper.ch0
    return k * base - far


def twist(label: DyadicLabel, k: int) -> CharVec:
    """Character after tensoring by the k-th power line bundle."""
    c = char_of(label)
    return CharVec(c.ch0,
                   c.ch1 + k * c.ch0,
                   c.ch2 + k * c.ch1 + Fraction(k * k, 2) * c.ch0)


@dataclass(frozen=True)
class ExcBundle:
    """A label together with its character; invariants checked on build."""

    label: DyadicLabel
    char: CharVec

    @classmethod
    def of(cls, label: DyadicLabel | int | str | Fraction) -> "ExcBundle":
        if isinstance(label, str):
            label = DyadicLabel.parse(label)
        elif not isinstance(label, DyadicLabel):
            label = DyadicLabel.from_value(label)
        c = char_of(label)
        assert c.ch0 > 0, "exceptional rank must be positive"
        assert euler_chi(c, c) == 1, "exceptionality pairing failed"
        assert delta(c) == Fraction(1, 2) * (1 - Fraction(1, c.ch0 ** 2)), \
            "closed-form discriminant failed"
        return cls(label, c)

    @property
    def rank(self) -> Fraction:
        return self.char.ch0

    @property
    def slope(self) -> Fraction:
        return slope(self.char)


@functools.cache
def eplus(label: DyadicLabel) -> AffPt:
    """The point one rank-squared unit below the projected character."""
    c = char_of(label)
    e = c.proj()
    return AffPt(e.x, e.y - Fraction(1, c.ch0 ** 2))


def _parabola_cross(p1: AffPt, p2: AffPt) -> AffPt:
    """The intersection of the open segment p1-p2 with y = x^2/2 - 1/2.

    p1 sits strictly below the parabola and p2 strictly above, so exactly
    one root of the quadratic lands inside the segment; the root is kept
    exact as a QuadReal.
    """
    x1, y1 = Fraction(p1.x), Fraction(p1.y)
    x2, y2 = Fraction(p2.x), Fraction(p2.y)
    t = (y2 - y1) / (x2 - x1)
    # x^2 - 2 t x + (2 t x1 - 2 y1 - 1) = 0
    half_disc = t * t - 2 * t * x1 + 2 * y1 + 1
    assert half_disc > 0, "segment does not cross the parabola"
    root = QuadReal(0, 1, half_disc.denominator * half_disc.numerator) / half_disc.denominator
    lo, hi = (x1, x2) if x1 < x2 else (x2, x1)
    candidates = [QuadReal(t) + root, QuadReal(t) - root]
    inside = [x for x in candidates if lo < x < hi]
    assert len(inside) == 1, "expected exactly one crossing inside the segment"
    x = inside[0]
    y = x * x * Fraction(1, 2) - Fraction(1, 2)
    return AffPt(x, y)


@functools.cache
def el(label: DyadicLabel) -> AffPt:
    """Contact point on the discriminant-1/2 parabola toward the left neighbour."""
    nb = char_of(label.left_neighbor()).proj()
    return _parabola_cross(eplus(label), nb)


@functools.cache
def er(label: DyadicLabel) -> AffPt:
    """Contact point on the discriminant-1/2 parabola toward the right neighbour."""
    nb = char_of(label.right_neighbor()).proj()
    return _parabola_cross(eplus(label), nb)


class TriplePattern(enum.Enum):
    ADJACENT = "adjacent"
    RIGHT_EXTENDED = "right-extended"
    LEFT_EXTENDED = "left-extended"


def _pattern_labels(pattern: TriplePattern, base: DyadicLabel) -> tuple[DyadicLabel, DyadicLabel, DyadicLabel]:
    left, right = base.left_neighbor(), base.right_neighbor()
    if pattern is TriplePattern.ADJACENT:
        return left, base, right
    if pattern is TriplePattern.RIGHT_EXTENDED:
        return base, right, left.shift(3)
    return right.shift(-3), left, base


@dataclass(frozen=True)
class ExcTriple:
    """Three exceptional bundles in one of the standard label patterns."""

    E1: ExcBundle
    E2: ExcBundle
    E3: ExcBundle
    pattern: TriplePattern
    base: DyadicLabel

    @property
    def labels(self) -> tuple[DyadicLabel, DyadicLabel, DyadicLabel]:
        return (self.E1.label, self.E2.label, self.E3.label)

    @property
    def chars(self) -> tuple[CharVec, CharVec, CharVec]:
        return (self.E1.char, self.E2.char, self.E3.char)


def triple_from(pattern: TriplePattern, base: DyadicLabel) -> ExcTriple:
    """Build the triple for a pattern at a base label.

    Integer bases collapse all three patterns onto consecutive integer
    labels; those triples are normalized to the adjacent pattern so each
    constructed triple carries exactly one canonical tag.
    """
    labels = _pattern_labels(pattern, base)
    if base.m == 0 and pattern is not TriplePattern.ADJACENT:
        mid = labels[1]
        return triple_from(TriplePattern.ADJACENT, mid)
    b1, b2, b3 = (ExcBundle.of(l) for l in labels)
    c1, c2, c3 = b1.char, b2.char, b3.char
    assert labels[0] < labels[1] < labels[2], "triple labels out of order"
    assert euler_chi(c2, c1) == 0 and euler_chi(c3, c1) == 0 and euler_chi(c3, c2) == 0, \
        "pairing does not vanish on the triple"
    from .corekit import det3
    assert abs(det3(c1, c2, c3)) == 1, "triple characters are not unimodular"
    return ExcTriple(b1, b2, b3, pattern, base)


def detect_triple(l1: DyadicLabel, l2: DyadicLabel, l3: DyadicLabel) -> ExcTriple | None:
    """Recognize an ordered label triple as one of the standard patterns."""
    for pattern, base in ((TriplePattern.ADJACENT, l2),
                          (TriplePattern.RIGHT_EXTENDED, l1),
                          (TriplePattern.LEFT_EXTENDED, l3)):
        if _pattern_labels(pattern, base) == (l1, l2, l3):
            return triple_from(pattern, base)
    return None


def slope_to_label(mu: Fraction, max_m: int) -> DyadicLabel | None:
    """Invert the label-to-slope map by monotone bisection, if possible.

    The slope map fixes integers and is strictly increasing, so a target
    slope in (n, n+1) is chased down the dyadic midpoint tree until the
    depth budget runs out.
    """
    mu = Fraction(mu)
    if mu.denominator == 1:
        return DyadicLabel(mu.numerator)
    import math
    n = math.floor(mu)
    lo, hi = DyadicLabel(n), DyadicLabel(n + 1)
    for _ in range(max_m):
        mid = DyadicLabel.from_value((lo.value + hi.value) / 2)
        s = slope(char_of(mid))
        if s == mu:
            return mid
        if s < mu:
            lo = mid
        else:
            hi = mid
    return None


def is_exceptional_char(v: CharVec, max_m: int) -> bool:
    """Whether v is a positive rational multiple of some label's character."""
    if v.ch0 <= 0:
        return False
    lbl = slope_to_label(v.ch1 / v.ch0, max_m)
    if lbl is None:
        return False
    c = char_of(lbl)
    return (v.ch0 / c.ch0) * c == v


def _label_of_char(c: CharVec, max_m: int) -> DyadicLabel:
    lbl = slope_to_label(slope(c), max_m)
    if lbl is None or char_of(lbl) != c:
        raise ValueError("mutation result is not an exceptional character")
    return lbl


def _rebuild(old: ExcTriple, chars: tuple[CharVec, CharVec, CharVec]) -> ExcTriple:
    depth = max(l.m for l in old.labels) + 2
    labels = tuple(_label_of_char(c, depth) for c in chars)
    out = detect_triple(*labels)
    if out is None:
        raise ValueError("mutated labels do not form a standard triple pattern")
    assert out.chars == chars, "mutated characters disagree with labels"
    return out


def mutate_left(t: ExcTriple, slot: int = 2) -> ExcTriple:
    """Left mutation at positions (slot, slot+1).

    The default acts on the last two slots, (E1, E2, E3) -> (E1, L, E2),
    where the new character is chi(E2, E3) * v(E2) - v(E3); slot 1 acts
    on the first pair the same way.
    """
    c1, c2, c3 = t.chars
    if slot == 2:
        middle = euler_chi(c2, c3) * c2 - c3
        return _rebuild(t, (c1, middle, c2))
    if slot == 1:
        first = euler_chi(c1, c2) * c1 - c2
        return _rebuild(t, (first, c1, c3))
    raise ValueError("mutation slot must be 1 or 2")


def mutate_right(t: ExcTriple, slot: int = 2) -> ExcTriple:
    """Right mutation at positions (slot, slot+1); inverse of mutate_left.

    The default acts on the last two slots, (E1, E2, E3) -> (E1, E3, R),
    where the new character is chi(E2, E3) * v(E3) - v(E2).
    """
    c1, c2, c3 = t.chars
    if slot == 2:
        last = euler_chi(c2, c3) * c3 - c2
        return _rebuild(t, (c1, c3, last))
    if slot == 1:
        second = euler_chi(c1, c2) * c2 - c1
        return _rebuild(t, (c2, second, c3))
    raise ValueError("mutation slot must be 1 or 2")
