"""Depth-bounded exact construction of the Le Potier curve.

For each dyadic label the curve contributes a "tent": two line segments
descending from the half-discriminant parabola to the point one
rank-squared unit below the projected character.  Tents of distinct
labels occupy disjoint slope intervals, so a tent covering a queried
slope settles the classification there at every deeper refinement too.
Vertical exclusion segments hang from each projected character down to
the tent apex.  What can never be enumerated (labels deeper than the
budget) is handled by a discriminant threshold certificate or reported
as Unknown.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .corekit import AffPt, CharVec, ProjLine, Segment, to_fraction
from .exceptional import DyadicLabel, char_of, eplus, el, er, is_exceptional_char, slope_to_label
from .surd import Number, QuadReal, nsign

HALF = Fraction(1, 2)


def fib(n: int) -> int:
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def min_rank(depth: int) -> int:
    """Smallest rank among exceptional characters at exactly this depth."""
    return fib(2 * depth + 1)


def delta_safe(depth: int) -> Fraction:
    """Discriminant bound certifying clearance of all labels deeper than depth.

    A plane point with discriminant below this value lies strictly above
    the half-discriminant parabola (hence above every curve tent) and
    strictly above the top endpoint of every vertical exclusion whose
    label is deeper than the given depth, because such labels have rank
    at least min_rank(depth + 1).
    """
    r = min_rank(depth + 1)
    return HALF * (1 - Fraction(1, r * r))


def _nfloor(x: Number) -> int:
    if isinstance(x, QuadReal):
        if x.is_rational:
            return math.floor(x.as_fraction())
        lo, _ = x.isolating_interval()
        f = math.floor(lo)
        while f + 1 <= x:
            f += 1
        while f > x:
            f -= 1
        return f
    return math.floor(x)


def _nceil(x: Number) -> int:
    return -_nfloor(-x)


class RegionClass(enum.Enum):
    GEO_LP = "GeoLP"
    ON_EXCLUSION = "OnExclusion"
    ON_CURVE = "OnCurve"
    BELOW_CURVE = "BelowCurve"
    UNKNOWN = "Unknown"


class DlpResult(enum.Enum):
    YES_EXCEPTIONAL = "YesExceptional"
    YES = "Yes"
    NO = "No"
    UNKNOWN = "Unknown"


class GeoAnswer(enum.Enum):
    YES = "Yes"
    NO = "No"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class CurveSegment:
    """One straight piece of the curve, oriented left to right."""

    label: DyadicLabel
    side: str  # "left" or "right" of the label's apex
    start: AffPt
    end: AffPt
    line: ProjLine

    @property
    def x_lo(self) -> Number:
        return self.start.x

    @property
    def x_hi(self) -> Number:
        return self.end.x


@dataclass(frozen=True)
class ExclusionSegment:
    """The vertical segment from a projected character down to its tent apex."""

    label: DyadicLabel
    x: Fraction
    y_top: Fraction
    y_bottom: Fraction

    def covers_y(self, y: Number) -> bool:
        return self.y_bottom <= y <= self.y_top


@dataclass(frozen=True)
class Tent:
    """The two curve segments of one label, meeting at the apex below it."""

    label: DyadicLabel
    apex: AffPt
    left: CurveSegment
    right: CurveSegment

    @property
    def x_lo(self) -> Number:
        return self.left.start.x

    @property
    def x_hi(self) -> Number:
        return self.right.end.x

    def y_on(self, x: Number) -> Number:
        seg = self.left if x <= self.apex.x else self.right
        return seg.line.y_at(x)


@functools.cache
def _tent(label: DyadicLabel) -> Tent:
    apex = eplus(label)
    pl, pr = el(label), er(label)
    left_line = ProjLine.through(apex, char_of(label.left_neighbor()).proj())
    right_line = ProjLine.through(apex, char_of(label.right_neighbor()).proj())
    assert pl.delta() == HALF and pr.delta() == HALF, "parabola contact lost"
    assert HALF <= apex.delta() <= 1, "apex left the curve strip"
    assert left_line.contains(pl) and right_line.contains(pr), "contact point off its chord"
    left = CurveSegment(label, "left", pl, apex, left_line)
    right = CurveSegment(label, "right", apex, pr, right_line)
    return Tent(label, apex, left, right)


@functools.cache
def _exclusion(label: DyadicLabel) -> ExclusionSegment:
    c = char_of(label)
    e = c.proj()
    top = to_fraction(e.y)
    return ExclusionSegment(label, to_fraction(e.x), top, top - Fraction(1, c.ch0 ** 2))


def _labels_between(lo: int, hi: int, depth: int) -> list[DyadicLabel]:
    """All canonical labels with value in [lo, hi] and depth at most depth."""
    out = [DyadicLabel(n) for n in range(lo, hi + 1)]
    for m in range(1, depth + 1):
        step = 1 << m
        out.extend(DyadicLabel(p, m) for p in range(lo * step + 1, hi * step, 2))
    return out


@dataclass(frozen=True)
class CurveApprox:
    """All tents and exclusions of bounded depth over a slope window."""

    depth: int
    window: tuple[Fraction, Fraction]
    tents: tuple[Tent, ...]
    segments: tuple[CurveSegment, ...]
    exclusions: tuple[ExclusionSegment, ...]

    def covering_tent(self, x: Number) -> Optional[Tent]:
        """The unique tent whose closed slope span contains x, if any."""
        lo, hi = 0, len(self.tents)
        while lo < hi:
            mid = (lo + hi) // 2
            if self.tents[mid].apex.x <= x:
                lo = mid + 1
            else:
                hi = mid
        for t in self.tents[max(0, lo - 1):lo + 1]:
            if t.x_lo <= x <= t.x_hi:
                return t
        return None


@functools.lru_cache(maxsize=None)
def build_curve(depth: int, window: tuple[Fraction, Fraction]) -> CurveApprox:
    """Construct every tent and exclusion of depth <= depth near the window.

    The slope window is padded by one on each side so that tents whose
    apex falls slightly outside still appear when they can cover queried
    slopes inside.  Output is deterministic and sorted by apex slope.
    """
    if depth < 0:
        raise ValueError("negative depth")
    lo, hi = Fraction(window[0]), Fraction(window[1])
    if lo > hi:
        raise ValueError("empty window")
    labels = _labels_between(math.floor(lo - 1), math.ceil(hi + 1), depth)
    labels.sort(key=lambda l: to_fraction(char_of(l).proj().x))
    tents = tuple(_tent(l) for l in labels)
    for prev, cur in zip(tents, tents[1:]):
        assert prev.x_hi < cur.x_lo, "tent spans overlap"
    segments = tuple(s for t in tents for s in (t.left, t.right))
    exclusions = tuple(_exclusion(l) for l in labels)
    return CurveApprox(depth, (lo, hi), tents, segments, exclusions)


def _cell_curve(x: Number, depth: int) -> CurveApprox:
    n = _nfloor(x)
    return build_curve(depth, (Fraction(n), Fraction(n + 1)))


def classify_point(p: AffPt, depth: int) -> RegionClass:
    """Locate a plane point relative to the curve and the exclusion segments.

    Above the strip the only question is membership in an exclusion
    segment; inside the strip the covering tent (when one exists at this
    depth) settles the answer for good, and uncovered strip slopes
    remain Unknown because deeper tents accumulate there.
    """
    d = p.delta()
    if d < HALF:
        hit = _exclusion_at(p, depth)
        return RegionClass.ON_EXCLUSION if hit else RegionClass.GEO_LP
    if d > 1:
        return RegionClass.BELOW_CURVE
    tent = _cell_curve(p.x, depth).covering_tent(p.x)
    if tent is None:
        return RegionClass.UNKNOWN
    yt = tent.y_on(p.x)
    if p.y == yt:
        return RegionClass.ON_CURVE
    if p.y < yt:
        return RegionClass.BELOW_CURVE
    if p.x == tent.apex.x and p.y <= _exclusion(tent.label).y_top:
        return RegionClass.ON_EXCLUSION
    return RegionClass.GEO_LP


def _exclusion_at(p: AffPt, depth: int) -> bool:
    if isinstance(p.x, QuadReal) and not p.x.is_rational:
        return False
    label = slope_to_label(to_fraction(p.x), depth)
    return label is not None and _exclusion(label).covers_y(p.y)


def dlp_exists(v: CharVec, depth: int) -> DlpResult:
    """Whether a semistable sheaf with this positive-rank character exists."""
    if v.ch0 <= 0:
        raise ValueError("existence test requires positive rank")
    if is_exceptional_char(v, depth):
        return DlpResult.YES_EXCEPTIONAL
    cls = classify_point(v.proj(), depth)
    if cls in (RegionClass.BELOW_CURVE, RegionClass.ON_CURVE):
        return DlpResult.YES
    if cls is RegionClass.UNKNOWN:
        return DlpResult.UNKNOWN
    return DlpResult.NO


def geo_contains_segment(a: AffPt, b: AffPt, depth: int,
                         exclude_a: bool = False) -> GeoAnswer:
    """Decide whether the segment from a to b stays in the open region.

    The region consists of points strictly above the curve and off every
    exclusion segment.  With exclude_a the endpoint a itself is allowed
    to sit on an exclusion or on the curve (half-open segment).
    """
    if a == b:
        raise ValueError("degenerate segment")
    if a.delta() <= 0 and b.delta() <= 0:
        return _contains_fast(a, b, exclude_a)
    return _contains_general(a, b, depth, exclude_a)


def _contains_fast(a: AffPt, b: AffPt, exclude_a: bool) -> GeoAnswer:
    """Nonpositive discriminant at both ends: only integer apexes obstruct.

    Discriminant is convex along the segment, so it stays nonpositive;
    such points are above the curve and can only meet an exclusion at
    its top endpoint on the zero-discriminant parabola, which happens at
    rank one, i.e. at integer slopes n with height n^2/2.
    """
    seg = Segment(a, b, include_a=not exclude_a, include_b=True)
    x0, x1 = seg.x_range()
    for n in range(_nceil(x0), _nfloor(x1) + 1):
        if seg.contains(AffPt(Fraction(n), Fraction(n * n, 2))):
            return GeoAnswer.NO
    return GeoAnswer.YES


def _delta_along(line: ProjLine, x: Number) -> Number:
    return x * x * HALF - line.y_at(x)


def _contains_general(a: AffPt, b: AffPt, depth: int, exclude_a: bool) -> GeoAnswer:
    try:
        ax, ay = to_fraction(a.x), to_fraction(a.y)
        bx, by = to_fraction(b.x), to_fraction(b.y)
    except ValueError:
        raise ValueError("strip analysis supports rational endpoints only") from None
    if a.delta() > 1 or b.delta() > 1:
        return GeoAnswer.NO
    safe = delta_safe(depth)
    if ax == bx:
        return _contains_vertical(ax, a, b, depth, exclude_a, safe)

    (x0, y0), (x1, y1) = sorted(((ax, ay), (bx, by)))
    line = ProjLine.through(AffPt(x0, y0), AffPt(x1, y1))
    approx = build_curve(depth, (Fraction(_nfloor(x0)), Fraction(_nceil(x1))))

    for exc in approx.exclusions:
        if x0 <= exc.x <= x1 and exc.covers_y(line.y_at(exc.x)):
            if exclude_a and exc.x == ax:
                continue
            return GeoAnswer.NO

    unknown = False
    allowed = ax if exclude_a else None
    for lo, hi in _risky_tails(line, x0, x1, safe):
        verdict, unk = _walk_strip(line, approx, lo, hi, safe, allowed)
        if verdict is not None:
            return verdict
        unknown = unknown or unk
    return GeoAnswer.UNKNOWN if unknown else GeoAnswer.YES


def _rational_bounds(x: QuadReal) -> tuple[Fraction, Fraction]:
    if x.is_rational:
        v = x.as_fraction()
        return v, v
    return x.isolating_interval()


def _risky_tails(line: ProjLine, x0: Fraction, x1: Fraction,
                 safe: Fraction) -> list[tuple[Fraction, Fraction]]:
    """Rational cover of the slopes where the segment's discriminant >= safe.

    Everywhere else the segment clears the whole infinite-depth curve at
    once, leaving at most two end stretches to compare tent by tent.
    """
    beta = -line.c1 / line.c2
    alpha = -line.c0 / line.c2
    disc = beta * beta + 2 * (alpha + safe)
    if disc <= 0:
        return [(x0, x1)]
    root = QuadReal(0, 1, disc.numerator * disc.denominator) / disc.denominator
    eps = Fraction(1, 10 ** 30)
    _, hi1 = _rational_bounds(QuadReal(beta) - root)
    lo2, _ = _rational_bounds(QuadReal(beta) + root)
    left_end = min(hi1 + eps, x1)
    right_start = max(lo2 - eps, x0)
    tails = []
    if x0 <= left_end:
        tails.append((x0, left_end))
    if right_start <= x1:
        tails.append((right_start, x1))
    if len(tails) == 2 and tails[0][1] >= tails[1][0]:
        return [(x0, x1)]
    return tails


def _walk_strip(line: ProjLine, approx: CurveApprox, lo: Fraction, hi: Fraction,
                safe: Fraction, allowed_touch_x) -> tuple[Optional[GeoAnswer], bool]:
    """Compare the segment against tents and gap certificates over [lo, hi]."""
    unknown = False
    cursor: Number = lo
    for tent in approx.tents:
        if tent.x_hi < lo:
            continue
        if tent.x_lo > hi:
            break
        s = tent.x_lo if tent.x_lo > lo else lo
        h = tent.x_hi if tent.x_hi < hi else hi
        if cursor < s and not _gap_safe(line, cursor, s, safe):
            unknown = True
        for sub_lo, sub_hi, seg in ((s, min(tent.apex.x, h), tent.left),
                                    (max(tent.apex.x, s), h, tent.right)):
            if sub_lo > sub_hi:
                continue
            verdict = _above_tent(line, seg.line, sub_lo, sub_hi, allowed_touch_x)
            if verdict is not None:
                return verdict, unknown
        cursor = h
    if cursor < hi and not _gap_safe(line, cursor, hi, safe):
        unknown = True
    return None, unknown


def _above_tent(line: ProjLine, tent_line: ProjLine, lo: Number, hi: Number,
                allowed_touch_x) -> Optional[GeoAnswer]:
    """No when the segment fails to stay strictly above a tent chord.

    The difference of two lines is linear, so positivity at both ends of
    the shared slope interval is conclusive.  A zero at one end is
    tolerated only at the half-open endpoint's slope.
    """
    for x in (lo, hi):
        sign = nsign(line.y_at(x) - tent_line.y_at(x))
        if sign < 0:
            return GeoAnswer.NO
        if sign == 0 and not (allowed_touch_x is not None and x == allowed_touch_x):
            return GeoAnswer.NO
    return None


def _gap_safe(line: ProjLine, lo: Number, hi: Number, bound: Fraction) -> bool:
    """Certify a tent-free slope stretch by the discriminant threshold.

    Discriminant along a line is convex in the slope coordinate, so the
    two endpoint values bound it over the whole stretch.
    """
    return _delta_along(line, lo) < bound and _delta_along(line, hi) < bound


def _contains_vertical(x: Fraction, a: AffPt, b: AffPt, depth: int,
                       exclude_a: bool, safe: Fraction) -> GeoAnswer:
    ay, by = to_fraction(a.y), to_fraction(b.y)
    y_lo, y_hi = min(ay, by), max(ay, by)
    label = slope_to_label(x, depth)
    if label is not None:
        exc = _exclusion(label)
        o_lo, o_hi = max(y_lo, exc.y_bottom), min(y_hi, exc.y_top)
        if o_lo <= o_hi and not (exclude_a and o_lo == o_hi == ay):
            return GeoAnswer.NO
    tent = _cell_curve(x, depth).covering_tent(x)
    if tent is not None:
        yt = tent.y_on(x)
        if y_lo < yt:
            return GeoAnswer.NO
        if y_lo == yt and not (exclude_a and ay == y_lo):
            return GeoAnswer.NO
        return GeoAnswer.YES
    # uncovered slope: the lower endpoint carries the largest discriminant
    if x * x * HALF - y_lo < safe:
        return GeoAnswer.YES
    return GeoAnswer.UNKNOWN
