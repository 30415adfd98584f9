"""The six-parameter chart of stability conditions built on a triple.

A point of the chart assigns each bundle of an exceptional triple a
nonzero central-charge value together with a phase branch.  This module
validates chart parameters, reconstructs the underlying charge,
constructs the triangle and pentagon membership polygons, classifies a
parameter point into its cell (geometric head, two legs, or pure tail),
realizes the universal-cover group action on parameters with exact
branch bookkeeping, and transports plus-leg points to the chart of the
left-mutated triple and back.

Exactness convention: a phase is entered as an integer branch plus a
rational point on the unit circle lying in the upper half-plane, so the
phase value is branch + angle with the angle in (0, 1].  Charge values
are then rational complex pairs and every comparison in the classifier
is exact.  Floating-point phases are accepted through a rationalizing
constructor for convenience.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .corekit import (CharVec, Polygon, det3, euler_chi,
                      parse_rational, point_in_polygon)
from .exceptional import ExcTriple, eplus, mutate_left, mutate_right
from .geometric import (GeneralCharge, GLElement, KernelPoint, Phase,
                        RatComplex, ShiftedChar, kernel_point, to_upper)
from .lepotier import RegionClass, classify_point
from .surd import QuadReal


def _in_upper(re: Fraction, im: Fraction) -> bool:
    return im > 0 or (im == 0 and re < 0)


@dataclass(frozen=True)
class ThetaParams:
    """Chart parameters: three charge values with phase branches.

    Slot j holds the exact complex value z_j of the charge on the j-th
    bundle and the integer branch k_j; the phase of the slot is
    k_j + a_j with a_j in (0, 1] the angle of (-1)**k_j * z_j, which
    must therefore lie in the closed upper half-plane minus the
    positive real axis.  Magnitudes and phases are derived views; the
    stored data stays rational under the group action and transport.
    """

    z1: RatComplex
    z2: RatComplex
    z3: RatComplex
    k1: int = 0
    k2: int = 0
    k3: int = 0

    def __post_init__(self):
        for z, k in self.slots():
            if z.is_zero():
                continue
            u = -z if k % 2 else z
            if not _in_upper(u.re, u.im):
                raise ValueError("branch parity inconsistent with the value direction")

    @classmethod
    def from_units(cls, ms: Sequence, units: Sequence[tuple], branches: Sequence[int]
                   ) -> "ThetaParams":
        """Build from magnitudes, upper half-plane unit pairs, and branches.

        The phase of slot j is branches[j] plus the angle of units[j],
        so the value is ms[j] * (-1)**branches[j] * units[j].
        """
        zs = []
        for m, (c, s), k in zip(ms, units, branches):
            m = Fraction(m)
            if m < 0:
                raise ValueError("magnitude must be nonnegative")
            c = Fraction(c)
            s = Fraction(s)
            if c * c + s * s != 1:
                raise ValueError("exact phase needs a rational point on the unit circle")
            if not _in_upper(c, s):
                raise ValueError("unit vector must lie in the upper half-plane")
            sign = -1 if k % 2 else 1
            zs.append(RatComplex(sign * m * c, sign * m * s))
        return cls(zs[0], zs[1], zs[2], int(branches[0]), int(branches[1]), int(branches[2]))

    @classmethod
    def from_floats(cls, ms: Sequence[float], phis: Sequence[float],
                    max_den: int = 10 ** 6) -> "ThetaParams":
        """Rationalize floating magnitudes and phases to a nearby exact point.

        The unit vector for each phase is produced by the half-angle
        substitution, which gives an exact rational point on the unit
        circle close to the requested angle.
        """
        units = []
        branches = []
        for phi in phis:
            k = math.ceil(phi) - 1
            a = phi - k
            if a == 1.0:
                units.append((-1, 0))
            else:
                t = math.tan(math.pi * a / 2)
                th = Fraction(t).limit_denominator(max_den)
                if th <= 0:
                    th = Fraction(1, max_den)
                c = (1 - th * th) / (1 + th * th)
                s = 2 * th / (1 + th * th)
                units.append((c, s))
            branches.append(k)
        mq = [Fraction(str(m)) for m in ms]
        return cls.from_units(mq, units, branches)

    def slots(self) -> tuple[tuple[RatComplex, int], ...]:
        return ((self.z1, self.k1), (self.z2, self.k2), (self.z3, self.k3))

    def values(self) -> tuple[RatComplex, RatComplex, RatComplex]:
        return (self.z1, self.z2, self.z3)

    def phases(self) -> tuple[Phase, Phase, Phase]:
        out = []
        for z, k in self.slots():
            if z.is_zero():
                raise ValueError("zero value has no phase")
            u = -z if k % 2 else z
            out.append(Phase(u.re, u.im, k))
        return tuple(out)

    def magnitudes(self) -> tuple[QuadReal, QuadReal, QuadReal]:
        out = []
        for z, _ in self.slots():
            n = z.re * z.re + z.im * z.im
            d = n.denominator
            out.append(QuadReal(0, Fraction(1, d), n.numerator * d))
        return tuple(out)

    def to_json(self) -> dict:
        return {
            "z": [[str(z.re), str(z.im)] for z in self.values()],
            "k": [self.k1, self.k2, self.k3],
        }

    @classmethod
    def from_json(cls, data: dict) -> "ThetaParams":
        zs = [RatComplex(parse_rational(re), parse_rational(im)) for re, im in data["z"]]
        ks = [int(k) for k in data["k"]]
        return cls(zs[0], zs[1], zs[2], ks[0], ks[1], ks[2])


def validate_params(p: ThetaParams) -> bool:
    """Check positivity of magnitudes and the phase ordering constraints.

    The constraints are strict ascending phases with the outer gap
    exceeding one; all comparisons are exact.
    """
    if any(z.is_zero() for z in p.values()):
        return False
    f1, f2, f3 = p.phases()
    return f1 < f2 < f3 and f1.shifted(1) < f3


def charge_from_params(t: ExcTriple, p: ThetaParams) -> GeneralCharge:
    """The unique charge taking the prescribed values on the triple.

    The three characters form a basis of the character lattice (their
    determinant is a unit), so the real and imaginary parts of the
    coefficients each solve a rational 3 x 3 linear system.
    """
    if not validate_params(p):
        raise ValueError("invalid chart parameters")
    c1, c2, c3 = t.chars
    d = det3(c1, c2, c3)
    assert d != 0, "triple characters must form a basis"
    re = _solve3(c1, c2, c3, tuple(z.re for z in p.values()), d)
    im = _solve3(c1, c2, c3, tuple(z.im for z in p.values()), d)
    return GeneralCharge(w0=RatComplex(re[0], im[0]),
                         w1=RatComplex(re[1], im[1]),
                         w2=RatComplex(re[2], im[2]))


def _solve3(c1: CharVec, c2: CharVec, c3: CharVec,
            rhs: tuple[Fraction, Fraction, Fraction], d: Fraction
            ) -> tuple[Fraction, Fraction, Fraction]:
    def repl(i: int, c: CharVec, r: Fraction) -> CharVec:
        parts = [c.ch0, c.ch1, c.ch2]
        parts[i] = r
        return CharVec(*parts)

    out = []
    for i in range(3):
        di = det3(repl(i, c1, rhs[0]), repl(i, c2, rhs[1]), repl(i, c3, rhs[2]))
        out.append(di / d)
    return tuple(out)


def tr_polygon(t: ExcTriple) -> Polygon:
    """The triangle on the three projected characters.

    The two lower edges belong to the region, the top edge and all
    three vertices do not.
    """
    e1, e2, e3 = (b.char.proj() for b in (t.E1, t.E2, t.E3))
    return Polygon((e1, e2, e3),
                   edge_included=(True, True, False),
                   vertex_included=(False, False, False))


def mz_polygon(t: ExcTriple) -> Polygon:
    """The open pentagon bounding the chart's geometric head.

    Counterclockwise vertices: the first character's projection, its
    dropped point, the middle projection, the last character's dropped
    point, and the last projection.  No edge or vertex belongs to the
    region.
    """
    e1, e2, e3 = (b.char.proj() for b in (t.E1, t.E2, t.E3))
    p1 = eplus(t.E1.label)
    p3 = eplus(t.E3.label)
    return Polygon((e1, p1, e2, p3, e3),
                   edge_included=(False,) * 5,
                   vertex_included=(False,) * 5)


class CellLabel(enum.Enum):
    GEO_CELL = "GeoCell"
    PLUS_LEG = "PlusLeg"
    MINUS_LEG = "MinusLeg"
    PURE_CELL = "PureCell"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class CellReport:
    """Classification outcome with its supporting evidence."""

    label: CellLabel
    depth: int
    kernel: Optional[KernelPoint] = None
    reason: str = ""


def classify_cell(t: ExcTriple, p: ThetaParams, depth: int) -> CellLabel:
    return classify_cell_report(t, p, depth).label


def classify_cell_report(t: ExcTriple, p: ThetaParams, depth: int) -> CellReport:
    """Assign the parameter point to its cell of the chart.

    Order of decision: the pure tail is recognized first from the two
    phase gaps (this also collects every degenerate charge, since
    collinear values force integer gaps); otherwise the charge is
    reconstructed and the geometric head is certified by its kernel
    point lying inside the open pentagon, inside the geometric region,
    with positive orientation.  Failing that, the small outer gap picks
    the leg.  The outcome is unknown only when the region test at this
    depth is.
    """
    if not validate_params(p):
        raise ValueError("invalid chart parameters")
    f1, f2, f3 = p.phases()
    gap12_ge1 = f1.shifted(1) <= f2
    gap23_ge1 = f2.shifted(1) <= f3
    if gap12_ge1 and gap23_ge1:
        return CellReport(CellLabel.PURE_CELL, depth,
                          reason="both phase gaps are at least one")
    Z = charge_from_params(t, p)
    kp = kernel_point(Z)
    reason = ""
    if not kp.is_finite:
        reason = "kernel line has rank zero"
    else:
        pt = kp.point()
        if not point_in_polygon(pt, mz_polygon(t)):
            reason = "kernel point outside the open pentagon"
        else:
            region = classify_point(pt, depth)
            if region is RegionClass.UNKNOWN:
                return CellReport(CellLabel.UNKNOWN, depth, kp,
                                  "region test undecided at this depth")
            if region is not RegionClass.GEO_LP:
                reason = "kernel point not in the geometric region"
            elif Z.w1.re * Z.w2.im - Z.w1.im * Z.w2.re <= 0:
                reason = "orientation determinant not positive"
            else:
                return CellReport(CellLabel.GEO_CELL, depth, kp,
                                  "kernel point in the pentagon and region")
    if not gap23_ge1:
        return CellReport(CellLabel.PLUS_LEG, depth, kp,
                          reason + "; upper phase gap below one")
    if not gap12_ge1:
        return CellReport(CellLabel.MINUS_LEG, depth, kp,
                          reason + "; lower phase gap below one")
    raise AssertionError("unreachable: non-pure point with both gaps at least one")


def stable_set_pure(t: ExcTriple) -> tuple[ShiftedChar, ShiftedChar, ShiftedChar]:
    """Generators of the stable objects over the pure tail.

    Every stable object there is an integer shift of one of the three
    bundles; the returned classes are the shift-zero generators.
    """
    return (ShiftedChar(t.E1.char, 0),
            ShiftedChar(t.E2.char, 0),
            ShiftedChar(t.E3.char, 0))


def _ang2_phase(z: RatComplex) -> Phase:
    """The direction of a value as a phase in [0, 2)."""
    re, im, j = to_upper(z.re, z.im)
    if j == 0:
        return Phase(re, im, 0)
    if im == 0:
        return Phase(re, im, -1)
    return Phase(re, im, 1)


def _base_angle(g: GLElement) -> Phase:
    return _ang2_phase(g.act(RatComplex(1, 0)))


def gl_act(g: GLElement, p: ThetaParams) -> ThetaParams:
    """Act on chart parameters by a universal-cover element.

    Values transform by the matrix; each branch is recomputed from the
    canonical lift of the induced phase action, pinned so that branch
    zero sends the phase of the positive real direction into [0, 2),
    then offset by two per unit of the element's own branch (a full
    turn adds two to every phase).  Phase gaps relative to integers are
    preserved, so validity is preserved.
    """
    psi0 = _base_angle(g)
    new_z = []
    new_k = []
    for z, k in p.slots():
        if z.is_zero():
            raise ValueError("cannot act on a zero value")
        w = g.act(z)
        u = -z if k % 2 else z
        wu = g.act(u)
        cand = _ang2_phase(wu)
        lo = psi0
        hi = psi0.shifted(1)
        if not (lo < cand <= hi):
            cand = cand.shifted(2)
        assert lo < cand <= hi, "lift window missed"
        new_z.append(w)
        new_k.append(k + 2 * g.k + cand.k)
    return ThetaParams(new_z[0], new_z[1], new_z[2],
                       new_k[0], new_k[1], new_k[2])


def gl_inverse(g: GLElement) -> GLElement:
    """The inverse element, with the branch that undoes the lift.

    Composing the canonical lifts of a matrix and its inverse gives a
    full turn unless the matrix fixes the positive real direction, in
    which case it gives the identity; the branch compensates.
    """
    det = g.det
    base = _base_angle(g)
    delta = 0 if base.exact_value() == 0 else 1
    return GLElement(g.d / det, -g.b / det, -g.c / det, g.a / det,
                     -g.k - delta)


def transport_plus_leg(t: ExcTriple, p: ThetaParams, depth: int
                       ) -> tuple[ExcTriple, ThetaParams]:
    """Carry a plus-leg point to the chart of the left-mutated triple.

    The charge is unchanged: the new middle value is the pairing times
    the old middle value minus the old last value, the new last slot
    repeats the old middle slot, and the new middle branch is the
    unique one placing its phase strictly between the old last phase
    minus one and the old middle phase.
    """
    if classify_cell(t, p, depth) is not CellLabel.PLUS_LEG:
        raise ValueError("not in the identified patch")
    f1, f2, f3 = p.phases()
    if not f1.shifted(1) < f2:
        raise ValueError("not in the identified patch")
    c1, c2, c3 = t.chars
    chi = euler_chi(c2, c3)
    z2n = chi * p.z2 - p.z3
    k2n = _branch_in_window(z2n, f3.shifted(-1), f2)
    t2 = mutate_left(t)
    p2 = ThetaParams(p.z1, z2n, p.z2, p.k1, k2n, p.k2)
    return t2, p2


def transport_plus_leg_inverse(t2: ExcTriple, p2: ThetaParams, depth: int
                               ) -> tuple[ExcTriple, ThetaParams]:
    """Undo the plus-leg transport from the mutated chart.

    The old last value is the pairing times the new last value minus
    the new middle value, and its branch is the unique one placing its
    phase strictly between the new last phase and the new middle phase
    plus one.
    """
    if classify_cell(t2, p2, depth) is not CellLabel.PLUS_LEG:
        raise ValueError("not in the identified patch")
    g1, g2, g3 = p2.phases()
    d1, d2, d3 = t2.chars
    chi = euler_chi(d2, d3)
    z3o = chi * p2.z3 - p2.z2
    k3o = _branch_in_window(z3o, g3, g2.shifted(1))
    t1 = mutate_right(t2)
    p1 = ThetaParams(p2.z1, p2.z3, z3o, p2.k1, p2.k3, k3o)
    return t1, p1


def _branch_in_window(z: RatComplex, lo: Phase, hi: Phase) -> int:
    """The unique branch putting the value's phase in the open window.

    The window must be shorter than one; candidate branches differ by
    two, so at most one parity-compatible branch can land inside.
    """
    if z.is_zero():
        raise ValueError("transported value vanishes")
    re, im, j = to_upper(z.re, z.im)
    for k in range(lo.k - 2, hi.k + 3):
        if (k - j) % 2:
            continue
        cand = Phase(re, im, k)
        if lo < cand < hi:
            return k
    raise ValueError("no phase branch lands in the transport window")
