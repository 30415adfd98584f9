"""Command-line entry point exposing the library's operations.

Every verb prints a JSON payload on stdout by default; the curve and
wall arrangement verbs can also emit CSV rows or an SVG picture that
embeds the same CSV data.  Errors are reported as one-line JSON on
stderr with exit code 2; with --strict an Unknown verdict exits 3.
Output is deterministic: keys are sorted, floats use their shortest
round-trip form, and nothing depends on time or iteration order.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .surd import nsign
from .corekit import (AffPt, CharVec, ProjLine, format_rational,
                      parse_rational)
from .exceptional import (DyadicLabel, ExcBundle, ExcTriple, TriplePattern,
                          detect_triple, el, eplus, er, mutate_left,
                          mutate_right, triple_from)
from .lepotier import (DlpResult, RegionClass, build_curve, classify_point,
                       dlp_exists, _labels_between)
from .geometric import (SQCharge, StabResult, exc_stable_at, z_eval)
from .algebraic import (CellLabel, ThetaParams, classify_cell_report,
                        transport_plus_leg, transport_plus_leg_inverse)
from .walls import wall_line, walls_for

ENV_DEPTH = "STABSCOPE_DEPTH"


@dataclass(frozen=True)
class Config:
    """Run-wide defaults resolved from the environment."""

    default_depth: int = 8
    fmt: str = "json"
    exact: bool = True

    @classmethod
    def from_env(cls) -> "Config":
        depth = int(os.environ.get(ENV_DEPTH, "8"))
        if depth < 0:
            raise ValueError("depth must be nonnegative")
        return cls(default_depth=depth)


class _UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _emit(payload) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n")


def _fail(message: str) -> int:
    sys.stderr.write(json.dumps({"error": message}, sort_keys=True) + "\n")
    return 2


def _rats(text: str, n: int) -> list[Fraction]:
    parts = text.split(",")
    if len(parts) != n:
        raise ValueError(f"expected {n} comma-separated rationals, got {text!r}")
    return [parse_rational(p) for p in parts]


def _charvec(text: str) -> CharVec:
    return CharVec(*_rats(text, 3))


def _triple(text: str) -> ExcTriple:
    labels = [DyadicLabel.parse(p) for p in text.split(",")]
    if len(labels) != 3:
        raise ValueError("a triple needs three comma-separated labels")
    t = detect_triple(*labels)
    if t is None:
        raise ValueError("labels do not form a standard triple pattern")
    return t


def _depth(args, cfg: Config) -> int:
    return cfg.default_depth if args.depth is None else args.depth


_PATTERNS = {
    "adj": TriplePattern.ADJACENT,
    "right": TriplePattern.RIGHT_EXTENDED,
    "left": TriplePattern.LEFT_EXTENDED,
}


def _triple_json(t: ExcTriple) -> dict:
    return {
        "pattern": t.pattern.value,
        "base": str(t.base),
        "labels": [str(lab) for lab in t.labels],
        "chars": [c.to_json() for c in t.chars],
    }


def _params_from_args(args) -> tuple[ThetaParams, bool]:
    """Build chart parameters from one of the three input forms."""
    given = [name for name, val in
             (("--slots", args.slots), ("--exact-units", args.exact_units),
              ("--phi", args.phi)) if val is not None]
    if len(given) != 1:
        raise ValueError("give exactly one of --slots, --exact-units, --phi")
    if args.slots is not None:
        if args.m is not None:
            raise ValueError("--slots already encodes magnitudes; drop --m")
        slots = []
        for part in args.slots.split(","):
            re_s, im_s, k_s = part.split(":")
            slots.append((parse_rational(re_s), parse_rational(im_s), int(k_s)))
        if len(slots) != 3:
            raise ValueError("--slots needs three re:im:k entries")
        from .geometric import RatComplex
        return ThetaParams(RatComplex(slots[0][0], slots[0][1]),
                           RatComplex(slots[1][0], slots[1][1]),
                           RatComplex(slots[2][0], slots[2][1]),
                           slots[0][2], slots[1][2], slots[2][2]), True
    if args.m is None:
        raise ValueError("--m is required with --exact-units or --phi")
    ms = _rats(args.m, 3)
    if args.exact_units is not None:
        units = []
        branches = []
        for part in args.exact_units.split(","):
            k_s, c_s, s_s = part.split(":")
            branches.append(int(k_s))
            units.append((parse_rational(c_s), parse_rational(s_s)))
        if len(units) != 3:
            raise ValueError("--exact-units needs three k:c:s entries")
        return ThetaParams.from_units(ms, units, branches), True
    phis = [float(p) for p in args.phi.split(",")]
    if len(phis) != 3:
        raise ValueError("--phi needs three values")
    return ThetaParams.from_floats([float(m) for m in ms], phis), False


def _params_json(p: ThetaParams) -> dict:
    data = p.to_json()
    data["slots_arg"] = ",".join(
        f"{z.re}:{z.im}:{k}" for z, k in p.slots())
    data["m_approx"] = [float(m) for m in p.magnitudes()]
    data["phi_approx"] = [f.approx() for f in p.phases()]
    return data


def _curve_data(depth: int, window: tuple[Fraction, Fraction]):
    """Segments and exclusions whose slope span meets the window."""
    approx = build_curve(depth, window)
    lo, hi = window
    segs = [s for s in approx.segments
            if nsign(s.end.x - lo) >= 0 and nsign(hi - s.start.x) >= 0]
    excs = [e for e in approx.exclusions if lo <= e.x <= hi]
    return segs, excs


def _curve_rows(segs, excs) -> list[dict]:
    rows = []
    for seg in segs:
        rows.append({"x1": float(seg.start.x), "y1": float(seg.start.y),
                     "x2": float(seg.end.x), "y2": float(seg.end.y),
                     "kind": seg.side, "label": str(seg.label)})
    for exc in excs:
        rows.append({"x1": float(exc.x), "y1": float(exc.y_top),
                     "x2": float(exc.x), "y2": float(exc.y_bottom),
                     "kind": "exclusion", "label": str(exc.label)})
    return rows


_CSV_HEADER = "x1,y1,x2,y2,kind,label"


def _csv(rows: Sequence[dict]) -> str:
    lines = [_CSV_HEADER]
    for r in rows:
        lines.append(",".join([repr(r["x1"]), repr(r["y1"]), repr(r["x2"]),
                               repr(r["y2"]), r["kind"], r["label"]]))
    return "\n".join(lines) + "\n"


_KIND_COLOR = {"left": "#000000", "right": "#000000",
               "exclusion": "#cc0000", "wall": "#0044cc"}


def _svg(rows: Sequence[dict], window: tuple[Fraction, Fraction]) -> str:
    """An SVG picture embedding the CSV payload in its desc element.

    The horizontal axis is ch1/ch0 and the vertical axis is ch2/ch0
    (drawn upward); three reference parabolas at discriminant levels
    0, 1/2 and 1 are included for orientation.
    """
    x0, x1 = float(window[0]), float(window[1])
    steps = 64
    parabolas = []
    for level in (0.0, 0.5, 1.0):
        pts = []
        for i in range(steps + 1):
            x = x0 + (x1 - x0) * i / steps
            pts.append((x, x * x / 2 - level))
        parabolas.append(pts)
    ys = [r[k] for r in rows for k in ("y1", "y2")]
    ys += [y for pts in parabolas for _, y in pts]
    y_lo = min(ys) if ys else -1.0
    y_hi = max(ys) if ys else 1.0
    pad = 0.5
    vb = (x0 - pad, -(y_hi + pad), (x1 - x0) + 2 * pad, (y_hi - y_lo) + 2 * pad)
    out = []
    out.append('<svg xmlns="http://www.w3.org/2000/svg" viewBox="'
               + " ".join(repr(v) for v in vb) + '">')
    out.append("<desc>" + _csv(rows).replace("\n", "&#10;") + "</desc>")
    for pts in parabolas:
        attr = " ".join(f"{repr(x)},{repr(-y)}" for x, y in pts)
        out.append(f'<polyline points="{attr}" fill="none" stroke="#bbbbbb" '
                   'stroke-width="0.02" stroke-dasharray="0.1,0.05"/>')
    for r in rows:
        color = _KIND_COLOR.get(r["kind"], "#000000")
        out.append(f'<line x1="{repr(r["x1"])}" y1="{repr(-r["y1"])}" '
                   f'x2="{repr(r["x2"])}" y2="{repr(-r["y2"])}" '
                   f'stroke="{color}" stroke-width="0.02"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _print_rows(rows: Sequence[dict], fmt: str,
                window: tuple[Fraction, Fraction], payload: dict) -> None:
    if fmt == "json":
        _emit(payload)
    elif fmt == "csv":
        sys.stdout.write(_csv(rows))
    else:
        sys.stdout.write(_svg(rows, window))


def _build_parser() -> _Parser:
    top = _Parser(prog="stabscope", description=__doc__)
    sub = top.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("exc", help="data of one exceptional bundle")
    p.add_argument("what", choices=("char", "eplus", "el", "er"))
    p.add_argument("label")

    p = sub.add_parser("curve", help="emit the boundary-curve approximation")
    p.add_argument("action", choices=("emit",))
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--from", dest="lo", required=True)
    p.add_argument("--to", dest="hi", required=True)
    p.add_argument("--format", choices=("json", "csv", "svg"), default="json")

    p = sub.add_parser("classify-point", help="classify a point of the plane")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--strict", action="store_true")

    p = sub.add_parser("dlp", help="semistable-sheaf existence for a character")
    p.add_argument("--ch0", required=True)
    p.add_argument("--ch1", required=True)
    p.add_argument("--ch2", required=True)
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--strict", action="store_true")

    p = sub.add_parser("charge", help="evaluate a normal-form charge")
    p.add_argument("action", choices=("eval",))
    p.add_argument("--s", required=True)
    p.add_argument("--q", required=True)
    p.add_argument("--ch0", required=True)
    p.add_argument("--ch1", required=True)
    p.add_argument("--ch2", required=True)

    p = sub.add_parser("stab-region", help="raster of exceptional stability")
    p.add_argument("--label", required=True)
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--grid", required=True, help="x0,x1,y0,y1,n")
    p.add_argument("--strict", action="store_true")

    p = sub.add_parser("triple", help="build an exceptional triple")
    p.add_argument("action", choices=("make",))
    p.add_argument("--pattern", choices=tuple(_PATTERNS), required=True)
    p.add_argument("--base", required=True)

    p = sub.add_parser("mutate", help="mutate a triple")
    p.add_argument("direction", choices=("left", "right"))
    p.add_argument("--triple", required=True)
    p.add_argument("--slot", type=int, choices=(1, 2), default=2)

    for name in ("classify-cell", "transport"):
        p = sub.add_parser(name)
        p.add_argument("--triple", required=True)
        p.add_argument("--m", default=None)
        p.add_argument("--phi", default=None)
        p.add_argument("--exact-units", dest="exact_units", default=None)
        p.add_argument("--slots", default=None)
        p.add_argument("--depth", type=int, default=None)
        p.add_argument("--strict", action="store_true")
        if name == "transport":
            p.add_argument("--inverse", action="store_true")

    p = sub.add_parser("wall", help="wall line between two classes")
    p.add_argument("--v", required=True)
    p.add_argument("--w", required=True)

    p = sub.add_parser("walls", help="wall arrangement against a bundle pool")
    p.add_argument("--v", required=True)
    p.add_argument("--pool-depth", dest="pool_depth", type=int, required=True)
    p.add_argument("--window", required=True, help="x0,x1,y0,y1")
    p.add_argument("--format", choices=("json", "csv", "svg"), default="json")

    return top


def _line_text(line: ProjLine) -> Optional[str]:
    if line.c1 == 0 and line.c2 == 0:
        return None
    if line.c2 == 0:
        return f"s={format_rational(-line.c0 / line.c1)}"
    slope_c = -line.c1 / line.c2
    icept = -line.c0 / line.c2
    if slope_c == 0:
        return f"q={format_rational(icept)}"
    text = f"q={format_rational(slope_c)}*s"
    if icept > 0:
        text += f"+{format_rational(icept)}"
    elif icept < 0:
        text += format_rational(icept)
    return text


def run(argv: Sequence[str]) -> int:
    cfg = Config.from_env()
    try:
        args = _build_parser().parse_args(argv)
        return _dispatch(args, cfg)
    except _UsageError as e:
        return _fail(str(e))
    except (ValueError, AssertionError, OverflowError, ZeroDivisionError) as e:
        return _fail(str(e))


def _dispatch(args, cfg: Config) -> int:
    verb = args.verb

    if verb == "exc":
        label = DyadicLabel.parse(args.label)
        if args.what == "char":
            _emit({"char": ExcBundle.of(label).char.to_json()})
        else:
            point = {"eplus": eplus, "el": el, "er": er}[args.what](label)
            _emit({"label": str(label), "point": point.to_json()})
        return 0

    if verb == "curve":
        depth = _depth(args, cfg)
        window = (parse_rational(args.lo), parse_rational(args.hi))
        segs, excs = _curve_data(depth, window)
        rows = _curve_rows(segs, excs)
        payload = {
            "depth": depth,
            "window": [format_rational(w) for w in window],
            "segments": [{"label": str(s.label), "side": s.side,
                          "start": s.start.to_json(), "end": s.end.to_json()}
                         for s in segs],
            "exclusions": [{"label": str(e.label), "x": format_rational(e.x),
                            "top": format_rational(e.y_top),
                            "bottom": format_rational(e.y_bottom)}
                           for e in excs],
        }
        _print_rows(rows, args.format, window, payload)
        return 0

    if verb == "classify-point":
        depth = _depth(args, cfg)
        result = classify_point(AffPt(parse_rational(args.x),
                                      parse_rational(args.y)), depth)
        _emit({"class": result.value})
        return 3 if args.strict and result is RegionClass.UNKNOWN else 0

    if verb == "dlp":
        depth = _depth(args, cfg)
        v = CharVec(parse_rational(args.ch0), parse_rational(args.ch1),
                    parse_rational(args.ch2))
        result = dlp_exists(v, depth)
        _emit({"result": result.value})
        return 3 if args.strict and result is DlpResult.UNKNOWN else 0

    if verb == "charge":
        Z = SQCharge(parse_rational(args.s), parse_rational(args.q))
        v = CharVec(parse_rational(args.ch0), parse_rational(args.ch1),
                    parse_rational(args.ch2))
        z = z_eval(Z, v)
        _emit({"re": format_rational(z.re), "im": format_rational(z.im)})
        return 0

    if verb == "stab-region":
        return _stab_region(args, cfg)

    if verb == "triple":
        t = triple_from(_PATTERNS[args.pattern], DyadicLabel.parse(args.base))
        _emit(_triple_json(t))
        return 0

    if verb == "mutate":
        t = _triple(args.triple)
        op = mutate_left if args.direction == "left" else mutate_right
        _emit(_triple_json(op(t, args.slot)))
        return 0

    if verb == "classify-cell":
        depth = _depth(args, cfg)
        t = _triple(args.triple)
        p, exact = _params_from_args(args)
        report = classify_cell_report(t, p, depth)
        payload = {"label": report.label.value, "depth": depth,
                   "exact": exact, "reason": report.reason,
                   "kernel": None, "point": None}
        if report.kernel is not None:
            payload["kernel"] = report.kernel.gen.to_json()
            if report.kernel.is_finite:
                payload["point"] = report.kernel.point().to_json()
        _emit(payload)
        return 3 if args.strict and report.label is CellLabel.UNKNOWN else 0

    if verb == "transport":
        depth = _depth(args, cfg)
        t = _triple(args.triple)
        p, exact = _params_from_args(args)
        move = transport_plus_leg_inverse if args.inverse else transport_plus_leg
        t2, p2 = move(t, p, depth)
        _emit({"triple": _triple_json(t2), "params": _params_json(p2),
               "exact": exact})
        return 0

    if verb == "wall":
        wl = wall_line(_charvec(args.v), _charvec(args.w))
        _emit({"line": _line_text(wl.line),
               "coeffs": [format_rational(c) for c in
                          (wl.line.c0, wl.line.c1, wl.line.c2)]})
        return 0

    if verb == "walls":
        return _walls(args, cfg)

    raise _UsageError(f"unknown verb {verb!r}")


def _stab_region(args, cfg: Config) -> int:
    depth = _depth(args, cfg)
    parts = args.grid.split(",")
    if len(parts) != 5:
        raise ValueError("grid must be x0,x1,y0,y1,n")
    x0, x1, y0, y1 = (parse_rational(p) for p in parts[:4])
    n = int(parts[4])
    if n < 2:
        raise ValueError("grid needs at least two samples per axis")
    E = ExcBundle.of(DyadicLabel.parse(args.label))
    lines = ["x,y,result"]
    saw_unknown = False
    for j in range(n):
        y = y0 + (y1 - y0) * Fraction(j, n - 1)
        for i in range(n):
            x = x0 + (x1 - x0) * Fraction(i, n - 1)
            point = AffPt(x, y)
            if classify_point(point, depth) is not RegionClass.GEO_LP:
                continue
            result = exc_stable_at(E, point, depth)
            saw_unknown = saw_unknown or result is StabResult.UNKNOWN
            lines.append(f"{format_rational(x)},{format_rational(y)},{result.value}")
    sys.stdout.write("\n".join(lines) + "\n")
    return 3 if args.strict and saw_unknown else 0


def _walls(args, cfg: Config) -> int:
    v = _charvec(args.v)
    window = _rats(args.window, 4)
    lo = window[0]
    hi = window[1]
    import math
    labels = _labels_between(math.floor(lo), math.ceil(hi), args.pool_depth)
    pool = [ExcBundle.of(lab) for lab in labels]
    by_char = {e.char: str(e.label) for e in pool}
    found = walls_for(v, pool, window)
    rows = []
    payload = []
    for wl in found:
        label = by_char[wl.w]
        rows.append({"x1": float(wl.clip.a.x), "y1": float(wl.clip.a.y),
                     "x2": float(wl.clip.b.x), "y2": float(wl.clip.b.y),
                     "kind": "wall", "label": label})
        payload.append({"label": label, "w": wl.w.to_json(),
                        "line": _line_text(wl.line),
                        "coeffs": [format_rational(c) for c in
                                   (wl.line.c0, wl.line.c1, wl.line.c2)],
                        "clip": {"start": wl.clip.a.to_json(),
                                 "end": wl.clip.b.to_json()}})
    _print_rows(rows, args.format, (window[0], window[1]),
                {"v": v.to_json(), "walls": payload})
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
