"""Dyadic labels, recursive characters, triples, and mutations."""

import random
from fractions import Fraction

import pytest

from stabscope.corekit import CharVec, collinear, delta, det3, euler_chi, slope
from stabscope.exceptional import (DyadicLabel, ExcBundle, TriplePattern,
                                   char_of, detect_triple, el, eplus, er,
                                   is_exceptional_char, mutate_left,
                                   mutate_right, slope_to_label, triple_from,
                                   twist)
from stabscope.surd import QuadReal


def lab(text: str) -> DyadicLabel:
    return DyadicLabel.parse(text)


def all_labels(span: int, max_m: int) -> list[DyadicLabel]:
    out = [DyadicLabel(n) for n in range(-span, span + 1)]
    for m in range(1, max_m + 1):
        step = 1 << m
        out.extend(DyadicLabel(p, m)
                   for p in range(-span * step + 1, span * step, 2))
    return out


def test_label_canonical_form():
    assert DyadicLabel(2, 1) == DyadicLabel(1)
    assert DyadicLabel(6, 2) == DyadicLabel(3, 1)
    assert str(DyadicLabel(1, 1)) == "1/2"
    assert str(DyadicLabel(-7, 2)) == "-7/4"
    assert str(DyadicLabel(3)) == "3"
    assert lab("13/4") == DyadicLabel(13, 2)
    assert lab("-2") == DyadicLabel(-2)
    with pytest.raises(ValueError):
        lab("1/3")


def test_label_order_and_neighbors():
    assert lab("1/2") < lab("3/4") < lab("1")
    assert lab("3/4").left_neighbor() == lab("1/2")
    assert lab("3/4").right_neighbor() == lab("1")
    assert lab("1/2").shift(1) == lab("3/2")


def test_integer_characters():
    assert char_of(lab("0")) == CharVec(1, 0, 0)
    assert char_of(lab("1")) == CharVec(1, 1, Fraction(1, 2))
    for n in range(-5, 6):
        assert char_of(DyadicLabel(n)) == CharVec(1, n, Fraction(n * n, 2))


def test_recursive_characters():
    frozen = {
        "1/2": (2, 1, Fraction(-1, 2)),
        "3/2": (2, 3, Fraction(3, 2)),
        "5/2": (2, 5, Fraction(11, 2)),
        "1/4": (5, 2, -2),
        "3/4": (5, 3, Fraction(-3, 2)),
        "5/4": (5, 7, Fraction(5, 2)),
        "13/4": (5, 17, Fraction(53, 2)),
    }
    for text, triple in frozen.items():
        assert char_of(lab(text)) == CharVec(*triple), text


def test_exceptionality_identity_small_sweep():
    for label in all_labels(3, 5):
        c = char_of(label)
        assert euler_chi(c, c) == 1, label
        r = c.ch0
        assert delta(c) == Fraction(1, 2) * (1 - Fraction(1, r * r)), label


def test_twist_matches_shifted_label():
    assert twist(lab("0"), 1) == CharVec(1, 1, Fraction(1, 2))
    assert twist(lab("1/2"), 1) == char_of(lab("3/2"))
    assert twist(lab("3/2"), -2) == CharVec(2, -1, Fraction(-1, 2))
    for label in all_labels(2, 4):
        assert twist(label, 1) == char_of(label.shift(1)), label


def test_bundle_accessors():
    e = ExcBundle.of("3/2")
    assert e.rank == 2
    assert e.slope == Fraction(3, 2)
    assert e.char == CharVec(2, 3, Fraction(3, 2))
    assert ExcBundle.of(Fraction(1, 2)).label == lab("1/2")


def test_slope_map_strictly_increasing():
    labels = sorted(all_labels(3, 4))
    slopes = [slope(char_of(l)) for l in labels]
    assert all(a < b for a, b in zip(slopes, slopes[1:]))


def test_vertex_points():
    cases = {
        "0": (0, -1),
        "1": (1, Fraction(-1, 2)),
        "2": (2, 1),
        "3": (3, Fraction(7, 2)),
        "1/2": (Fraction(1, 2), Fraction(-1, 2)),
        "3/2": (Fraction(3, 2), Fraction(1, 2)),
        "5/2": (Fraction(5, 2), Fraction(5, 2)),
    }
    for text, (x, y) in cases.items():
        p = eplus(lab(text))
        assert (p.x, p.y) == (x, y), text


def test_shoulder_points_exact():
    p = el(lab("0"))
    assert p.x == QuadReal(Fraction(-3, 2), Fraction(1, 2), 5)
    assert p.y == QuadReal(Fraction(5, 4), Fraction(-3, 4), 5)
    q = er(lab("0"))
    assert q.x == QuadReal(Fraction(3, 2), Fraction(-1, 2), 5)
    assert q.y == QuadReal(Fraction(5, 4), Fraction(-3, 4), 5)


def test_shoulder_points_on_half_discriminant_parabola():
    for label in all_labels(2, 3):
        assert el(label).delta() == Fraction(1, 2), label
        assert er(label).delta() == Fraction(1, 2), label
        assert el(label).x < eplus(label).x < er(label).x, label


def test_triple_patterns():
    t = triple_from(TriplePattern.ADJACENT, DyadicLabel(1))
    assert [str(l) for l in t.labels] == ["0", "1", "2"]
    t = triple_from(TriplePattern.ADJACENT, DyadicLabel(1, 1))
    assert [str(l) for l in t.labels] == ["0", "1/2", "1"]
    t = triple_from(TriplePattern.RIGHT_EXTENDED, DyadicLabel(1, 1))
    assert [str(l) for l in t.labels] == ["1/2", "1", "3"]
    assert euler_chi(char_of(lab("3")), char_of(lab("1/2"))) == 0
    t = triple_from(TriplePattern.LEFT_EXTENDED, DyadicLabel(1, 1))
    assert [str(l) for l in t.labels] == ["-2", "0", "1/2"]


def test_detect_triple():
    t = detect_triple(lab("0"), lab("1/2"), lab("1"))
    assert t is not None and t.pattern is TriplePattern.ADJACENT
    assert detect_triple(lab("0"), lab("1"), lab("3")) is None


def random_triples(count: int, rng: random.Random):
    patterns = list(TriplePattern)
    out = []
    while len(out) < count:
        m = rng.randint(0, 5)
        span = 3 << m
        p = rng.randint(-span, span)
        base = DyadicLabel(p, m)
        pattern = rng.choice(patterns)
        try:
            out.append(triple_from(pattern, base))
        except ValueError:
            continue
    return out


def test_triple_unimodular_and_collinear():
    rng = random.Random(7)
    for t in random_triples(60, rng):
        c1, c2, c3 = t.chars
        assert abs(det3(c1, c2, c3)) == 1
        e1p = eplus(t.labels[0])
        e3p = eplus(t.labels[2])
        assert collinear(e1p, c2.proj(), c3.proj())
        assert collinear(e3p, c2.proj(), c1.proj())


def test_orthogonality_in_twist_family():
    for n in range(-3, 4):
        t = triple_from(TriplePattern.ADJACENT, DyadicLabel(n))
        c1, c2, c3 = t.chars
        assert euler_chi(c2, c1) == 0
        assert euler_chi(c3, c1) == 0
        assert euler_chi(c3, c2) == 0


def test_mutate_left_known_cases():
    t = triple_from(TriplePattern.ADJACENT, DyadicLabel(1))
    left = mutate_left(t)
    assert [str(l) for l in left.labels] == ["0", "1/2", "1"]
    assert left.E2.char == CharVec(2, 1, Fraction(-1, 2))
    assert left.E2.char == char_of(lab("1")).scale(3) - char_of(lab("2"))

    t = detect_triple(lab("1"), lab("3/2"), lab("2"))
    left = mutate_left(t)
    assert [str(l) for l in left.labels] == ["1", "5/4", "3/2"]
    assert left.E2.char == CharVec(5, 7, Fraction(5, 2))


def test_mutation_roundtrip_randomized():
    rng = random.Random(11)
    for t in random_triples(100, rng):
        d = abs(det3(*t.chars))
        for slot in (1, 2):
            left = mutate_left(t, slot)
            assert abs(det3(*left.chars)) == d
            back = mutate_right(left, slot)
            assert back.labels == t.labels
            assert back.chars == t.chars
            right = mutate_right(t, slot)
            assert mutate_left(right, slot).labels == t.labels


def test_mutation_pattern_transitions():
    t = triple_from(TriplePattern.ADJACENT, DyadicLabel(1))
    cases = {
        (2, "left"): (["0", "1/2", "1"], TriplePattern.ADJACENT, "1/2"),
        (2, "right"): (["0", "2", "5/2"], TriplePattern.LEFT_EXTENDED, "5/2"),
        (1, "left"): (["-1/2", "0", "2"], TriplePattern.RIGHT_EXTENDED, "-1/2"),
        (1, "right"): (["1", "3/2", "2"], TriplePattern.ADJACENT, "3/2"),
    }
    for (slot, way), (labels, pattern, base) in cases.items():
        got = (mutate_left if way == "left" else mutate_right)(t, slot)
        assert [str(l) for l in got.labels] == labels
        assert got.pattern is pattern
        assert str(got.base) == base


def test_slope_to_label():
    assert slope_to_label(Fraction(1), 0) == lab("1")
    assert slope_to_label(Fraction(1, 2), 1) == lab("1/2")
    assert slope_to_label(Fraction(2, 5), 2) == lab("1/4")
    assert slope_to_label(Fraction(2, 5), 1) is None
    assert slope_to_label(Fraction(1, 3), 8) is None


def test_is_exceptional_char():
    assert is_exceptional_char(CharVec(2, 2, 1), 0)
    assert not is_exceptional_char(CharVec(2, 1, 1), 4)
    assert is_exceptional_char(CharVec(5, 7, Fraction(5, 2)), 2)
    assert not is_exceptional_char(CharVec(-5, -7, Fraction(-5, 2)), 2)
