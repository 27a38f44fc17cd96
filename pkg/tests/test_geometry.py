from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, strategies as st

from crosslab.geometry import (
    alternate,
    format_scalar,
    intersect_segments,
    orient,
    overlapping_pairs,
    parse_scalar,
    polyline_winding,
    segment_bboxes,
)

small = st.integers(-20, 20)
pts = st.tuples(small, small).map(lambda p: (F(p[0]), F(p[1])))


def test_scalar_round_trip():
    assert format_scalar(F(3)) == "3/1"
    assert format_scalar(F(-6, 4)) == "-3/2"
    assert parse_scalar("-3/2") == F(-3, 2)
    assert parse_scalar("4/8") == F(1, 2)
    with pytest.raises(ValueError):
        parse_scalar("1/0")
    with pytest.raises(ValueError):
        parse_scalar(1.5)


@given(st.fractions())
def test_scalar_canonical(x):
    assert parse_scalar(format_scalar(x)) == x
    assert format_scalar(parse_scalar(format_scalar(x))) == format_scalar(x)


def test_proper_crossing():
    kind, p, t, u = intersect_segments((F(0), F(0)), (F(2), F(2)), (F(0), F(2)), (F(2), F(0)))
    assert kind == "point" and p == (1, 1) and t == u == F(1, 2)


def test_disjoint_and_touching():
    assert intersect_segments((F(0), F(0)), (F(1), F(0)), (F(0), F(1)), (F(1), F(1))) is None
    hit = intersect_segments((F(0), F(0)), (F(2), F(0)), (F(1), F(0)), (F(1), F(5)))
    assert hit[0] == "point" and hit[1] == (1, 0) and hit[3] == 0


def test_collinear_overlap():
    hit = intersect_segments((F(0), F(0)), (F(3), F(0)), (F(1), F(0)), (F(5), F(0)))
    assert hit[0] == "overlap"
    assert {hit[1], hit[2]} == {(1, 0), (3, 0)}


@given(pts, pts, pts, pts)
def test_intersection_symmetric(a, b, c, d):
    if a == b or c == d:
        return
    h1 = intersect_segments(a, b, c, d)
    h2 = intersect_segments(c, d, a, b)
    assert (h1 is None) == (h2 is None)
    if h1 is not None and h1[0] == "point":
        assert h2[0] == "point" and h1[1] == h2[1]


@given(pts, pts, pts)
def test_orient_antisymmetric(a, b, c):
    assert orient(a, b, c) == -orient(a, c, b) == orient(b, c, a)


def test_alternation():
    # an X crossing alternates, a touching V does not
    e = [(F(1), F(1)), (F(-1), F(-1))]
    f = [(F(1), F(-1)), (F(-1), F(1))]
    assert alternate(e, f) is True
    g = [(F(1), F(-1)), (F(1), F(-2))]
    assert alternate(e, g) is False


def test_winding_square():
    sq = [(F(0), F(0)), (F(2), F(0)), (F(2), F(2)), (F(0), F(2)), (F(0), F(0))]
    assert polyline_winding(sq, (F(1), F(1))) == 1
    assert polyline_winding(sq[::-1], (F(1), F(1))) == -1
    assert polyline_winding(sq, (F(3), F(1))) == 0


@given(st.lists(st.tuples(pts, pts), min_size=2, max_size=25))
def test_bbox_filter_is_conservative(segs):
    segs = [(a, b) for a, b in segs if a != b]
    if len(segs) < 2:
        return
    boxes = segment_bboxes(segs)
    cand = {tuple(p) for p in overlapping_pairs(boxes).tolist()}
    for i in range(len(segs)):
        for j in range(i + 1, len(segs)):
            if intersect_segments(*segs[i], *segs[j]) is not None:
                assert (i, j) in cand
