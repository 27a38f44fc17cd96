"""Exact rational plane geometry.

Every coordinate is a :class:`fractions.Fraction`; predicates never round.
Floats only appear in :func:`segment_bboxes`, which produces conservative
boxes for candidate filtering ahead of the exact tests.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cmp_to_key
from typing import Iterable, Sequence

import numpy as np

Scalar = Fraction
Point = tuple[Fraction, Fraction]


def parse_scalar(text: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"`` (or a bare integer) into a reduced fraction."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"rational must be a string, got {text!r}")
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad rational {text!r}") from exc
    return value


def format_scalar(value: Fraction) -> str:
    """Canonical ``"p/q"`` string; the denominator is always written."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def point(x, y) -> Point:
    return (Fraction(x), Fraction(y))


def cross(o: Point, a: Point, b: Point) -> Fraction:
    """Twice the signed area of triangle ``o a b``."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def orient(o: Point, a: Point, b: Point) -> int:
    c = cross(o, a, b)
    return (c > 0) - (c < 0)


def on_segment(p: Point, a: Point, b: Point) -> bool:
    """True when ``p`` lies on the closed segment ``ab``."""
    if orient(a, b, p) != 0:
        return False
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def segment_param(p: Point, a: Point, b: Point) -> Fraction:
    """Parameter ``t`` with ``p = a + t (b - a)``; ``p`` must lie on the line."""
    if a[0] != b[0]:
        return (p[0] - a[0]) / (b[0] - a[0])
    return (p[1] - a[1]) / (b[1] - a[1])


def intersect_segments(a: Point, b: Point, c: Point, d: Point):
    """Intersect closed segments ``ab`` and ``cd``.

    Returns ``None``, ``("point", P, t, u)`` with parameters along each
    segment, or ``("overlap", P, Q)`` for a collinear overlap of positive
    length.
    """
    d1 = cross(a, b, c)
    d2 = cross(a, b, d)
    if d1 == 0 and d2 == 0:
        # collinear: project on the dominant axis
        axis = 0 if a[0] != b[0] else 1
        lo1, hi1 = sorted((a, b), key=lambda p: p[axis])
        lo2, hi2 = sorted((c, d), key=lambda p: p[axis])
        lo = lo1 if lo1[axis] >= lo2[axis] else lo2
        hi = hi1 if hi1[axis] <= hi2[axis] else hi2
        if lo[axis] > hi[axis]:
            return None
        if lo[axis] == hi[axis]:
            return ("point", lo, segment_param(lo, a, b), segment_param(lo, c, d))
        return ("overlap", lo, hi)
    if (d1 > 0 and d2 > 0) or (d1 < 0 and d2 < 0):
        return None
    d3 = cross(c, d, a)
    d4 = cross(c, d, b)
    if (d3 > 0 and d4 > 0) or (d3 < 0 and d4 < 0):
        return None
    # proper or touching intersection; solve with the nonzero denominator
    u = d1 / (d1 - d2)
    t = d3 / (d3 - d4) if d3 != d4 else segment_param(c, a, b)
    p = (c[0] + u * (d[0] - c[0]), c[1] + u * (d[1] - c[1]))
    return ("point", p, t, u)


def _half(v: Point) -> int:
    # 0 for angles in [0, pi), 1 for [pi, 2pi)
    return 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1


def compare_angle(u: Point, v: Point) -> int:
    """Compare direction vectors by counter-clockwise angle from +x."""
    hu, hv = _half(u), _half(v)
    if hu != hv:
        return -1 if hu < hv else 1
    c = u[0] * v[1] - u[1] * v[0]
    return -1 if c > 0 else (1 if c < 0 else 0)


angle_key = cmp_to_key(compare_angle)


def direction(a: Point, b: Point) -> Point:
    return (b[0] - a[0], b[1] - a[1])


def alternate(dirs_e: Sequence[Point], dirs_f: Sequence[Point]) -> bool | None:
    """Do two germ pairs meeting at one point separate each other?

    Returns True for a transversal crossing, False for a touching contact,
    and None when two germs coincide (overlap).
    """
    tagged = [(d, 0) for d in dirs_e] + [(d, 1) for d in dirs_f]
    tagged.sort(key=lambda t: angle_key(t[0]))
    for i in range(len(tagged)):
        if compare_angle(tagged[i][0], tagged[(i + 1) % len(tagged)][0]) == 0:
            return None
    tags = [t for _, t in tagged]
    return tags in ([0, 1, 0, 1], [1, 0, 1, 0])


def polyline_area2(pts: Sequence[Point]) -> Fraction:
    """Shoelace contribution of an open polyline (twice the signed area)."""
    s = Fraction(0)
    for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
        s += x0 * y1 - x1 * y0
    return s


def polyline_winding(pts: Sequence[Point], w: Point) -> int:
    """Additive winding-number contribution of an open polyline around ``w``.

    Half-open crossing rule, so contributions of consecutive pieces of a
    closed curve sum to its winding number.
    """
    wn = 0
    for a, b in zip(pts, pts[1:]):
        if a[1] <= w[1]:
            if b[1] > w[1] and cross(a, b, w) > 0:
                wn += 1
        elif b[1] <= w[1] and cross(a, b, w) < 0:
            wn -= 1
    return wn


def point_on_polyline(p: Point, pts: Sequence[Point]) -> bool:
    return any(on_segment(p, a, b) for a, b in zip(pts, pts[1:]))


def segment_bboxes(segments: Iterable[tuple[Point, Point]]) -> np.ndarray:
    """Float boxes ``(xmin, ymin, xmax, ymax)`` padded to stay conservative."""
    rows = []
    for a, b in segments:
        ax, ay, bx, by = float(a[0]), float(a[1]), float(b[0]), float(b[1])
        rows.append((min(ax, bx), min(ay, by), max(ax, bx), max(ay, by)))
    boxes = np.asarray(rows, dtype=float).reshape(-1, 4)
    pad = 1e-9 * (1.0 + np.abs(boxes))
    boxes[:, :2] -= pad[:, :2]
    boxes[:, 2:] += pad[:, 2:]
    return boxes


def overlapping_pairs(boxes: np.ndarray, chunk: int = 2048) -> np.ndarray:
    """Index pairs ``i < j`` whose boxes intersect; shape ``(m, 2)``."""
    m = len(boxes)
    out = []
    for start in range(0, m, chunk):
        blk = boxes[start:start + chunk]
        hit = (
            (blk[:, None, 0] <= boxes[None, :, 2])
            & (boxes[None, :, 0] <= blk[:, None, 2])
            & (blk[:, None, 1] <= boxes[None, :, 3])
            & (boxes[None, :, 1] <= blk[:, None, 3])
        )
        ii, jj = np.nonzero(hit)
        ii = ii + start
        keep = ii < jj
        out.append(np.stack([ii[keep], jj[keep]], axis=1))
    if not out:
        return np.zeros((0, 2), dtype=int)
    return np.concatenate(out)
