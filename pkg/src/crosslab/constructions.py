"""Drawing families and their geometric realizations.

Two-page edges are drawn as parabolic arcs ``y = +-(x - a)(b - x) / 2``
sampled on one grid shared by every edge.  On a common grid the difference
of two interpolants is the interpolant of the difference, which for two
arcs on one page is linear, so the polylines cross exactly when the arcs
do.  Outer-circle edges of cylindrical drawings use the same trick in polar
form (radius quadratic in angle, all edges sampled on common rays).
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from itertools import combinations
from typing import Union

from .drawing import Drawing, InvalidDrawingError, StructuralError, validate_good_drawing
from .layouts import (
    BOTTOM,
    TOP,
    CylindricalLayout,
    TwoPageLayout,
    crossings_cylindrical,
    crossings_two_page,
    geodesic_delta,
)
from .geometry import Point


class FidelityError(RuntimeError):
    """A realization never reproduced its layout's crossing count."""


class ClassificationError(ValueError):
    pass


MAX_DENSIFY = 4  # doublings of the resolution before giving up


def _need_n(n: int) -> None:
    if n < 3:
        raise ValueError(f"n must be at least 3, got {n}")


# -- two-page -------------------------------------------------------------


def blazek_koman_layout(n: int) -> TwoPageLayout:
    """Spine form of the regular-polygon construction.

    A chord {i, j} of the polygon has direction class (i + j) mod n; half of
    the classes are the positive-slope diagonals drawn inside the polygon.
    """
    _need_n(n)
    spine = tuple(range(1, n + 1))
    pages = {}
    for i, j in combinations(spine, 2):
        pages[(i, j)] = TOP if ((i - 1) + (j - 1)) % n < n / 2 else BOTTOM
    return TwoPageLayout(spine, pages)


def random_two_page(n: int, seed: int) -> TwoPageLayout:
    _need_n(n)
    rng = random.Random(seed)
    spine = tuple(range(1, n + 1))
    pages = {e: (TOP if rng.random() < 0.5 else BOTTOM) for e in combinations(spine, 2)}
    return TwoPageLayout(spine, pages)


def _spine_x(k: int, n: int) -> Fraction:
    # slightly irregular spacing keeps three arcs from meeting in one point
    return Fraction(k) + Fraction(k * k, 16 * n ** 3 + 1)


def _realize_two_page(layout: TwoPageLayout, resolution: int) -> Drawing:
    n = len(layout.spine)
    xs = [_spine_x(k, n) for k in range(1, n + 1)]
    grid = [xs[0]]
    for a, b in zip(xs, xs[1:]):
        grid.extend(a + (b - a) * Fraction(s, resolution) for s in range(1, resolution + 1))
    index = {x: i for i, x in enumerate(grid)}
    pos = layout.position()
    vertices = {v: (xs[pos[v]], Fraction(0)) for v in layout.spine}
    edges = {}
    for (u, v), page in layout.pages.items():
        a, b = sorted((xs[pos[u]], xs[pos[v]]))
        sign = 1 if page == TOP else -1
        pts = [(x, sign * (x - a) * (b - x) / 2) for x in grid[index[a]:index[b] + 1]]
        if pos[u] > pos[v]:
            pts.reverse()
        edges[(u, v)] = tuple(pts)
    return Drawing(n, vertices, edges, "two-page", layout)


# -- cylindrical ----------------------------------------------------------

R_INNER = Fraction(2)
R_OUTER = Fraction(4)
OUTER_BULGE = 256
_DIR_SCALE = 2 ** 24


def _dir(turn: Fraction) -> Point:
    """Rational direction vector close to the unit vector at ``turn``."""
    t = turn - math.floor(turn)
    ang = 2 * math.pi * float(t)
    return (Fraction(round(math.cos(ang) * _DIR_SCALE), _DIR_SCALE), Fraction(round(math.sin(ang) * _DIR_SCALE), _DIR_SCALE))


def _scale(r: Fraction, d: Point) -> Point:
    return (r * d[0], r * d[1])


def harary_hill_layout(n: int) -> CylindricalLayout:
    """ceil(n/2) vertices on the outer circle (ids 1..), the rest inside."""
    _need_n(n)
    m_out = (n + 1) // 2
    m_in = n // 2
    # quadratic wobble: a linear one would leave the polygons regular
    wobble = 4 * n ** 4 + 1
    outer = tuple(
        (j + 1, Fraction(j, m_out) + Fraction(j * j, wobble) + Fraction(1, 4 * m_out)) for j in range(m_out)
    )
    inner = tuple((m_out + k + 1, Fraction(k, m_in) + Fraction(k * k, wobble)) for k in range(m_in))
    delta = {}
    for a, ta in inner:
        for b, tb in outer:
            delta[(a, b)] = geodesic_delta(ta, tb)
    return CylindricalLayout(inner, outer, delta)


def random_cylindrical(n: int, seed: int) -> CylindricalLayout:
    """Random split and positions, every annulus edge geodesic."""
    _need_n(n)
    rng = random.Random(seed)
    m_out = rng.randint(1, n - 1)
    ids = list(range(1, n + 1))
    den = 997 * n
    def ring(vs):
        turns = rng.sample(range(den), len(vs))
        return tuple((v, Fraction(t, den)) for v, t in zip(vs, sorted(turns)))
    outer = ring(ids[:m_out])
    inner = ring(ids[m_out:])
    delta = {(a, b): geodesic_delta(ta, tb) for a, ta in inner for b, tb in outer}
    return CylindricalLayout(inner, outer, delta)


def _realize_cylindrical(layout: CylindricalLayout, resolution: int) -> Drawing:
    turn = layout.turns()
    vertices: dict[int, Point] = {}
    for v, t in layout.inner:
        vertices[v] = _scale(R_INNER, _dir(t))
    for v, t in layout.outer:
        vertices[v] = _scale(R_OUTER, _dir(t))
    edges: dict[tuple[int, int], tuple[Point, ...]] = {}

    for a, b in combinations(layout.inner_ids, 2):
        edges[(min(a, b), max(a, b))] = (vertices[min(a, b)], vertices[max(a, b)])

    # outer edges: cut the outside region along a ray inside one gap
    outer = sorted(layout.outer, key=lambda vt: vt[1] - math.floor(vt[1]))
    if len(outer) >= 2:
        first = outer[0][1] - math.floor(outer[0][1])
        last = outer[-1][1] - math.floor(outer[-1][1])
        cut = (last + first + 1) / 2
        lin = {v: (t - cut) - math.floor(t - cut) for v, t in outer}
        us = sorted(lin.values())
        grid = [us[0]]
        for a, b in zip(us, us[1:]):
            pieces = resolution * max(1, math.ceil((b - a) * 16))
            grid.extend(a + (b - a) * Fraction(s, pieces) for s in range(1, pieces + 1))
        index = {u: i for i, u in enumerate(grid)}
        dirs = [_dir(cut + u) for u in grid]
        for p, q in combinations(layout.outer_ids, 2):
            up, uq = sorted((lin[p], lin[q]))
            pts = []
            for i in range(index[up], index[uq] + 1):
                u = grid[i]
                pts.append(_scale(R_OUTER + OUTER_BULGE * (u - up) * (uq - u), dirs[i]))
            a, b = (p, q) if p < q else (q, p)
            if lin[a] > lin[b]:
                pts.reverse()
            edges[(a, b)] = tuple(pts)

    for e, dlt in layout.delta.items():
        a, b = layout.annulus_ends(e)
        steps = 8 * resolution * max(1, math.ceil(abs(dlt) * 2))
        pts = [vertices[a]]
        for s in range(1, steps):
            t = Fraction(s, steps)
            pts.append(_scale(R_INNER + (R_OUTER - R_INNER) * t, _dir(turn[a] + dlt * t)))
        pts.append(vertices[b])
        if a > b:
            pts.reverse()
        edges[e] = tuple(pts)

    n = len(vertices)
    return Drawing(n, vertices, edges, "cylindrical", layout)


# -- shared entry points ---------------------------------------------------

Layout = Union[TwoPageLayout, CylindricalLayout]


def layout_crossings(layout: Layout) -> int:
    if isinstance(layout, TwoPageLayout):
        return crossings_two_page(layout)
    return crossings_cylindrical(layout)


def realize(layout: Layout, resolution: int = 1) -> Drawing:
    """Geometric drawing whose crossing count matches the layout's.

    Densifies up to MAX_DENSIFY times; never returns a drawing that is not
    good or that disagrees with the combinatorial count.
    """
    if resolution < 1:
        raise ValueError("resolution must be positive")
    want = layout_crossings(layout)
    builder = _realize_two_page if isinstance(layout, TwoPageLayout) else _realize_cylindrical
    res = resolution
    last = None
    for _ in range(MAX_DENSIFY + 1):
        d = builder(layout, res)
        report = validate_good_drawing(d)
        if report.ok and len(d.analysis().crossings) == want:
            return d
        last = report if not report.ok else f"{len(d.analysis().crossings)} != {want}"
        res *= 2
    raise FidelityError(f"realization failed at resolution {res // 2}: {last}")


def blazek_koman(n: int) -> tuple[TwoPageLayout, Drawing]:
    layout = blazek_koman_layout(n)
    return layout, realize(layout)


def harary_hill(n: int) -> tuple[CylindricalLayout, Drawing]:
    layout = harary_hill_layout(n)
    return layout, realize(layout)


def convex(n: int) -> Drawing:
    """Straight-line K_n on points (x_i, x_i^2) of the parabola.

    x_i = i + i^2/(16n^3 + 1) for i = 0..n-1.  The exact integer points have
    three concurrent diagonals from n = 9 on; the tiny quadratic shift
    removes them and keeps every point on the parabola (so in convex
    position).
    """
    _need_n(n)
    xs = [_spine_x(i, n) for i in range(n)]
    verts = {i + 1: (x, x * x) for i, x in enumerate(xs)}
    edges = {(u, v): (verts[u], verts[v]) for u, v in combinations(sorted(verts), 2)}
    return Drawing(n, verts, edges, "convex")


# -- class predicates ------------------------------------------------------


def _x_order(d: Drawing) -> list[int]:
    xs = [p[0] for p in d.vertices.values()]
    if len(set(xs)) != len(xs):
        raise ClassificationError("two vertices share an x-coordinate")
    return sorted(d.vertices, key=lambda v: d.vertices[v][0])


def is_monotone(d: Drawing) -> bool:
    """Every edge meets each vertical line at most once."""
    _x_order(d)
    for pts in d.edges.values():
        steps = [b[0] - a[0] for a, b in zip(pts, pts[1:])]
        if not (all(s > 0 for s in steps) or all(s < 0 for s in steps)):
            return False
    if not is_x_bounded(d):
        raise AssertionError("monotone drawing that is not x-bounded")
    return True


def is_x_bounded(d: Drawing) -> bool:
    """Every edge stays in the closed strip spanned by its endpoints."""
    _x_order(d)
    for (u, v), pts in d.edges.items():
        lo, hi = sorted((d.vertices[u][0], d.vertices[v][0]))
        if any(not lo <= p[0] <= hi for p in pts):
            return False
    return True


def x_order(d: Drawing) -> list[int]:
    return _x_order(d)


def ensure_good(d: Drawing) -> Drawing:
    report = validate_good_drawing(d)
    if not report.ok:
        raise InvalidDrawingError(report)
    return d


__all__ = [
    "FidelityError",
    "ClassificationError",
    "StructuralError",
    "blazek_koman",
    "blazek_koman_layout",
    "harary_hill",
    "harary_hill_layout",
    "convex",
    "random_two_page",
    "random_cylindrical",
    "realize",
    "layout_crossings",
    "is_monotone",
    "is_x_bounded",
    "x_order",
]
