"""Drawings of complete graphs as exact-coordinate polylines.

A :class:`Drawing` is immutable.  Its intersection analysis (goodness
violations plus crossing points) is computed once, on first use, and reused
by every query; sub-drawings produced by :func:`delete_vertices` inherit the
restriction of their parent's analysis because the polylines are unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from types import MappingProxyType
from typing import Any, Iterable, Mapping, Sequence

from .geometry import (
    Point,
    alternate,
    direction,
    intersect_segments,
    on_segment,
    overlapping_pairs,
    segment_bboxes,
)

EdgeKey = tuple[int, int]

CLASS_TAGS = ("generic", "two-page", "cylindrical", "convex", "spherical-projected")


class StructuralError(ValueError):
    """The input is not even a well-formed drawing of K_n."""


class InvalidDrawingError(ValueError):
    """The drawing is well-formed but not a good drawing."""

    def __init__(self, report: "GoodnessReport"):
        self.report = report
        lines = "; ".join(str(v) for v in report.violations[:5])
        more = "" if len(report.violations) <= 5 else f" (+{len(report.violations) - 5} more)"
        super().__init__(f"not a good drawing: {lines}{more}")


def edge_key(u: int, v: int) -> EdgeKey:
    if u == v:
        raise StructuralError(f"loop at vertex {u}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Violation:
    kind: str
    edges: tuple[EdgeKey, ...]
    point: Point | None = None
    detail: str = ""

    def __str__(self) -> str:
        where = "" if self.point is None else f" at ({self.point[0]}, {self.point[1]})"
        extra = f" ({self.detail})" if self.detail else ""
        return f"{self.kind} {list(self.edges)}{where}{extra}"


@dataclass(frozen=True)
class GoodnessReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return bool(self.violations)


@dataclass(frozen=True)
class CrossingRecord:
    edges: tuple[EdgeKey, EdgeKey]
    point: Point
    multiplicity: int = 1


@dataclass(frozen=True)
class _Hit:
    # location of a crossing point on one polyline: segment index and parameter
    seg: int
    t: Fraction


@dataclass
class _Analysis:
    violations: list[Violation]
    # (e, f) with e < f  ->  point, location on e, location on f
    crossings: dict[tuple[EdgeKey, EdgeKey], tuple[Point, _Hit, _Hit]]

    def restrict(self, keep: frozenset[int]) -> "_Analysis":
        crossings = {
            pair: rec
            for pair, rec in self.crossings.items()
            if pair[0][0] in keep and pair[0][1] in keep and pair[1][0] in keep and pair[1][1] in keep
        }
        return _Analysis([], crossings)


@dataclass(frozen=True)
class Drawing:
    """A drawing of K_n; polylines are stored oriented from the smaller id."""

    n: int
    vertices: Mapping[int, Point]
    edges: Mapping[EdgeKey, tuple[Point, ...]]
    class_tag: str = "generic"
    layout: Any = None
    _analysis: Any = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        verts = {int(k): (Fraction(p[0]), Fraction(p[1])) for k, p in self.vertices.items()}
        edges = {}
        for key, pts in self.edges.items():
            u, v = key
            pts = tuple((Fraction(p[0]), Fraction(p[1])) for p in pts)
            if u > v:
                u, v, pts = v, u, pts[::-1]
            edges[(u, v)] = pts
        object.__setattr__(self, "vertices", MappingProxyType(dict(sorted(verts.items()))))
        object.__setattr__(self, "edges", MappingProxyType(dict(sorted(edges.items()))))
        if self.class_tag not in CLASS_TAGS:
            raise StructuralError(f"unknown class tag {self.class_tag!r}")

    @property
    def vertex_ids(self) -> tuple[int, ...]:
        return tuple(self.vertices)

    def polyline(self, u: int, v: int) -> tuple[Point, ...]:
        """The polyline of edge uv, oriented from u to v."""
        pts = self.edges[edge_key(u, v)]
        return pts if u < v else pts[::-1]

    def check_structure(self) -> None:
        ids = list(self.vertices)
        if len(ids) != self.n:
            raise StructuralError(f"expected {self.n} vertices, found {len(ids)}")
        positions = set(self.vertices.values())
        if len(positions) != len(ids):
            raise StructuralError("two vertices share a position")
        expected = {edge_key(u, v) for u, v in combinations(ids, 2)}
        if set(self.edges) != expected:
            missing = sorted(expected - set(self.edges))[:3]
            extra = sorted(set(self.edges) - expected)[:3]
            raise StructuralError(f"edge set is not K_{self.n} (missing {missing}, extra {extra})")
        for (u, v), pts in self.edges.items():
            if len(pts) < 2:
                raise StructuralError(f"edge {u}-{v}: polyline needs at least 2 points")
            if pts[0] != self.vertices[u] or pts[-1] != self.vertices[v]:
                raise StructuralError(f"edge {u}-{v}: polyline endpoints do not match its vertices")
            for a, b in zip(pts, pts[1:]):
                if a == b:
                    raise StructuralError(f"edge {u}-{v}: duplicate consecutive point {a}")

    def analysis(self) -> _Analysis:
        if self._analysis is None:
            self.check_structure()
            object.__setattr__(self, "_analysis", _analyze(self))
        return self._analysis


def _germs(pts: Sequence[Point], hit: _Hit) -> list[Point]:
    k, t = hit.seg, hit.t
    if t == 0 or t == 1:
        idx = k + int(t)
        here = pts[idx]
        out = []
        if idx > 0:
            out.append(direction(here, pts[idx - 1]))
        if idx < len(pts) - 1:
            out.append(direction(here, pts[idx + 1]))
        return out
    d = direction(pts[k], pts[k + 1])
    return [d, (-d[0], -d[1])]


def _analyze(d: Drawing) -> _Analysis:
    violations: list[Violation] = []
    segs: list[tuple[EdgeKey, int, Point, Point]] = []
    for key, pts in d.edges.items():
        for k in range(len(pts) - 1):
            segs.append((key, k, pts[k], pts[k + 1]))
    if not segs:
        return _Analysis([], {})
    boxes = segment_bboxes((a, b) for _, _, a, b in segs)

    hits: dict[tuple[EdgeKey, EdgeKey], dict[Point, tuple[_Hit, _Hit]]] = {}
    self_bad: set[EdgeKey] = set()
    for i, j in overlapping_pairs(boxes):
        e, k1, a, b = segs[i]
        f, k2, c, dd = segs[j]
        res = intersect_segments(a, b, c, dd)
        if res is None:
            continue
        if e == f:
            if abs(k1 - k2) == 1:
                if res[0] == "overlap":
                    self_bad.add(e)
                    violations.append(Violation("self-crossing", (e,), res[1], "polyline folds back"))
            elif e not in self_bad:
                self_bad.add(e)
                violations.append(Violation("self-crossing", (e,), res[1]))
            continue
        if res[0] == "overlap":
            violations.append(Violation("overlap", tuple(sorted((e, f))), res[1], "collinear overlap"))
            continue
        _, p, t, u = res
        if e > f:
            e, f, k1, k2, t, u = f, e, k2, k1, u, t
        hits.setdefault((e, f), {}).setdefault(p, (_Hit(k1, t), _Hit(k2, u)))

    vertex_at = {p: v for v, p in d.vertices.items()}
    crossings: dict[tuple[EdgeKey, EdgeKey], tuple[Point, _Hit, _Hit]] = {}
    through: dict[Point, set[EdgeKey]] = {}
    for (e, f), pts in sorted(hits.items()):
        shared = set(e) & set(f)
        real = []
        for p, (he, hf) in pts.items():
            if p in vertex_at:
                v = vertex_at[p]
                if v in shared:
                    continue
                # v is an endpoint of one edge and lies on the other
                violations.append(Violation("through-vertex", (e, f), p, f"vertex {v}"))
                continue
            verdict = alternate(_germs(d.edges[e], he), _germs(d.edges[f], hf))
            if verdict is None:
                violations.append(Violation("overlap", (e, f), p, "germs coincide"))
            elif not verdict:
                violations.append(Violation("tangency", (e, f), p, "touching without crossing"))
            else:
                real.append((p, he, hf))
        if not real:
            continue
        if shared:
            violations.append(Violation("adjacent-crossing", (e, f), real[0][0]))
            continue
        if len(real) > 1:
            violations.append(
                Violation("multiple-crossing", (e, f), real[0][0], f"pair crosses {len(real)} times")
            )
            continue
        crossings[(e, f)] = real[0]
        through.setdefault(real[0][0], set()).update((e, f))

    for p, es in through.items():
        if len(es) >= 3:
            violations.append(Violation("concurrent", tuple(sorted(es)), p, f"{len(es)} edges through one point"))

    # edges passing through a vertex they are not incident to (including
    # passing back through their own endpoint)
    vids = list(d.vertices)
    vboxes = segment_bboxes((d.vertices[v], d.vertices[v]) for v in vids)
    for vi, si in _box_hits(vboxes, boxes):
        v = vids[vi]
        e, k, a, b = segs[si]
        p = d.vertices[v]
        if not on_segment(p, a, b):
            continue
        pts = d.edges[e]
        if (k == 0 and p == a and v == e[0]) or (k == len(pts) - 2 and p == b and v == e[1]):
            continue
        viol = Violation("through-vertex", (e,), p, f"vertex {v}")
        if viol not in violations:
            violations.append(viol)

    return _Analysis(violations, crossings)


def _box_hits(small, boxes):
    import numpy as np

    if len(small) == 0 or len(boxes) == 0:
        return []
    hit = (
        (small[:, None, 0] <= boxes[None, :, 2])
        & (boxes[None, :, 0] <= small[:, None, 2])
        & (small[:, None, 1] <= boxes[None, :, 3])
        & (boxes[None, :, 1] <= small[:, None, 3])
    )
    return list(zip(*np.nonzero(hit)))


def validate_good_drawing(d: Drawing) -> GoodnessReport:
    """Return every goodness violation; an empty report means d is good.

    Raises StructuralError for malformed input (wrong edge set, endpoints
    not matching, repeated consecutive points).
    """
    return GoodnessReport(tuple(d.analysis().violations))


def require_good(d: Drawing) -> _Analysis:
    an = d.analysis()
    if an.violations:
        raise InvalidDrawingError(GoodnessReport(tuple(an.violations)))
    return an


def compute_crossings_geometric(d: Drawing) -> tuple[list[CrossingRecord], int]:
    an = require_good(d)
    records = [CrossingRecord(pair, rec[0]) for pair, rec in sorted(an.crossings.items())]
    return records, len(records)


def crossing_count(d: Drawing) -> int:
    return len(require_good(d).crossings)


def crossings_by_edge(d: Drawing) -> dict[EdgeKey, list[EdgeKey]]:
    """For each edge, the edges that cross it (sorted)."""
    out: dict[EdgeKey, list[EdgeKey]] = {e: [] for e in d.edges}
    for e, f in require_good(d).crossings:
        out[e].append(f)
        out[f].append(e)
    for v in out.values():
        v.sort()
    return out


def delete_vertices(d: Drawing, removed: Iterable[int]) -> Drawing:
    """Sub-drawing on the remaining vertices, polylines untouched."""
    removed = frozenset(removed)
    unknown = removed - set(d.vertices)
    if unknown:
        raise StructuralError(f"unknown vertices {sorted(unknown)}")
    if not removed:
        return d
    keep = frozenset(d.vertices) - removed
    if not keep:
        raise StructuralError("cannot delete every vertex")
    layout = d.layout.restrict(keep) if d.layout is not None else None
    sub = Drawing(
        n=len(keep),
        vertices={v: p for v, p in d.vertices.items() if v in keep},
        edges={k: pts for k, pts in d.edges.items() if k[0] in keep and k[1] in keep},
        class_tag=d.class_tag,
        layout=layout,
    )
    if d._analysis is not None and not d._analysis.violations:
        object.__setattr__(sub, "_analysis", d._analysis.restrict(keep))
    return sub


def straight_line_drawing(points: Mapping[int, Point], class_tag: str = "generic") -> Drawing:
    """K_n with every edge a single segment."""
    ids = sorted(points)
    edges = {(u, v): (points[u], points[v]) for u, v in combinations(ids, 2)}
    return Drawing(len(ids), dict(points), edges, class_tag)
