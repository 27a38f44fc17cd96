"""Planarization of good drawings and face queries.

Nodes are the original vertices plus crossing points; an arc is the piece of
one edge between consecutive nodes, kept as a point list so polyline bends
do not become nodes.  Faces are traced with the face on the left of each
half-edge, so bounded faces come out counter-clockwise and the unbounded
face clockwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .drawing import Drawing, EdgeKey, StructuralError, require_good
from .geometry import (
    Point,
    angle_key,
    cross,
    direction,
    on_segment,
    polyline_area2,
    polyline_winding,
)

NodeKey = tuple  # ("v", vertex_id) or ("x", crossing_index)


class AmbiguousFaceError(ValueError):
    """A face reference point lies on the drawing itself."""


class FaceError(ValueError):
    """A face query's precondition does not hold."""


@dataclass(frozen=True)
class FaceRef:
    """Designated face: the unbounded one, or the face holding ``point``."""

    point: Point | None = None

    @property
    def is_unbounded(self) -> bool:
        return self.point is None

    def __str__(self) -> str:
        if self.point is None:
            return "unbounded"
        return f"({self.point[0]}, {self.point[1]})"


UNBOUNDED = FaceRef()


@dataclass(frozen=True)
class Arc:
    edge: EdgeKey
    tail: NodeKey
    head: NodeKey
    points: tuple[Point, ...]


@dataclass
class Arrangement:
    nodes: dict[NodeKey, Point]
    arcs: list[Arc]
    # half-edge h = 2*arc (tail->head) or 2*arc+1 (head->tail)
    rotation: dict[NodeKey, list[int]]
    faces: list[list[int]]
    face_of: list[int]
    unbounded_face: int
    vertex_faces: dict[int, set[int]]

    def half_points(self, h: int) -> tuple[Point, ...]:
        pts = self.arcs[h >> 1].points
        return pts if h % 2 == 0 else pts[::-1]

    def half_tail(self, h: int) -> NodeKey:
        a = self.arcs[h >> 1]
        return a.tail if h % 2 == 0 else a.head

    def face_polygon(self, f: int) -> list[Point]:
        out: list[Point] = []
        for h in self.faces[f]:
            out.extend(self.half_points(h)[:-1])
        return out

    def face_vertices(self, f: int) -> frozenset[int]:
        return frozenset(
            self.half_tail(h)[1] for h in self.faces[f] if self.half_tail(h)[0] == "v"
        )

    def euler_characteristic(self) -> int:
        return len(self.nodes) - len(self.arcs) + len(self.faces)

    def on_drawing(self, p: Point) -> bool:
        for arc in self.arcs:
            for a, b in zip(arc.points, arc.points[1:]):
                if on_segment(p, a, b):
                    return True
        return False

    def locate(self, ref: FaceRef) -> int:
        """Face id of the designated face."""
        if ref.is_unbounded:
            return self.unbounded_face
        w = ref.point
        if self.on_drawing(w):
            raise AmbiguousFaceError(f"reference point {ref} lies on the drawing")
        for f in range(len(self.faces)):
            if f == self.unbounded_face:
                continue
            if polyline_winding(self.face_polygon(f) + [self.face_polygon(f)[0]], w) != 0:
                return f
        return self.unbounded_face


def planarize(d: Drawing) -> Arrangement:
    an = require_good(d)
    nodes: dict[NodeKey, Point] = {("v", v): p for v, p in d.vertices.items()}
    # crossing points listed per edge with their position along the polyline
    along: dict[EdgeKey, list[tuple[int, Fraction, NodeKey, Point]]] = {e: [] for e in d.edges}
    for idx, ((e, f), (p, he, hf)) in enumerate(sorted(an.crossings.items())):
        key = ("x", idx)
        nodes[key] = p
        for edge, hit in ((e, he), (f, hf)):
            seg, t = hit.seg, hit.t
            if t == 1:
                seg, t = seg + 1, Fraction(0)
            along[edge].append((seg, t, key, p))

    arcs: list[Arc] = []
    for e, pts in d.edges.items():
        marks = sorted(along[e], key=lambda m: (m[0], m[1]))
        cur_node: NodeKey = ("v", e[0])
        cur_pts: list[Point] = [pts[0]]
        k = 0  # index of the last polyline point already emitted
        for seg, t, key, p in marks:
            while k < seg:
                k += 1
                if pts[k] != cur_pts[-1]:
                    cur_pts.append(pts[k])
            if p != cur_pts[-1]:
                cur_pts.append(p)
            arcs.append(Arc(e, cur_node, key, tuple(cur_pts)))
            cur_node, cur_pts = key, [p]
        for q in pts[k + 1:]:
            cur_pts.append(q)
        arcs.append(Arc(e, cur_node, ("v", e[1]), tuple(cur_pts)))

    rotation: dict[NodeKey, list[int]] = {key: [] for key in nodes}
    for i, arc in enumerate(arcs):
        rotation[arc.tail].append(2 * i)
        rotation[arc.head].append(2 * i + 1)

    def first_dir(h: int) -> Point:
        pts = arcs[h >> 1].points
        return direction(pts[0], pts[1]) if h % 2 == 0 else direction(pts[-1], pts[-2])

    for key, hs in rotation.items():
        hs.sort(key=lambda h: angle_key(first_dir(h)))
    position = {h: (key, i) for key, hs in rotation.items() for i, h in enumerate(hs)}

    def head(h: int) -> NodeKey:
        a = arcs[h >> 1]
        return a.head if h % 2 == 0 else a.tail

    def nxt(h: int) -> int:
        twin = h ^ 1
        key, i = position[twin]
        hs = rotation[key]
        return hs[(i - 1) % len(hs)]

    face_of = [-1] * (2 * len(arcs))
    faces: list[list[int]] = []
    for h0 in range(2 * len(arcs)):
        if face_of[h0] != -1:
            continue
        cycle = []
        h = h0
        while face_of[h] == -1:
            face_of[h] = len(faces)
            cycle.append(h)
            h = nxt(h)
        faces.append(cycle)

    arr = Arrangement(nodes, arcs, rotation, faces, face_of, -1, {})
    if faces:
        areas = [polyline_area2(arr.face_polygon(f) + [arr.face_polygon(f)[0]]) for f in range(len(faces))]
        arr.unbounded_face = min(range(len(faces)), key=lambda f: areas[f])
        negatives = sum(1 for a in areas if a < 0)
        if negatives > 1:
            raise AssertionError("arrangement has more than one clockwise face")
    else:
        arr.unbounded_face = 0
        faces.append([])
    for v in d.vertices:
        arr.vertex_faces[v] = {face_of[h] for h in rotation[("v", v)]} or {arr.unbounded_face}
    if len(nodes) - len(arcs) + len(faces) != 2:
        raise AssertionError("Euler relation fails; arrangement is disconnected or corrupt")
    return arr


def boundary_vertices(a: Arrangement, f: FaceRef) -> frozenset[int]:
    face = a.locate(f)
    if not a.faces[face]:
        # a single isolated vertex: it bounds the only face
        return frozenset(k[1] for k in a.nodes if k[0] == "v")
    return a.face_vertices(face)


def induced_boundary_order(d: Drawing, x: int, f: FaceRef, arr: Arrangement | None = None) -> list[int]:
    """Other vertices in the order their edges leave x, counter-clockwise.

    The sequence starts right after the sector of x that belongs to the
    designated face and ends right before it.
    """
    arr = planarize(d) if arr is None else arr
    face = arr.locate(f)
    hs = arr.rotation[("v", x)]
    if len(hs) <= 1:
        if face not in arr.vertex_faces[x]:
            raise FaceError(f"vertex {x} is not on the boundary of face {f}")
        return [arr.arcs[h >> 1].edge[0] + arr.arcs[h >> 1].edge[1] - x for h in hs]
    starts = [i for i, h in enumerate(hs) if arr.face_of[h] == face]
    if not starts:
        raise FaceError(f"vertex {x} is not on the boundary of face {f}")
    i = starts[0]
    ordered = hs[i + 1:] + hs[:i + 1]
    out = []
    for h in ordered:
        u, v = arr.arcs[h >> 1].edge
        out.append(v if u == x else u)
    return out


def seat_point_left(d: Drawing, u: int, v: int) -> Point:
    """A point strictly inside the face on the left of edge uv, next to u.

    Starts beside the first piece of the edge leaving u and halves the offset
    until the connecting segment meets nothing.
    """
    an = require_good(d)
    pts = d.polyline(u, v)
    a, b = pts[0], pts[1]
    # nearest crossing on the first segment bounds the usable stretch
    key = (u, v) if u < v else (v, u)
    stop = Fraction(1)
    for (e, g), (p, he, hg) in an.crossings.items():
        if key in (e, g) and on_segment(p, a, b) and p != a:
            t = (p[0] - a[0]) / (b[0] - a[0]) if b[0] != a[0] else (p[1] - a[1]) / (b[1] - a[1])
            stop = min(stop, t)
    t = stop / 2
    m = (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))
    dx, dy = direction(a, b)
    normal = (-dy, dx)
    eps = Fraction(1)
    all_segments = [(s0, s1) for poly in d.edges.values() for s0, s1 in zip(poly, poly[1:])]
    for _ in range(200):
        q = (m[0] + eps * normal[0], m[1] + eps * normal[1])
        if not any(_touches_beyond(m, q, s0, s1) for s0, s1 in all_segments):
            return q
        eps /= 2
    raise AssertionError("could not seat a reference point")


def _touches_beyond(m: Point, q: Point, s0: Point, s1: Point) -> bool:
    """Does segment s0s1 meet segment mq anywhere except at m itself?"""
    if max(s0[0], s1[0]) < min(m[0], q[0]) or min(s0[0], s1[0]) > max(m[0], q[0]):
        return False
    if max(s0[1], s1[1]) < min(m[1], q[1]) or min(s0[1], s1[1]) > max(m[1], q[1]):
        return False
    from .geometry import intersect_segments

    res = intersect_segments(m, q, s0, s1)
    if res is None:
        return False
    if res[0] == "overlap":
        return True
    return res[1] != m or cross(s0, s1, q) == 0
