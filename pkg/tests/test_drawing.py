import math
from fractions import Fraction as F
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from crosslab.arrangement import UNBOUNDED, AmbiguousFaceError, FaceError, FaceRef, boundary_vertices, induced_boundary_order, planarize
from crosslab.constructions import blazek_koman, convex, harary_hill
from crosslab.drawing import (
    Drawing,
    InvalidDrawingError,
    StructuralError,
    compute_crossings_geometric,
    crossing_count,
    delete_vertices,
    straight_line_drawing,
    validate_good_drawing,
)


def parabola(n):
    return straight_line_drawing({i + 1: (F(i), F(i * i)) for i in range(n)}, "convex")


def triangle():
    return straight_line_drawing({1: (F(0), F(0)), 2: (F(4), F(0)), 3: (F(0), F(4))})


def test_triangle_is_good():
    d = triangle()
    assert validate_good_drawing(d).ok
    assert compute_crossings_geometric(d) == ([], 0)


def test_convex_k4_one_crossing():
    d = parabola(4)
    assert validate_good_drawing(d).ok
    recs, total = compute_crossings_geometric(d)
    assert total == 1
    assert recs[0].edges == ((1, 3), (2, 4)) and recs[0].multiplicity == 1


def test_convex_k5_five_crossings():
    assert crossing_count(parabola(5)) == 5


def test_double_crossing_reported():
    sq = {1: (F(0), F(0)), 2: (F(4), F(0)), 3: (F(4), F(4)), 4: (F(0), F(4))}
    d = straight_line_drawing(sq)
    edges = dict(d.edges)
    # 1-3 zigzags across 2-4 three times instead of once
    edges[(1, 3)] = (sq[1], (F(7, 2), F(1)), (F(1), F(5, 2)), sq[3])
    bad = Drawing(4, sq, edges)
    kinds = {v.kind for v in validate_good_drawing(bad).violations}
    assert kinds == {"multiple-crossing"}
    with pytest.raises(InvalidDrawingError):
        crossing_count(bad)


def test_adjacent_crossing_reported():
    v = {1: (F(0), F(0)), 2: (F(4), F(0)), 3: (F(2), F(3))}
    edges = {
        (1, 2): (v[1], v[2]),
        (1, 3): (v[1], (F(3), F(-1)), v[3]),
        (2, 3): (v[2], v[3]),
    }
    kinds = {x.kind for x in validate_good_drawing(Drawing(3, v, edges)).violations}
    assert "adjacent-crossing" in kinds


def test_edge_through_vertex_reported():
    v = {1: (F(0), F(0)), 2: (F(2), F(0)), 3: (F(1), F(0)), 4: (F(1), F(5))}
    d = straight_line_drawing(v)
    kinds = {x.kind for x in validate_good_drawing(d).violations}
    assert "through-vertex" in kinds


def test_concurrency_reported():
    # regular hexagon-like: three long diagonals meet at the centre
    v = {1: (F(-2), F(0)), 2: (F(-1), F(-2)), 3: (F(1), F(-2)), 4: (F(2), F(0)), 5: (F(1), F(2)), 6: (F(-1), F(2))}
    kinds = {x.kind for x in validate_good_drawing(straight_line_drawing(v)).violations}
    assert "concurrent" in kinds


def test_duplicate_point_is_structural():
    d = triangle()
    edges = dict(d.edges)
    edges[(1, 2)] = (d.vertices[1], d.vertices[1], d.vertices[2])
    with pytest.raises(StructuralError):
        validate_good_drawing(Drawing(3, d.vertices, edges))


def test_missing_edge_is_structural():
    d = triangle()
    edges = dict(d.edges)
    del edges[(1, 2)]
    with pytest.raises(StructuralError):
        validate_good_drawing(Drawing(3, d.vertices, edges))


@pytest.mark.parametrize("n,faces", [(3, 2), (4, 5), (5, 12)])
def test_face_counts(n, faces):
    arr = planarize(parabola(n))
    assert len(arr.faces) == faces
    assert arr.euler_characteristic() == 2
    incidences = sum(len(f) for f in arr.faces)
    assert incidences == 2 * len(arr.arcs)


def test_boundary_vertices():
    assert boundary_vertices(planarize(triangle()), UNBOUNDED) == {1, 2, 3}
    assert boundary_vertices(planarize(parabola(5)), UNBOUNDED) == {1, 2, 3, 4, 5}
    d = parabola(4)
    arr = planarize(d)
    for f in range(len(arr.faces)):
        if f != arr.unbounded_face:
            assert len(arr.face_vertices(f)) == 2


def test_face_ref_on_drawing_is_ambiguous():
    d = triangle()
    with pytest.raises(AmbiguousFaceError):
        planarize(d).locate(FaceRef((F(2), F(0))))


def test_delete_vertices():
    d = parabola(5)
    assert delete_vertices(d, set()) is d
    sub = delete_vertices(d, {3})
    assert sub.n == 4 and crossing_count(sub) == 1
    with pytest.raises(StructuralError):
        delete_vertices(d, set(d.vertices))


def test_harary_hill_inner_k5():
    _, d = harary_hill(10)
    outer = set(d.layout.outer_ids)
    assert len(outer) == 5
    assert crossing_count(delete_vertices(d, outer)) == 5


def test_delete_commutes():
    d = blazek_koman(8)[1]
    a = delete_vertices(delete_vertices(d, {2}), {5, 7})
    b = delete_vertices(d, {2, 5, 7})
    assert compute_crossings_geometric(a) == compute_crossings_geometric(b)
    # fresh analysis of the same polylines agrees with the inherited one
    fresh = Drawing(b.n, b.vertices, b.edges, b.class_tag)
    assert compute_crossings_geometric(fresh) == compute_crossings_geometric(b)


def test_induced_order_small():
    d = triangle()
    assert induced_boundary_order(d, 1, UNBOUNDED) == [2, 3]
    d4 = parabola(4)
    order = induced_boundary_order(d4, 1, UNBOUNDED)
    assert {order[0], order[-1]} == {2, 4}


def _angular_oracle(d, x):
    """Other vertices sorted by the angle their first segment leaves x."""
    px, py = (float(c) for c in d.vertices[x])
    ang = {}
    for y in d.vertices:
        if y != x:
            qx, qy = (float(c) for c in d.polyline(x, y)[1])
            ang[y] = math.atan2(qy - py, qx - px)
    return sorted(ang, key=ang.get)


@pytest.mark.parametrize("n", [6, 8])
def test_induced_order_leftmost_vertex(n):
    # at the leftmost spine vertex the outer sector faces left, so the
    # induced order is the ccw angular order starting just above -pi
    _, d = blazek_koman(n)
    order = induced_boundary_order(d, 1, UNBOUNDED)
    assert order == _angular_oracle(d, 1)
    assert sorted(order) == list(range(2, n + 1))


def test_induced_order_requires_boundary_vertex():
    d = straight_line_drawing({1: (F(0), F(0)), 2: (F(10), F(0)), 3: (F(5), F(10)), 4: (F(5), F(3))})
    with pytest.raises(FaceError):
        induced_boundary_order(d, 4, UNBOUNDED)


def test_order_reverses_under_reflection():
    d = blazek_koman(7)[1]
    flip = Drawing(
        d.n,
        {v: (p[0], -p[1]) for v, p in d.vertices.items()},
        {e: tuple((x, -y) for x, y in pts) for e, pts in d.edges.items()},
    )
    for x in boundary_vertices(planarize(d), UNBOUNDED):
        assert induced_boundary_order(flip, x, UNBOUNDED) == induced_boundary_order(d, x, UNBOUNDED)[::-1]


affine = st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3),
                   st.integers(-5, 5), st.integers(-5, 5)).filter(lambda m: m[0] * m[3] - m[1] * m[2] > 0)


@settings(max_examples=25, deadline=None)
@given(affine, st.permutations(list(range(1, 8))))
def test_crossings_invariant_under_affine_maps_and_relabeling(m, perm):
    a, b, c, dd, tx, ty = m
    d = blazek_koman(7)[1]
    f = lambda p: (a * p[0] + b * p[1] + tx, c * p[0] + dd * p[1] + ty)
    relabel = dict(zip(range(1, 8), perm))
    moved = Drawing(
        d.n,
        {relabel[v]: f(p) for v, p in d.vertices.items()},
        {(relabel[u], relabel[v]): tuple(f(p) for p in pts) for (u, v), pts in d.edges.items()},
    )
    assert crossing_count(moved) == crossing_count(d) == 9


def test_generated_drawings_are_good():
    for n in range(3, 9):
        assert validate_good_drawing(convex(n)).ok
        assert validate_good_drawing(blazek_koman(n)[1]).ok
        assert validate_good_drawing(harary_hill(n)[1]).ok
