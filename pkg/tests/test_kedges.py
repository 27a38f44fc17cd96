from fractions import Fraction as F
from itertools import combinations
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from crosslab.arrangement import UNBOUNDED, FaceError, FaceRef
from crosslab.constructions import blazek_koman, convex, harary_hill, random_two_page, realize
from crosslab.drawing import crossing_count, delete_vertices, straight_line_drawing
from crosslab.geometry import orient
from crosslab.kedges import (
    CumulativeTable,
    DomainError,
    KEdgeSpectrum,
    SideOracle,
    check_identity2,
    check_prop_lastpoint,
    check_recurrence,
    check_shellable_bound,
    crossings_from_spectrum,
    cumulative,
    invariant_incident_count,
    invariant_leq_k_count,
    lower_bound_from_table,
    side_of,
    spectrum,
    zeta,
)
from crosslab.shelling import lemma_witness


def tri(r):
    return straight_line_drawing({1: (F(0), F(0)), 2: (F(1), F(0)), 3: r})


def brute_k(d, among=None):
    """k of every edge of a straight-line drawing, by orientation tests."""
    ids = sorted(among or d.vertices)
    out = {}
    for p, q in combinations(ids, 2):
        left = sum(1 for r in ids if r not in (p, q) and orient(d.vertices[p], d.vertices[q], d.vertices[r]) > 0)
        out[(p, q)] = min(left, len(ids) - 2 - left)
    return out


def test_side_of_triangle():
    assert side_of(tri((F(0), F(1))), 1, 2, 3) == "left"
    assert side_of(tri((F(0), F(-1))), 1, 2, 3) == "right"


def test_side_of_antisymmetric():
    d = blazek_koman(7)[1]
    for p, q, r in combinations(range(1, 8), 3):
        assert side_of(d, p, q, r) != side_of(d, q, p, r)


def test_hull_edge_sees_everything_on_one_side():
    d = convex(4)
    assert side_of(d, 1, 2, 3) == side_of(d, 1, 2, 4)


def test_side_flips_with_bounded_witness():
    # inside the triangle the roles of the two discs swap
    d = tri((F(0), F(1)))
    assert side_of(d, 1, 2, 3, FaceRef((F(1, 4), F(1, 4)))) == "right"


@pytest.mark.parametrize("n,counts", [(3, (3,)), (4, (4, 2)), (5, (5, 5)), (6, (6, 6, 3))])
def test_convex_spectrum(n, counts):
    assert spectrum(convex(n)).counts == counts


@pytest.mark.parametrize("n", range(4, 12))
def test_convex_spectrum_closed_form(n):
    s = spectrum(convex(n)).counts
    assert sum(s) == comb(n, 2)
    for k in range(0, (n + 1) // 2 - 1):
        assert s[k] == n
    if n % 2 == 0:
        assert s[n // 2 - 1] == n // 2


@pytest.mark.parametrize("n", [5, 7, 8])
def test_spectrum_matches_orientation_oracle(n):
    d = convex(n)
    oracle = SideOracle(d, UNBOUNDED)
    assert oracle.edge_k_values(d.vertex_ids) == brute_k(d)


def test_cumulative_examples():
    t = cumulative(spectrum(convex(6)))
    assert t.leqleq[:2] == (6, 18)
    assert cumulative(KEdgeSpectrum(3, (3,))).leqleq == (3,)
    t6 = cumulative(spectrum(blazek_koman(6)[1]))
    assert t6.leqleq[:2] == (3, 12)


def test_spectrum_sum_enforced():
    with pytest.raises((ValueError, AssertionError)):
        KEdgeSpectrum(4, (4, 1))


@pytest.mark.parametrize("n,z", [(1, 0), (3, 0), (4, 0), (5, 1), (6, 3), (7, 9), (8, 18), (10, 60), (12, 150)])
def test_zeta(n, z):
    assert zeta(n) == z


def test_crossings_from_spectrum_examples():
    assert crossings_from_spectrum(cumulative(spectrum(convex(4)))) == 1
    assert crossings_from_spectrum(cumulative(spectrum(convex(5)))) == 5
    assert crossings_from_spectrum(cumulative(spectrum(blazek_koman(6)[1]))) == 3
    with pytest.raises(DomainError):
        crossings_from_spectrum(cumulative(KEdgeSpectrum(2, (1,))))


def test_identity_examples():
    rep = check_identity2(tri((F(0), F(1))))
    assert (rep.crossings, rep.formula) == (0, 0)
    rep = check_identity2(harary_hill(8)[1])
    assert rep.crossings == rep.formula == 18


def test_identity_random_two_page_n9():
    for seed in range(50):
        assert check_identity2(realize(random_two_page(9, 1000 + seed))).equal


def test_identity_with_bounded_face():
    d = blazek_koman(8)[1]
    from crosslab.shelling import find_crossing_free_cycle

    cycle = find_crossing_free_cycle(d, 4)
    rep = check_identity2(d, lemma_witness(d, cycle))
    assert rep.equal


@settings(max_examples=15, deadline=None)
@given(st.integers(5, 9), st.integers(0, 10 ** 6))
def test_identity_property(n, seed):
    assert check_identity2(realize(random_two_page(n, seed))).equal


def test_invariant_count_domain():
    # n = 3 still allows k = 0: the edge opposite y is a 0-edge before and after
    assert invariant_leq_k_count(convex(3), 1, 0) == 1
    with pytest.raises(DomainError):
        invariant_leq_k_count(convex(3), 1, 1)
    with pytest.raises(DomainError):
        invariant_leq_k_count(convex(6), 1, 2)


def brute_invariant(d, y, k):
    full = brute_k(d)
    rest = brute_k(d, [v for v in d.vertices if v != y])
    return sum(1 for e, j in rest.items() if full[e] == j and j <= k)


def test_invariant_count_convex():
    d5 = convex(5)
    assert invariant_leq_k_count(d5, 3, 0) >= 2
    d6 = convex(6)
    for y in d6.vertices:
        assert invariant_leq_k_count(d6, y, 1) == brute_invariant(d6, y, 1)


def test_invariant_incident_lower_bound():
    # |U| = 0, so i = 1: at least k + 1 invariant <=k-edges at each hull vertex
    d = convex(7)
    for x in d.vertices:
        for y in d.vertices:
            if x != y:
                for k in range(0, 3):
                    assert invariant_incident_count(d, x, y, (), k) >= k + 1
    with pytest.raises(DomainError):
        invariant_incident_count(d, 1, 2, {3, 4}, 1)


def test_prop_lastpoint_examples():
    d = convex(6)
    rep = check_prop_lastpoint(d, 1)
    assert rep.passed
    ks = SideOracle(d, UNBOUNDED)
    order = rep.order
    assert [ks.k_value(1, v, d.vertex_ids) for v in order] == [0, 1, 2, 1, 0]
    assert check_prop_lastpoint(blazek_koman(8)[1], 1).passed


def test_prop_lastpoint_needs_boundary_vertex():
    d = straight_line_drawing({1: (F(0), F(0)), 2: (F(10), F(0)), 3: (F(5), F(10)), 4: (F(5), F(3))})
    with pytest.raises(FaceError):
        check_prop_lastpoint(d, 4)


def test_recurrence_examples():
    assert check_recurrence(convex(5), [1, 2, 3, 4, 5], 1).holds
    d = harary_hill(8)[1]
    outer = list(d.layout.outer_ids)
    cyc = lemma_witness(d, outer)
    assert check_recurrence(d, outer, 1, cyc).holds
    assert check_recurrence(convex(4), [4], 1).holds


def brute_leqleq(kvals, k):
    return sum(k + 1 - j for j in kvals if j <= k)


def test_recurrence_terms_by_brute_force():
    d = convex(7)
    order = [1, 2, 3, 4, 5, 6, 7]
    trace = check_recurrence(d, order, 2)
    for step in trace.steps:
        big = order[: step.r]
        small = order[: step.r - 1]
        assert step.lhs == brute_leqleq(brute_k(d, big).values(), 2) if len(big) >= 2 else True
        if len(small) >= 2:
            assert step.prev == brute_leqleq(brute_k(d, small).values(), 1)


def test_shellable_bound_examples():
    bk = check_shellable_bound(blazek_koman(6)[1], UNBOUNDED, 1)
    assert [(b.lhs, b.rhs) for b in bk] == [(3, 3), (12, 12)] and all(b.passed for b in bk)
    cv = check_shellable_bound(convex(6), UNBOUNDED, 1)
    assert [(b.lhs, b.rhs) for b in cv] == [(6, 3), (18, 12)]
    with pytest.raises(DomainError):
        check_shellable_bound(convex(6), UNBOUNDED, 2)


@pytest.mark.parametrize("n,z", [(5, 1), (6, 3), (8, 18)])
def test_lower_bound_examples(n, z):
    assert lower_bound_from_table(n) == z


def test_lower_bound_range():
    for n in range(3, 101):
        assert lower_bound_from_table(n) == zeta(n)
