from fractions import Fraction as F

import pytest

from crosslab.arrangement import UNBOUNDED, FaceRef, planarize
from crosslab.constructions import blazek_koman, convex, harary_hill, random_two_page, realize
from crosslab.drawing import StructuralError, crossing_count, straight_line_drawing
from crosslab.kedges import zeta
from crosslab.shelling import (
    PerturbationError,
    check_lemma_cycle,
    find_crossing_free_cycle,
    lemma_witness,
    theorem1_pipeline,
    verify_shelling_direct,
)


def triangle():
    return straight_line_drawing({1: (F(0), F(0)), 2: (F(4), F(0)), 3: (F(0), F(4))})


def test_lemma_cycle_examples():
    assert check_lemma_cycle(triangle(), [1, 2, 3]).passed
    assert check_lemma_cycle(blazek_koman(8)[1], list(range(1, 9))).passed
    w = check_lemma_cycle(convex(4), [1, 2, 4])
    assert not w.passed
    assert any(v.edge == (2, 4) and v.crossing_edge == (1, 3) for v in w.violations)


def test_lemma_cycle_rejects_repeats():
    with pytest.raises(StructuralError):
        check_lemma_cycle(convex(5), [1, 2, 2])
    with pytest.raises(StructuralError):
        check_lemma_cycle(convex(5), [1, 2])


def test_cycle_search_examples():
    _, hh = harary_hill(10)
    cyc = find_crossing_free_cycle(hh, 5)
    assert sorted(cyc) == [1, 2, 3, 4, 5]
    _, bk = blazek_koman(8)
    assert len(find_crossing_free_cycle(bk, 8)) == 8
    assert find_crossing_free_cycle(convex(5), 6) is None
    with pytest.raises(ValueError):
        find_crossing_free_cycle(convex(5), 2)


def test_cycle_search_budget():
    _, bk = blazek_koman(8)
    assert find_crossing_free_cycle(bk, 8, budget=2) is None


def test_direct_examples():
    _, bk = blazek_koman(8)
    cert = verify_shelling_direct(bk, list(range(1, 9)), UNBOUNDED)
    assert cert.valid and cert.s == 8 and len(cert.pairs) == 28


def test_direct_bounded_face_not_at_v1():
    d = convex(4)
    arr = planarize(d)
    # a bounded face whose corners do not include vertex 1
    for f in range(len(arr.faces)):
        if f != arr.unbounded_face and 1 not in arr.face_vertices(f):
            poly = arr.face_polygon(f)
            break
    cx = sum(p[0] for p in poly) / len(poly)
    cy = sum(p[1] for p in poly) / len(poly)
    cert = verify_shelling_direct(d, [1, 2, 3, 4], FaceRef((cx, cy)))
    assert not cert.valid
    bad = [(p.i, p.j) for p in cert.pairs if not (p.vi_on_boundary and p.vj_on_boundary)]
    # K_4 itself: vertex 1 is not a corner of the chosen face
    assert (1, 4) in bad


def test_single_vertex_shelling():
    cert = verify_shelling_direct(convex(5), [3], UNBOUNDED)
    assert cert.valid


def test_witness_on_drawing():
    with pytest.raises(PerturbationError):
        verify_shelling_direct(triangle(), [1, 2], FaceRef((F(2), F(0))))


def test_certificate_json_shape():
    d = harary_hill(6)[1]
    cyc = find_crossing_free_cycle(d, 3)
    js = verify_shelling_direct(d, cyc, lemma_witness(d, cyc)).to_json()
    assert set(js) == {"S", "witness", "pairs", "valid"}
    assert set(js["witness"]) == {"x", "y"} and "/" in js["witness"]["x"]


def test_pipeline_examples():
    v = theorem1_pipeline(harary_hill(10)[1])
    assert v.conclusion == "conclusive" and v.s == 5 and v.crossings == 60 == v.zeta
    assert all(b.passed for b in v.bound_chain)
    v = theorem1_pipeline(blazek_koman(9)[1])
    assert v.conclusion == "conclusive" and v.s == 9 and v.crossings == 36 == zeta(9)


@pytest.mark.parametrize("seed", range(6))
def test_pipeline_random_two_page(seed):
    v = theorem1_pipeline(realize(random_two_page(9, seed)))
    assert v.conclusion == "conclusive"
    assert v.crossings >= 36


def test_pipeline_starved_search_is_not_a_refutation():
    # with almost no search budget the pipeline may give up, but never claims a violation
    v = theorem1_pipeline(convex(8), cycle_budget=1)
    assert v.conclusion in ("conclusive", "inconclusive")
    assert v.conclusion != "violated"


def test_lemma_soundness_on_small_families():
    for n in range(4, 9):
        for d in (blazek_koman(n)[1], harary_hill(n)[1], convex(n)):
            cyc = find_crossing_free_cycle(d, 3)
            if cyc and check_lemma_cycle(d, cyc).passed:
                assert verify_shelling_direct(d, cyc, lemma_witness(d, cyc)).valid


def test_prefix_suffix_window_stays_valid():
    d = blazek_koman(8)[1]
    S = list(range(1, 9))
    for a in range(0, 3):
        for b in range(6, 9):
            from crosslab.drawing import delete_vertices

            sub = delete_vertices(d, set(S[:a]) | set(S[b:]))
            assert verify_shelling_direct(sub, S[a:b], UNBOUNDED).valid
