import os
import subprocess
import sys
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from crosslab import _kernels_py, kernels

try:
    from crosslab import _kernels as compiled
except ImportError:
    compiled = None

needs_compiled = pytest.mark.skipif(compiled is None, reason="compiled kernels not built")


def random_graph(m, p, seed):
    rng = np.random.default_rng(seed)
    adj = [[] for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            if rng.random() < p:
                adj[i].append(j)
                adj[j].append(i)
    indptr = np.zeros(m + 1, dtype=np.int64)
    indptr[1:] = np.cumsum([len(a) for a in adj])
    indices = np.array([w for a in adj for w in sorted(a)], dtype=np.int64)
    return indptr, indices


def test_splitmix_known_value():
    # reference output of splitmix64 seeded with 0
    assert _kernels_py.splitmix64(0) == 0xE220A8397B1DCDAF


def test_random_pages_deterministic():
    assert _kernels_py.random_pages(50, 9) == _kernels_py.random_pages(50, 9)
    assert _kernels_py.random_pages(50, 9) != _kernels_py.random_pages(50, 10)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 11), st.floats(0.1, 0.9), st.integers(0, 10 ** 6))
def test_bnb_against_enumeration(m, p, seed):
    indptr, indices = random_graph(m, p, seed)
    brute = min(
        kernels.mono_count(indptr, indices, [0] + list(b)) for b in product((0, 1), repeat=m - 1)
    )
    order = np.arange(m, dtype=np.int64)
    best, pages, _, complete = kernels.bnb_min_mono(indptr, indices, order, 10 ** 9, [0] * m, 10 ** 7)
    assert complete and best == brute
    assert kernels.mono_count(indptr, indices, pages) == best


def test_greedy_is_local_optimum():
    indptr, indices = random_graph(30, 0.3, 1)
    count, pages = kernels.greedy_descent(indptr, indices, [0] * 30)
    assert count == kernels.mono_count(indptr, indices, pages)
    for v in range(30):
        nb = indices[indptr[v] : indptr[v + 1]]
        same = sum(1 for w in nb if pages[w] == pages[v])
        assert same <= len(nb) - same


def arc_angle_oracle(a, b, c, d):
    """Two minor arcs cross iff the intersection point of their circles lies on
    both, tested by angle sums (angle(a,x)+angle(x,b) == angle(a,b))."""
    n1, n2 = np.cross(a, b), np.cross(c, d)
    x = np.cross(n1, n2)
    x /= np.linalg.norm(x)
    ang = lambda u, v: np.arccos(np.clip(np.dot(u, v), -1, 1))
    for y in (x, -x):
        if abs(ang(a, y) + ang(y, b) - ang(a, b)) < 1e-9 and abs(ang(c, y) + ang(y, d) - ang(c, d)) < 1e-9:
            return 1
    return 0


def test_sphere_crossings_against_angle_oracle():
    from crosslab.spherical import disjoint_pairs, sample_points

    pts = sample_points(6, 300, np.random.default_rng(5))
    pairs = disjoint_pairs(6)
    got = kernels.sphere_crossings(pts, pairs, 1e-9)
    for s in range(300):
        want = sum(arc_angle_oracle(*(pts[s, k] for k in row)) for row in pairs)
        assert got[s] == want


@needs_compiled
def test_backends_agree():
    from crosslab.optimizer import build_conflict_graph
    from crosslab.spherical import disjoint_pairs, sample_points

    assert [compiled.splitmix64(i) for i in range(20)] == [_kernels_py.splitmix64(i) for i in range(20)]
    g = build_conflict_graph(9)
    m = len(g.nodes)
    assert compiled.random_pages(m, 4) == _kernels_py.random_pages(m, 4)
    start = _kernels_py.random_pages(m, 4)
    for mod in (compiled, _kernels_py):
        assert mod.mono_count(g.indptr, g.indices, start) == _kernels_py.mono_count(g.indptr, g.indices, start)
    a = compiled.anneal(g.indptr, g.indices, start, 100, 12.6, 0.995, 3)
    b = _kernels_py.anneal(g.indptr, g.indices, start, 100, 12.6, 0.995, 3)
    assert a == b
    assert compiled.greedy_descent(g.indptr, g.indices, start) == _kernels_py.greedy_descent(g.indptr, g.indices, start)
    g7 = build_conflict_graph(7)
    order = np.argsort(-g7.degree(), kind="stable").astype(np.int64)
    m7 = len(g7.nodes)
    r1 = compiled.bnb_min_mono(g7.indptr, g7.indices, order, 10 ** 6, [0] * m7, 10 ** 8)
    r2 = _kernels_py.bnb_min_mono(g7.indptr, g7.indices, order, 10 ** 6, [0] * m7, 10 ** 8)
    assert tuple(r1[:1]) + tuple(r1[2:]) == tuple(r2[:1]) + tuple(r2[2:])
    assert list(r1[1]) == list(r2[1])
    pts = sample_points(7, 500, np.random.default_rng(1))
    pairs = disjoint_pairs(7)
    assert (compiled.sphere_crossings(pts, pairs, 1e-9) == _kernels_py.sphere_crossings(pts, pairs, 1e-9)).all()


def test_pure_python_switch():
    env = dict(os.environ, CROSSLAB_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from crosslab import kernels; print(kernels.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"


@pytest.mark.skipif(os.environ.get("CROSSLAB_PURE_PYTHON") in ("1", "true", "yes"), reason="forced pure Python")
def test_backend_name():
    assert kernels.BACKEND == ("cython" if compiled is not None else "python")
