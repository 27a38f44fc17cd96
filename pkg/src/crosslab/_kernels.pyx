# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; behaviour matches crosslab._kernels_py exactly."""

import numpy as np
cimport numpy as cnp
from libc.math cimport exp
from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport malloc, free

cnp.import_array()


cdef inline uint64_t _splitmix64(uint64_t x):
    cdef uint64_t z
    x = x + <uint64_t>0x9E3779B97F4A7C15
    z = x
    z = (z ^ (z >> 30)) * <uint64_t>0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * <uint64_t>0x94D049BB133111EB
    return z ^ (z >> 31)


def splitmix64(x):
    return int(_splitmix64(<uint64_t>(x & 0xFFFFFFFFFFFFFFFF)))


cdef struct Rng:
    uint64_t s


cdef inline void rng_init(Rng* r, uint64_t seed):
    r.s = _splitmix64(seed)
    if r.s == 0:
        r.s = 1


cdef inline uint64_t rng_next(Rng* r):
    cdef uint64_t x = r.s
    x ^= x >> 12
    x ^= x << 25
    x ^= x >> 27
    r.s = x
    return x * <uint64_t>0x2545F4914F6CDD1D


cdef inline double rng_uniform(Rng* r):
    return (rng_next(r) >> 11) * (1.0 / 9007199254740992.0)


cdef int64_t[::1] _as_i64(obj):
    return np.ascontiguousarray(obj, dtype=np.int64)


def mono_count(indptr, indices, pages):
    cdef int64_t[::1] ip = _as_i64(indptr)
    cdef int64_t[::1] ix = _as_i64(indices)
    cdef int64_t[::1] pg = _as_i64(pages)
    cdef Py_ssize_t m = ip.shape[0] - 1, v, k
    cdef int64_t total = 0
    for v in range(m):
        for k in range(ip[v], ip[v + 1]):
            if ix[k] > v and pg[ix[k]] == pg[v]:
                total += 1
    return int(total)


cdef int64_t _same_counts(int64_t[::1] ip, int64_t[::1] ix, int64_t[::1] pg, int64_t[::1] same):
    cdef Py_ssize_t m = ip.shape[0] - 1, v, k
    cdef int64_t total = 0
    for v in range(m):
        same[v] = 0
        for k in range(ip[v], ip[v + 1]):
            if pg[ix[k]] == pg[v]:
                same[v] += 1
        total += same[v]
    return total // 2


cdef inline void _flip(int64_t[::1] ip, int64_t[::1] ix, int64_t[::1] pg, int64_t[::1] same, Py_ssize_t v):
    cdef Py_ssize_t k, w
    cdef int64_t pv = pg[v]
    cdef int64_t deg = ip[v + 1] - ip[v]
    for k in range(ip[v], ip[v + 1]):
        w = ix[k]
        if pg[w] == pv:
            same[w] -= 1
        else:
            same[w] += 1
    same[v] = deg - same[v]
    pg[v] = 1 - pv


cdef int64_t _greedy(int64_t[::1] ip, int64_t[::1] ix, int64_t[::1] pg, int64_t[::1] same, int64_t count):
    cdef Py_ssize_t m = ip.shape[0] - 1, v
    cdef int64_t deg, gain
    cdef bint improved = True
    while improved:
        improved = False
        for v in range(m):
            deg = ip[v + 1] - ip[v]
            gain = same[v] - (deg - same[v])
            if gain > 0:
                _flip(ip, ix, pg, same, v)
                count -= gain
                improved = True
    return count


def greedy_descent(indptr, indices, pages):
    cdef int64_t[::1] ip = _as_i64(indptr)
    cdef int64_t[::1] ix = _as_i64(indices)
    cdef int64_t[::1] pg = np.array(pages, dtype=np.int64)
    cdef int64_t[::1] same = np.zeros(ip.shape[0] - 1, dtype=np.int64)
    cdef int64_t count = _same_counts(ip, ix, pg, same)
    count = _greedy(ip, ix, pg, same, count)
    return int(count), [int(x) for x in pg]


def random_pages(Py_ssize_t m, seed):
    cdef Rng r
    rng_init(&r, <uint64_t>(seed & 0xFFFFFFFFFFFFFFFF))
    return [int(rng_next(&r) >> 63) for _ in range(m)]


def anneal(indptr, indices, pages, Py_ssize_t sweeps, double t0, double ratio, seed):
    cdef int64_t[::1] ip = _as_i64(indptr)
    cdef int64_t[::1] ix = _as_i64(indices)
    cdef Py_ssize_t m = ip.shape[0] - 1
    cdef int64_t[::1] pg = np.array(pages, dtype=np.int64)
    cdef int64_t[::1] same = np.zeros(m, dtype=np.int64)
    cdef int64_t[::1] best_pg = np.array(pages, dtype=np.int64)
    cdef int64_t count = _same_counts(ip, ix, pg, same)
    cdef int64_t best = count
    cdef int64_t deg, delta
    cdef double temp = t0, u
    cdef Py_ssize_t sw, it, v
    cdef Rng r
    rng_init(&r, <uint64_t>(seed & 0xFFFFFFFFFFFFFFFF))
    for sw in range(sweeps):
        for it in range(m):
            v = <Py_ssize_t>(rng_next(&r) % <uint64_t>m)
            deg = ip[v + 1] - ip[v]
            delta = deg - 2 * same[v]
            u = rng_uniform(&r)
            if delta <= 0 or (temp > 0 and u < exp(-delta / temp)):
                _flip(ip, ix, pg, same, v)
                count += delta
                if count < best:
                    best = count
                    best_pg[:] = pg
        temp *= ratio
    _same_counts(ip, ix, best_pg, same)
    best = _greedy(ip, ix, best_pg, same, best)
    return int(best), [int(x) for x in best_pg]


cdef struct BnB:
    Py_ssize_t m
    int64_t* ip
    int64_t* ix
    int64_t* order
    int64_t* pages
    int64_t* cnt0
    int64_t* cnt1
    int64_t* best_pages
    int64_t best
    int64_t free_min
    int64_t expanded
    int64_t budget
    bint complete


cdef inline int64_t _min2(int64_t a, int64_t b):
    return a if a < b else b


cdef int64_t _assign(BnB* s, Py_ssize_t v, int64_t p):
    cdef Py_ssize_t k, w
    cdef int64_t before, added
    s.free_min -= _min2(s.cnt0[v], s.cnt1[v])
    s.pages[v] = p
    added = s.cnt0[v] if p == 0 else s.cnt1[v]
    for k in range(s.ip[v], s.ip[v + 1]):
        w = s.ix[k]
        if s.pages[w] == -1:
            before = _min2(s.cnt0[w], s.cnt1[w])
            if p == 0:
                s.cnt0[w] += 1
            else:
                s.cnt1[w] += 1
            s.free_min += _min2(s.cnt0[w], s.cnt1[w]) - before
        elif p == 0:
            s.cnt0[w] += 1
        else:
            s.cnt1[w] += 1
    return added


cdef void _unassign(BnB* s, Py_ssize_t v, int64_t p):
    cdef Py_ssize_t k, w
    cdef int64_t before
    for k in range(s.ip[v], s.ip[v + 1]):
        w = s.ix[k]
        if s.pages[w] == -1:
            before = _min2(s.cnt0[w], s.cnt1[w])
            if p == 0:
                s.cnt0[w] -= 1
            else:
                s.cnt1[w] -= 1
            s.free_min += _min2(s.cnt0[w], s.cnt1[w]) - before
        elif p == 0:
            s.cnt0[w] -= 1
        else:
            s.cnt1[w] -= 1
    s.pages[v] = -1
    s.free_min += _min2(s.cnt0[v], s.cnt1[v])


cdef void _rec(BnB* s, Py_ssize_t depth, int64_t mono):
    cdef Py_ssize_t v, i, nchoice
    cdef int64_t p, added
    cdef int64_t choices[2]
    if s.expanded >= s.budget:
        s.complete = False
        return
    s.expanded += 1
    if depth == s.m:
        if mono < s.best:
            s.best = mono
            for i in range(s.m):
                s.best_pages[i] = s.pages[i]
        return
    v = s.order[depth]
    if depth == 0:
        choices[0] = 0
        nchoice = 1
    elif s.cnt0[v] <= s.cnt1[v]:
        choices[0] = 0
        choices[1] = 1
        nchoice = 2
    else:
        choices[0] = 1
        choices[1] = 0
        nchoice = 2
    for i in range(nchoice):
        p = choices[i]
        added = _assign(s, v, p)
        if mono + added + s.free_min < s.best:
            _rec(s, depth + 1, mono + added)
        _unassign(s, v, p)


def bnb_min_mono(indptr, indices, order, best, best_pages, budget):
    cdef int64_t[::1] ip = _as_i64(indptr)
    cdef int64_t[::1] ix = _as_i64(indices)
    cdef int64_t[::1] od = _as_i64(order)
    cdef Py_ssize_t m = ip.shape[0] - 1
    cdef int64_t[::1] pages = np.full(m, -1, dtype=np.int64)
    cdef int64_t[::1] cnt0 = np.zeros(m, dtype=np.int64)
    cdef int64_t[::1] cnt1 = np.zeros(m, dtype=np.int64)
    cdef int64_t[::1] bp = np.array(best_pages, dtype=np.int64)
    cdef BnB s
    s.m = m
    s.ip = &ip[0]
    s.ix = &ix[0] if ix.shape[0] > 0 else NULL
    s.order = &od[0]
    s.pages = &pages[0]
    s.cnt0 = &cnt0[0]
    s.cnt1 = &cnt1[0]
    s.best_pages = &bp[0]
    s.best = best
    s.free_min = 0
    s.expanded = 0
    s.budget = budget
    s.complete = True
    _rec(&s, 0, 0)
    return int(s.best), [int(x) for x in bp], int(s.expanded), bool(s.complete)


def sphere_crossings(double[:, :, ::1] points, pairs, double tol=1e-9):
    cdef int64_t[:, ::1] pr = np.ascontiguousarray(pairs, dtype=np.int64)
    cdef Py_ssize_t S = points.shape[0], P = pr.shape[0], s, q, k
    cdef cnp.ndarray[cnp.int64_t, ndim=1] out = np.zeros(S, dtype=np.int64)
    cdef double a[3]
    cdef double b[3]
    cdef double c[3]
    cdef double d[3]
    cdef double n1[3]
    cdef double n2[3]
    cdef double p[3]
    cdef double sc, sd, sa, sb, side, side2
    cdef int64_t total
    for s in range(S):
        total = 0
        for q in range(P):
            for k in range(3):
                a[k] = points[s, pr[q, 0], k]
                b[k] = points[s, pr[q, 1], k]
                c[k] = points[s, pr[q, 2], k]
                d[k] = points[s, pr[q, 3], k]
            n1[0] = a[1] * b[2] - a[2] * b[1]
            n1[1] = a[2] * b[0] - a[0] * b[2]
            n1[2] = a[0] * b[1] - a[1] * b[0]
            n2[0] = c[1] * d[2] - c[2] * d[1]
            n2[1] = c[2] * d[0] - c[0] * d[2]
            n2[2] = c[0] * d[1] - c[1] * d[0]
            sc = n1[0] * c[0] + n1[1] * c[1] + n1[2] * c[2]
            sd = n1[0] * d[0] + n1[1] * d[1] + n1[2] * d[2]
            sa = n2[0] * a[0] + n2[1] * a[1] + n2[2] * a[2]
            sb = n2[0] * b[0] + n2[1] * b[1] + n2[2] * b[2]
            if not (sc * sd < -tol * tol and sa * sb < -tol * tol):
                continue
            p[0] = n1[1] * n2[2] - n1[2] * n2[1]
            p[1] = n1[2] * n2[0] - n1[0] * n2[2]
            p[2] = n1[0] * n2[1] - n1[1] * n2[0]
            side = p[0] * (a[0] + b[0]) + p[1] * (a[1] + b[1]) + p[2] * (a[2] + b[2])
            side2 = p[0] * (c[0] + d[0]) + p[1] * (c[1] + d[1]) + p[2] * (c[2] + d[2])
            if side * side2 > 0:
                total += 1
        out[s] = total
    return out
