"""Pure-Python kernels; the compiled module mirrors these bit for bit.

Conflict graphs arrive in CSR form (``indptr``, ``indices``).  Pages are
0/1 integers.  Randomness comes from a private xorshift64* stream so both
backends draw identical numbers for the same seed.
"""

from __future__ import annotations

import math

import numpy as np

MASK = (1 << 64) - 1


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & MASK
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
    return z ^ (z >> 31)


class _Rng:
    __slots__ = ("s",)

    def __init__(self, seed: int):
        self.s = splitmix64(seed & MASK) or 1

    def next(self) -> int:
        x = self.s
        x ^= x >> 12
        x ^= (x << 25) & MASK
        x ^= x >> 27
        self.s = x
        return (x * 0x2545F4914F6CDD1D) & MASK

    def uniform(self) -> float:
        return (self.next() >> 11) * (1.0 / 9007199254740992.0)

    def below(self, m: int) -> int:
        return self.next() % m


def mono_count(indptr, indices, pages) -> int:
    total = 0
    for v in range(len(indptr) - 1):
        pv = pages[v]
        for k in range(indptr[v], indptr[v + 1]):
            w = indices[k]
            if w > v and pages[w] == pv:
                total += 1
    return total


def _same_counts(indptr, indices, pages) -> list[int]:
    same = [0] * (len(indptr) - 1)
    for v in range(len(same)):
        pv = pages[v]
        for k in range(indptr[v], indptr[v + 1]):
            if pages[indices[k]] == pv:
                same[v] += 1
    return same


def greedy_descent(indptr, indices, pages):
    """Flip improving nodes in index order until none improves."""
    pages = [int(p) for p in pages]
    same = _same_counts(indptr, indices, pages)
    count = sum(same) // 2
    improved = True
    while improved:
        improved = False
        for v in range(len(pages)):
            deg = indptr[v + 1] - indptr[v]
            gain = same[v] - (deg - same[v])
            if gain > 0:
                pv = pages[v]
                for k in range(indptr[v], indptr[v + 1]):
                    w = indices[k]
                    if pages[w] == pv:
                        same[w] -= 1
                    else:
                        same[w] += 1
                same[v] = deg - same[v]
                pages[v] = 1 - pv
                count -= gain
                improved = True
    return count, pages


def random_pages(m: int, seed: int) -> list[int]:
    rng = _Rng(seed)
    return [int(rng.next() >> 63) for _ in range(m)]


def anneal(indptr, indices, pages, sweeps: int, t0: float, ratio: float, seed: int):
    """Single-flip simulated annealing, cooled once per sweep.

    Returns the best count seen and its page vector, polished by
    :func:`greedy_descent`.
    """
    m = len(indptr) - 1
    pages = [int(p) for p in pages]
    same = _same_counts(indptr, indices, pages)
    count = sum(same) // 2
    best = count
    best_pages = list(pages)
    rng = _Rng(seed)
    temp = t0
    for _ in range(sweeps):
        for _ in range(m):
            v = rng.below(m)
            deg = indptr[v + 1] - indptr[v]
            delta = deg - 2 * same[v]
            u = rng.uniform()
            if delta <= 0 or (temp > 0 and u < math.exp(-delta / temp)):
                pv = pages[v]
                for k in range(indptr[v], indptr[v + 1]):
                    w = indices[k]
                    if pages[w] == pv:
                        same[w] -= 1
                    else:
                        same[w] += 1
                same[v] = deg - same[v]
                pages[v] = 1 - pv
                count += delta
                if count < best:
                    best = count
                    best_pages = list(pages)
        temp *= ratio
    return greedy_descent(indptr, indices, best_pages)


def bnb_min_mono(indptr, indices, order, best: int, best_pages, budget: int):
    """Branch and bound for the fewest monochromatic conflicts.

    Nodes are fixed in ``order``; the first one is pinned to page 0 (global
    page swap symmetry).  Lower bound: conflicts already monochromatic plus,
    for every free node, the cheaper of its two pages against fixed
    neighbours.  Returns (best, pages, expanded, complete).
    """
    m = len(indptr) - 1
    pages = [-1] * m
    cnt = [[0, 0] for _ in range(m)]
    best_pages = [int(p) for p in best_pages]
    state = {"best": best, "expanded": 0, "complete": True}
    free_min = 0  # sum over free nodes of min(cnt)

    def assign(v, p):
        nonlocal free_min
        free_min -= min(cnt[v])
        pages[v] = p
        added = cnt[v][p]
        for k in range(indptr[v], indptr[v + 1]):
            w = indices[k]
            if pages[w] == -1:
                before = min(cnt[w])
                cnt[w][p] += 1
                free_min += min(cnt[w]) - before
            else:
                cnt[w][p] += 1
        return added

    def unassign(v, p):
        nonlocal free_min
        for k in range(indptr[v], indptr[v + 1]):
            w = indices[k]
            if pages[w] == -1:
                before = min(cnt[w])
                cnt[w][p] -= 1
                free_min += min(cnt[w]) - before
            else:
                cnt[w][p] -= 1
        pages[v] = -1
        free_min += min(cnt[v])

    def rec(depth, mono):
        if state["expanded"] >= budget:
            state["complete"] = False
            return
        state["expanded"] += 1
        if depth == m:
            if mono < state["best"]:
                state["best"] = mono
                best_pages[:] = pages
            return
        v = order[depth]
        if depth == 0:
            choices = (0,)
        else:
            choices = (0, 1) if cnt[v][0] <= cnt[v][1] else (1, 0)
        for p in choices:
            added = assign(v, p)
            if mono + added + free_min < state["best"]:
                rec(depth + 1, mono + added)
            unassign(v, p)

    free_min = 0
    rec(0, 0)
    return state["best"], best_pages, state["expanded"], state["complete"]


def sphere_crossings(points: np.ndarray, pairs: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Crossing counts of minor great-circle arcs, one per sample.

    ``points`` has shape (samples, n, 3) of unit vectors; ``pairs`` lists
    disjoint edge pairs as rows (a, b, c, d) meaning arc ab against arc cd.
    """
    a = points[:, pairs[:, 0]]
    b = points[:, pairs[:, 1]]
    c = points[:, pairs[:, 2]]
    d = points[:, pairs[:, 3]]
    n1 = np.cross(a, b)
    n2 = np.cross(c, d)
    s_c = np.einsum("ijk,ijk->ij", n1, c)
    s_d = np.einsum("ijk,ijk->ij", n1, d)
    s_a = np.einsum("ijk,ijk->ij", n2, a)
    s_b = np.einsum("ijk,ijk->ij", n2, b)
    straddle = (s_c * s_d < -tol * tol) & (s_a * s_b < -tol * tol)
    # both arcs meet the other's great circle; make sure it is the same point
    p = np.cross(n1, n2)
    side = np.einsum("ijk,ijk->ij", p, a + b)
    side2 = np.einsum("ijk,ijk->ij", p, c + d)
    same = side * side2 > 0
    return np.count_nonzero(straddle & same, axis=1).astype(np.int64)
