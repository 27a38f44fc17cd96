"""Random spherical drawings: uniform points, minor great-circle arcs.

This is the only floating-point corner of the package and it only feeds
statistics.  A sample can still be exported as an exact planar drawing by
stereographic projection from a point far from every arc.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from . import kernels
from .drawing import Drawing, validate_good_drawing

TOL = 1e-9
MAX_RETRIES = 100


class DegenerateSampleError(RuntimeError):
    pass


def disjoint_pairs(n: int) -> np.ndarray:
    """Rows (a, b, c, d): arc ab against arc cd, the four indices distinct."""
    rows = [
        (a, b, c, d)
        for (a, b), (c, d) in combinations(combinations(range(n), 2), 2)
        if len({a, b, c, d}) == 4
    ]
    return np.array(rows, dtype=np.int64).reshape(-1, 4)


def _degenerate(points: np.ndarray, pairs: np.ndarray) -> np.ndarray:
    """Per-sample flag: near-equal or near-antipodal points, or a point
    within TOL of another arc's great circle."""
    gram = np.einsum("sik,sjk->sij", points, points)
    n = points.shape[1]
    off = ~np.eye(n, dtype=bool)
    bad = (np.abs(gram[:, off]) > 1 - TOL).any(axis=1)
    if len(pairs):
        a, b, c, d = (points[:, pairs[:, i]] for i in range(4))
        n1 = np.cross(a, b)
        n2 = np.cross(c, d)
        s = np.stack(
            [np.einsum("ijk,ijk->ij", n1, c), np.einsum("ijk,ijk->ij", n1, d),
             np.einsum("ijk,ijk->ij", n2, a), np.einsum("ijk,ijk->ij", n2, b)]
        )
        bad |= (np.abs(s) < TOL).any(axis=(0, 2))
    return bad


def _uniform(rng: np.random.Generator, samples: int, n: int) -> np.ndarray:
    x = rng.standard_normal((samples, n, 3))
    return x / np.linalg.norm(x, axis=2, keepdims=True)


def sample_points(n: int, samples: int, rng: np.random.Generator) -> np.ndarray:
    pairs = disjoint_pairs(n)
    pts = _uniform(rng, samples, n)
    for _ in range(MAX_RETRIES):
        bad = _degenerate(pts, pairs)
        if not bad.any():
            return np.ascontiguousarray(pts)
        pts[bad] = _uniform(rng, int(bad.sum()), n)
    raise DegenerateSampleError(f"could not draw a non-degenerate sample after {MAX_RETRIES} retries")


@dataclass(frozen=True)
class SphericalDrawing:
    points: dict[int, tuple[float, float, float]]
    seed: int | None = None

    @property
    def n(self) -> int:
        return len(self.points)

    def array(self) -> np.ndarray:
        return np.array([self.points[v] for v in sorted(self.points)], dtype=float)

    def crossings(self) -> int:
        pts = np.ascontiguousarray(self.array()[None])
        return int(kernels.sphere_crossings(pts, disjoint_pairs(self.n), TOL)[0])

    def restrict(self, keep) -> "SphericalDrawing":
        return SphericalDrawing({v: p for v, p in self.points.items() if v in keep}, self.seed)

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "points": [{"id": v, "xyz": [repr(float(c)) for c in p]} for v, p in sorted(self.points.items())],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SphericalDrawing":
        pts = {int(r["id"]): tuple(float(c) for c in r["xyz"]) for r in obj["points"]}
        return cls(pts, obj.get("seed"))


def random_spherical(n: int, seed: int) -> tuple[SphericalDrawing, int]:
    if n < 4:
        raise ValueError(f"n must be at least 4, got {n}")
    pts = sample_points(n, 1, np.random.default_rng(seed))[0]
    sd = SphericalDrawing({i + 1: tuple(float(c) for c in p) for i, p in enumerate(pts)}, seed)
    return sd, sd.crossings()


def moon_expectation(n: int) -> Fraction:
    return Fraction(n * (n - 1) * (n - 2) * (n - 3), 64)


@dataclass(frozen=True)
class MonteCarloResult:
    n: int
    samples: int
    mean: float
    stderr: float
    expected: Fraction
    seed: int

    @property
    def rel_error(self) -> float:
        return abs(self.mean - float(self.expected)) / float(self.expected)


def monte_carlo_mean(n: int, samples: int, seed: int, batch: int = 5000) -> MonteCarloResult:
    rng = np.random.default_rng(seed)
    pairs = disjoint_pairs(n)
    counts = []
    left = samples
    while left > 0:
        pts = sample_points(n, min(batch, left), rng)
        counts.append(kernels.sphere_crossings(pts, pairs, TOL))
        left -= len(pts)
    c = np.concatenate(counts).astype(float)
    return MonteCarloResult(n, samples, float(c.mean()), float(c.std(ddof=1) / math.sqrt(len(c))), moon_expectation(n), seed)


# -- exact export ------------------------------------------------------------

_GRID = 2 ** 20


def _slerp(a: np.ndarray, b: np.ndarray, steps: int) -> np.ndarray:
    omega = math.acos(max(-1.0, min(1.0, float(a @ b))))
    t = np.linspace(0.0, 1.0, steps + 1)
    out = (np.sin((1 - t) * omega)[:, None] * a + np.sin(t * omega)[:, None] * b) / math.sin(omega)
    return out / np.linalg.norm(out, axis=1, keepdims=True)


def _fibonacci(k: int) -> np.ndarray:
    i = np.arange(k) + 0.5
    phi = math.pi * (3 - math.sqrt(5)) * i
    z = 1 - 2 * i / k
    r = np.sqrt(1 - z * z)
    return np.stack([r * np.cos(phi), r * np.sin(phi), z], axis=1)


def _pole(sd: SphericalDrawing) -> np.ndarray:
    """Candidate direction farthest from every arc."""
    pts = sd.array()
    dense = np.concatenate([_slerp(pts[a], pts[b], 32) for a, b in combinations(range(len(pts)), 2)])
    cand = _fibonacci(256)
    closeness = (cand @ dense.T).max(axis=1)
    return cand[int(np.argmin(closeness))]


def _project(v: np.ndarray, pole: np.ndarray, e1: np.ndarray, e2: np.ndarray):
    s = 1.0 - float(v @ pole)
    x, y = float(v @ e1) / s, float(v @ e2) / s
    return (Fraction(round(x * _GRID), _GRID), Fraction(round(y * _GRID), _GRID))


def project_to_plane(sd: SphericalDrawing, resolution: int = 1) -> Drawing:
    """Exact planar drawing of a sample; the crossing count must survive.

    Densifies up to four times, then gives up with a RuntimeError.
    """
    want = sd.crossings()
    pole = _pole(sd)
    e1 = np.cross(pole, [1.0, 0.0, 0.0] if abs(pole[0]) < 0.9 else [0.0, 1.0, 0.0])
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(pole, e1)
    ids = sorted(sd.points)
    arr = {v: np.array(sd.points[v]) for v in ids}
    verts = {v: _project(arr[v], pole, e1, e2) for v in ids}
    res = resolution
    last = None
    for _ in range(5):
        edges = {}
        for u, v in combinations(ids, 2):
            arc = _slerp(arr[u], arr[v], 16 * res)
            pts = [verts[u]] + [_project(p, pole, e1, e2) for p in arc[1:-1]] + [verts[v]]
            dedup = [pts[0]]
            for p in pts[1:]:
                if p != dedup[-1]:
                    dedup.append(p)
            edges[(u, v)] = tuple(dedup)
        d = Drawing(len(ids), verts, edges, "spherical-projected", sd)
        report = validate_good_drawing(d)
        if report.ok and len(d.analysis().crossings) == want:
            return d
        last = report if not report.ok else f"{len(d.analysis().crossings)} != {want}"
        res *= 2
    raise RuntimeError(f"projection lost fidelity: {last}")
