"""k-edges of good drawings of K_n and the identities built on them.

Sides are decided topologically: ``r`` is left of ``pq`` when the closed
curve ``pq . qr . rp`` runs counter-clockwise around the disk that does not
contain the designated face.  For the unbounded face this is the sign of the
curve's signed area; for a bounded face given by a reference point ``w`` the
answer flips whenever ``w`` is enclosed.  Both quantities are additive over
the three edges, so they are tabulated once per directed edge.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .arrangement import UNBOUNDED, FaceRef, induced_boundary_order, planarize
from .drawing import Drawing, EdgeKey, crossing_count, edge_key, require_good
from .geometry import polyline_area2, polyline_winding


class DomainError(ValueError):
    pass


LEFT, RIGHT = "left", "right"


class SideOracle:
    """Constant-time side queries for one drawing and one designated face."""

    def __init__(self, d: Drawing, f: FaceRef = UNBOUNDED):
        require_good(d)
        self.drawing = d
        self.face = f
        self._area: dict[EdgeKey, Fraction] = {}
        self._wind: dict[EdgeKey, int] = {}
        for key, pts in d.edges.items():
            self._area[key] = polyline_area2(pts)
            self._wind[key] = 0 if f.is_unbounded else polyline_winding(pts, f.point)
        if not f.is_unbounded:
            from .geometry import point_on_polyline

            if any(point_on_polyline(f.point, pts) for pts in d.edges.values()):
                from .arrangement import AmbiguousFaceError

                raise AmbiguousFaceError(f"reference point {f} lies on the drawing")

    def _directed(self, table, u: int, v: int):
        val = table[edge_key(u, v)]
        return val if u < v else -val

    def is_left(self, p: int, q: int, r: int) -> bool:
        area = self._directed(self._area, p, q) + self._directed(self._area, q, r) + self._directed(self._area, r, p)
        if area == 0:
            raise DomainError(f"degenerate triangle {p}{q}{r}: closed curve has zero area")
        wind = self._directed(self._wind, p, q) + self._directed(self._wind, q, r) + self._directed(self._wind, r, p)
        return (area > 0) != (wind != 0)

    def left_count(self, p: int, q: int, among: Iterable[int]) -> int:
        return sum(1 for r in among if r != p and r != q and self.is_left(p, q, r))

    def k_value(self, p: int, q: int, among: Sequence[int]) -> int:
        """k such that pq is a k-edge of the sub-drawing on ``among``."""
        left = self.left_count(p, q, among)
        return min(left, len(among) - 2 - left)

    def edge_k_values(self, among: Sequence[int]) -> dict[EdgeKey, int]:
        among = sorted(among)
        return {(p, q): self.k_value(p, q, among) for p, q in combinations(among, 2)}


def side_of(d: Drawing, p: int, q: int, r: int, f: FaceRef = UNBOUNDED) -> str:
    if len({p, q, r}) != 3:
        raise DomainError("side_of needs three distinct vertices")
    return LEFT if SideOracle(d, f).is_left(p, q, r) else RIGHT


@dataclass(frozen=True)
class KEdgeSpectrum:
    n: int
    counts: tuple[int, ...]

    def __post_init__(self):
        if sum(self.counts) != comb(self.n, 2):
            raise AssertionError(f"spectrum sums to {sum(self.counts)}, expected C({self.n},2)")


@dataclass(frozen=True)
class CumulativeTable:
    n: int
    leq: tuple[int, ...]
    leqleq: tuple[int, ...]


def spectrum_from_values(n: int, values: Iterable[int]) -> KEdgeSpectrum:
    size = max(n // 2, 1) if n >= 2 else 0
    counts = [0] * size
    for k in values:
        counts[k] += 1
    return KEdgeSpectrum(n, tuple(counts))


def spectrum(d: Drawing, f: FaceRef = UNBOUNDED, oracle: SideOracle | None = None) -> KEdgeSpectrum:
    oracle = SideOracle(d, f) if oracle is None else oracle
    return spectrum_from_values(d.n, oracle.edge_k_values(d.vertex_ids).values())


def cumulative(s: KEdgeSpectrum) -> CumulativeTable:
    counts = s.counts
    leq = []
    run = 0
    for c in counts:
        run += c
        leq.append(run)
    leqleq = []
    run = 0
    for x in leq:
        run += x
        leqleq.append(run)
    for k in range(len(counts)):
        double_sum = sum(counts[i] for j in range(k + 1) for i in range(j + 1))
        weighted = sum((k + 1 - i) * counts[i] for i in range(k + 1))
        if not (leqleq[k] == double_sum == weighted):
            raise AssertionError(f"cumulative forms disagree at k={k}")
    return CumulativeTable(s.n, tuple(leq), tuple(leqleq))


def zeta(n: int) -> int:
    """Harary-Hill number: a quarter of the product of four floors."""
    if n < 1:
        raise DomainError("zeta needs n >= 1")
    prod = (n // 2) * ((n - 1) // 2) * ((n - 2) // 2) * ((n - 3) // 2)
    return prod // 4


def _crossings_from_leqleq(n: int, leqleq: Sequence) -> Fraction:
    top = n // 2 - 2
    total = 2 * sum((Fraction(leqleq[k]) for k in range(top + 1)), Fraction(0))
    total -= Fraction(comb(n, 2) * ((n - 2) // 2), 2)
    if n % 2 == 0 and top >= 0:
        total -= leqleq[top]
    return total


def crossings_from_spectrum(t: CumulativeTable) -> int:
    if t.n < 3:
        raise DomainError("the crossing identity needs n >= 3")
    value = _crossings_from_leqleq(t.n, t.leqleq)
    if value.denominator != 1:
        raise AssertionError(f"crossing identity produced non-integer {value}")
    return int(value)


@dataclass(frozen=True)
class IdentityReport:
    crossings: int
    formula: int

    @property
    def equal(self) -> bool:
        return self.crossings == self.formula


def check_identity2(d: Drawing, f: FaceRef = UNBOUNDED) -> IdentityReport:
    lhs = crossing_count(d)
    rhs = crossings_from_spectrum(cumulative(spectrum(d, f)))
    return IdentityReport(lhs, rhs)


def invariant_edges(oracle: SideOracle, among: Sequence[int], y: int) -> dict[EdgeKey, int]:
    """Edges of the sub-drawing on ``among`` that keep their k after deleting y."""
    among = sorted(among)
    rest = [v for v in among if v != y]
    out = {}
    for p, q in combinations(rest, 2):
        k_full = oracle.k_value(p, q, among)
        if k_full == oracle.k_value(p, q, rest):
            out[(p, q)] = k_full
    return out


def invariant_leq_k_count(
    d: Drawing, y: int, k: int, f: FaceRef = UNBOUNDED, oracle: SideOracle | None = None
) -> int:
    n = d.n
    if not 0 <= k <= (n - 3) // 2:
        raise DomainError(f"k={k} outside 0..{(n - 3) // 2}")
    oracle = SideOracle(d, f) if oracle is None else oracle
    return sum(1 for j in invariant_edges(oracle, d.vertex_ids, y).values() if j <= k)


def invariant_incident_count(
    d: Drawing,
    x: int,
    y: int,
    removed: Iterable[int],
    k: int,
    f: FaceRef = UNBOUNDED,
    oracle: SideOracle | None = None,
) -> int:
    """Edges xz avoiding ``removed`` and y that are (D, D_y)-invariant <=k-edges.

    With |removed| = i - 1 and x on the boundary of D minus ``removed``, at
    least k - i + 2 such edges must exist.
    """
    removed = set(removed)
    n = d.n
    if x == y or x in removed or y in removed:
        raise DomainError("x, y and the removed set must be disjoint")
    if not 0 <= len(removed) <= k <= (n - 3) // 2:
        raise DomainError(f"need 0 <= |U| <= k <= {(n - 3) // 2}")
    oracle = SideOracle(d, f) if oracle is None else oracle
    ids = d.vertex_ids
    rest = [v for v in ids if v != y]
    total = 0
    for z in ids:
        if z in removed or z in (x, y):
            continue
        j = oracle.k_value(x, z, ids)
        if j <= k and oracle.k_value(x, z, rest) == j:
            total += 1
    return total


@dataclass(frozen=True)
class LastPointReport:
    vertex: int
    order: tuple[int, ...]
    passed: bool
    failures: tuple[tuple[int, int, int], ...] = ()  # (i, expected k, found k)


def check_prop_lastpoint(d: Drawing, x: int, f: FaceRef = UNBOUNDED, arr=None, oracle=None) -> LastPointReport:
    order = induced_boundary_order(d, x, f, arr)
    oracle = SideOracle(d, f) if oracle is None else oracle
    n = d.n
    ids = d.vertex_ids
    fails = []
    for i, xi in enumerate(order, start=1):
        want = min(i - 1, n - 1 - i)
        got = oracle.k_value(x, xi, ids)
        if got != want:
            fails.append((i, want, got))
    return LastPointReport(x, tuple(order), not fails, tuple(fails))


@dataclass(frozen=True)
class RecurrenceStep:
    r: int
    removed: int
    size: int
    lhs: int
    prev: int
    incident_term: int
    invariant_term: int
    in_range: bool

    @property
    def holds(self) -> bool:
        return self.lhs == self.prev + self.incident_term + self.invariant_term


@dataclass(frozen=True)
class DeletionTrace:
    order: tuple[int, ...]
    kprime: int
    steps: tuple[RecurrenceStep, ...]

    @property
    def holds(self) -> bool:
        return all(s.holds for s in self.steps)


def leqleq_of(values: Iterable[int], k: int) -> int:
    return sum(k + 1 - j for j in values if j <= k)


def check_recurrence(
    d: Drawing, order: Sequence[int], kprime: int, f: FaceRef = UNBOUNDED, oracle: SideOracle | None = None
) -> DeletionTrace:
    """Check the one-vertex deletion recurrence along a suffix-deletion order.

    Step r compares the sub-drawing that keeps v_1..v_r (and everything
    outside the order) with the one that also drops v_r.
    """
    if len(set(order)) != len(order) or not set(order) <= set(d.vertex_ids):
        raise DomainError("order must list distinct vertices of the drawing")
    oracle = SideOracle(d, f) if oracle is None else oracle
    outside = [v for v in d.vertex_ids if v not in set(order)]
    steps = []
    for r in range(1, len(order) + 1):
        vr = order[r - 1]
        big = sorted(outside + list(order[:r]))
        small = [v for v in big if v != vr]
        kv_big = oracle.edge_k_values(big)
        kv_small = oracle.edge_k_values(small)
        lhs = leqleq_of(kv_big.values(), kprime)
        prev = leqleq_of(kv_small.values(), kprime - 1) if kprime >= 1 else 0
        e_ell = [0] * (kprime + 1)
        for (p, q), j in kv_big.items():
            if vr in (p, q) and j <= kprime:
                e_ell[j] += 1
        incident = sum((kprime + 1 - ell) * e_ell[ell] for ell in range(kprime + 1))
        invariant = sum(1 for e, j in kv_small.items() if kv_big[e] == j and j <= kprime)
        in_range = 0 <= kprime <= max(len(big) // 2 - 1, 0)
        steps.append(RecurrenceStep(r, vr, len(big), lhs, prev, incident, invariant, in_range))
    return DeletionTrace(tuple(order), kprime, tuple(steps))


def shellable_bound_value(k: int) -> int:
    return 3 * comb(k + 3, 3)


@dataclass(frozen=True)
class BoundVerdict:
    k: int
    lhs: int
    rhs: int

    @property
    def passed(self) -> bool:
        return self.lhs >= self.rhs


def check_shellable_bound(d: Drawing, f: FaceRef, kmax: int, oracle: SideOracle | None = None) -> list[BoundVerdict]:
    if kmax > (d.n - 3) // 2:
        raise DomainError(f"kmax={kmax} exceeds floor((n-3)/2)={(d.n - 3) // 2}")
    table = cumulative(spectrum(d, f, oracle))
    return [BoundVerdict(k, table.leqleq[k], shellable_bound_value(k)) for k in range(kmax + 1)]


def lower_bound_from_table(n: int) -> int:
    """Crossings forced when every E_{<=<=k} meets the shellable bound."""
    if n < 3:
        raise DomainError("needs n >= 3")
    top = n // 2 - 2
    assert top <= (n - 3) // 2
    table = [shellable_bound_value(k) for k in range(max(top + 1, 0))]
    value = _crossings_from_leqleq(n, table)
    if value.denominator != 1:
        raise AssertionError(f"non-integer bound {value}")
    return int(value)


def analysis_report(d: Drawing, f: FaceRef = UNBOUNDED) -> dict:
    """Everything the ``analyze`` command prints, as plain JSON data."""
    oracle = SideOracle(d, f)
    spec = spectrum(d, f, oracle)
    table = cumulative(spec)
    crossings = crossing_count(d)
    report = {
        "n": d.n,
        "crossings": crossings,
        "spectrum": list(spec.counts),
        "leq": list(table.leq),
        "leqleq": list(table.leqleq),
        "zeta": zeta(d.n),
        "face": str(f),
    }
    if d.n >= 3:
        report["identity2"] = crossings_from_spectrum(table) == crossings
        kmax = (d.n - 3) // 2
        report["shellable_bound"] = [
            {"k": v.k, "lhs": v.lhs, "rhs": v.rhs, "pass": v.passed}
            for v in check_shellable_bound(d, f, kmax, oracle)
        ]
    else:
        report["identity2"] = True
        report["shellable_bound"] = []
    return report
