"""Shellability certificates and the crossing lower-bound pipeline."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Sequence

from .arrangement import UNBOUNDED, AmbiguousFaceError, FaceRef, planarize, seat_point_left
from .constructions import ClassificationError, is_x_bounded, x_order
from .drawing import Drawing, EdgeKey, StructuralError, crossing_count, crossings_by_edge, delete_vertices, edge_key, require_good
from .geometry import format_scalar
from .kedges import BoundVerdict, SideOracle, check_shellable_bound, zeta

log = logging.getLogger(__name__)

DEFAULT_CYCLE_BUDGET = 10 ** 7


class PerturbationError(AmbiguousFaceError):
    """The witness point sits on the drawing; choose another point."""


@dataclass(frozen=True)
class CycleViolation:
    position: int  # k of the cycle edge v_k v_{k+1}; s for the closing edge
    edge: EdgeKey
    crossing_edge: EdgeKey
    reason: str


@dataclass(frozen=True)
class CycleWitness:
    cycle: tuple[int, ...]
    closing_crossings: tuple[EdgeKey, ...]
    violations: tuple[CycleViolation, ...]

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "cycle": list(self.cycle),
            "closing_crossings": [list(e) for e in self.closing_crossings],
            "violations": [
                {"k": v.position, "edge": list(v.edge), "crossed_by": list(v.crossing_edge), "reason": v.reason}
                for v in self.violations
            ],
            "pass": self.passed,
        }


def _check_cycle_shape(cycle: Sequence[int], d: Drawing) -> None:
    if len(cycle) < 3:
        raise StructuralError("a cycle needs at least 3 vertices")
    if len(set(cycle)) != len(cycle):
        raise StructuralError(f"cycle repeats a vertex: {list(cycle)}")
    unknown = set(cycle) - set(d.vertices)
    if unknown:
        raise StructuralError(f"cycle names unknown vertices {sorted(unknown)}")


def check_lemma_cycle(d: Drawing, cycle: Sequence[int]) -> CycleWitness:
    """Closing edge uncrossed, and every crossing on v_k v_{k+1} comes from
    an edge v_i v_j with i < k and j > k + 1."""
    _check_cycle_shape(cycle, d)
    by_edge = crossings_by_edge(d)
    s = len(cycle)
    idx = {v: k for k, v in enumerate(cycle, start=1)}
    closing = edge_key(cycle[-1], cycle[0])
    violations = [CycleViolation(s, closing, g, "closing edge is crossed") for g in by_edge[closing]]
    for k in range(1, s):
        e = edge_key(cycle[k - 1], cycle[k])
        for g in by_edge[e]:
            if g[0] not in idx or g[1] not in idx:
                violations.append(CycleViolation(k, e, g, "crossing edge leaves the cycle"))
                continue
            i, j = sorted((idx[g[0]], idx[g[1]]))
            if not (i < k and j > k + 1):
                violations.append(CycleViolation(k, e, g, f"indices ({i},{j}) not around ({k},{k + 1})"))
    return CycleWitness(tuple(cycle), tuple(by_edge[closing]), tuple(violations))


def uncrossed_graph(d: Drawing) -> dict[int, list[int]]:
    by_edge = crossings_by_edge(d)
    adj: dict[int, list[int]] = {v: [] for v in d.vertices}
    for (u, v), crossing in by_edge.items():
        if not crossing:
            adj[u].append(v)
            adj[v].append(u)
    # prune vertices that cannot lie on a cycle
    changed = True
    while changed:
        changed = False
        for v in list(adj):
            if len(adj[v]) < 2:
                for w in adj.pop(v):
                    if w in adj:
                        adj[w].remove(v)
                changed = True
    for v in adj:
        adj[v].sort()
    return adj


def find_crossing_free_cycle(d: Drawing, target: int, budget: int = DEFAULT_CYCLE_BUDGET) -> list[int] | None:
    """First cycle of uncrossed edges with at least ``target`` vertices.

    None means nothing was found in the uncrossed subgraph, or the budget of
    path expansions ran out (logged).
    """
    if target < 3:
        raise ValueError("target must be at least 3")
    adj = uncrossed_graph(d)
    if len(adj) < target:
        return None
    expansions = 0
    for start in sorted(adj):
        path = [start]
        on_path = {start}
        # stack of neighbour iterators, one per path vertex
        stack = [iter([w for w in adj[start] if w > start])]
        while stack:
            nxt = next(stack[-1], None)
            if nxt is None:
                stack.pop()
                on_path.discard(path.pop())
                continue
            if nxt in on_path:
                continue
            expansions += 1
            if expansions > budget:
                log.info("cycle search budget of %d expansions exhausted", budget)
                return None
            path.append(nxt)
            on_path.add(nxt)
            if len(path) >= target and start in adj[nxt]:
                return list(path)
            stack.append(iter([w for w in adj[nxt] if w > start]))
    return None


@dataclass(frozen=True)
class PairEvidence:
    i: int
    j: int
    face: int
    vi_on_boundary: bool
    vj_on_boundary: bool

    @property
    def ok(self) -> bool:
        return self.vi_on_boundary and self.vj_on_boundary


@dataclass(frozen=True)
class ShellingCertificate:
    S: tuple[int, ...]
    witness: FaceRef
    pairs: tuple[PairEvidence, ...]

    @property
    def valid(self) -> bool:
        return all(p.ok for p in self.pairs)

    @property
    def s(self) -> int:
        return len(self.S)

    def to_json(self) -> dict:
        if self.witness.is_unbounded:
            witness = "unbounded"
        else:
            witness = {"x": format_scalar(self.witness.point[0]), "y": format_scalar(self.witness.point[1])}
        return {
            "S": list(self.S),
            "witness": witness,
            "pairs": [
                {"i": p.i, "j": p.j, "vi_on_boundary": p.vi_on_boundary, "vj_on_boundary": p.vj_on_boundary}
                for p in self.pairs
            ],
            "valid": self.valid,
        }


def verify_shelling_direct(d: Drawing, S: Sequence[int], witness: FaceRef = UNBOUNDED) -> ShellingCertificate:
    """Check the definition pair by pair on the sub-drawings D_ij."""
    S = tuple(S)
    if len(set(S)) != len(S) or not S:
        raise StructuralError("S must be a nonempty sequence of distinct vertices")
    if set(S) - set(d.vertices):
        raise StructuralError("S names vertices not in the drawing")
    require_good(d)
    full = planarize(d)
    if not witness.is_unbounded and full.on_drawing(witness.point):
        raise PerturbationError(f"witness {witness} lies on the drawing")
    pairs = []
    s = len(S)
    if s == 1:
        face = full.locate(witness)
        on = S[0] in full.face_vertices(face) if full.faces[face] else True
        pairs.append(PairEvidence(1, 1, face, on, on))
    for i in range(1, s + 1):
        for j in range(i + 1, s + 1):
            removed = set(S[: i - 1]) | set(S[j:])
            sub = delete_vertices(d, removed)
            arr = planarize(sub)
            face = arr.locate(witness)
            verts = arr.face_vertices(face)
            pairs.append(PairEvidence(i, j, face, S[i - 1] in verts, S[j - 1] in verts))
    return ShellingCertificate(S, witness, tuple(pairs))


def lemma_witness(d: Drawing, cycle: Sequence[int]) -> FaceRef:
    """Reference point in the face left of the closing edge v_s -> v_1."""
    return FaceRef(seat_point_left(d, cycle[-1], cycle[0]))


@dataclass
class BoundVerdict:
    n: int
    s: int | None
    kind: str | None
    crossings: int
    zeta: int
    bound_chain: list[BoundVerdict] = field(default_factory=list)
    conclusion: str = "inconclusive"
    cycle: tuple[int, ...] | None = None
    certificate: ShellingCertificate | None = None
    witness: FaceRef | None = None

    def to_json(self) -> dict:
        out = {
            "n": self.n,
            "s": self.s,
            "kind": self.kind,
            "crossings": self.crossings,
            "zeta": self.zeta,
            "conclusion": self.conclusion,
            "bound_chain": [{"k": b.k, "lhs": b.lhs, "rhs": b.rhs, "pass": b.passed} for b in self.bound_chain],
        }
        if self.cycle is not None:
            out["cycle"] = list(self.cycle)
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        if self.witness is not None:
            out["witness"] = str(self.witness)
        return out


def theorem1_pipeline(
    d: Drawing,
    S: Sequence[int] | None = None,
    witness: FaceRef = UNBOUNDED,
    cycle_budget: int = DEFAULT_CYCLE_BUDGET,
) -> BoundVerdict:
    """Find an s-shelling with s >= n/2 and check what it promises.

    Conclusions: ``conclusive`` (shelling found, crossing bound and the
    E_{<=<=k} chain hold), ``violated`` (shelling found but a promised bound
    fails, which would falsify the theorem), ``inconclusive`` (no shelling
    found; never read as non-shellable).
    """
    n = d.n
    crossings = crossing_count(d)
    verdict = BoundVerdict(n, None, None, crossings, zeta(n))
    need = math.ceil(n / 2)

    found_witness: FaceRef | None = None
    if n >= 3:
        cycle = find_crossing_free_cycle(d, max(need, 3), cycle_budget)
        if cycle is not None and check_lemma_cycle(d, cycle).passed:
            verdict.kind, verdict.s, verdict.cycle = "lemma-cycle", len(cycle), tuple(cycle)
            found_witness = lemma_witness(d, cycle)
    if verdict.kind is None:
        try:
            bounded = is_x_bounded(d)
        except ClassificationError:
            bounded = False
        if bounded:
            cert = verify_shelling_direct(d, x_order(d), UNBOUNDED)
            if cert.valid:
                verdict.kind, verdict.s, verdict.certificate = "x-order", cert.s, cert
                found_witness = UNBOUNDED
    if verdict.kind is None and S is not None:
        cert = verify_shelling_direct(d, S, witness)
        if cert.valid and 2 * cert.s >= n:
            verdict.kind, verdict.s, verdict.certificate = "direct", cert.s, cert
            found_witness = witness

    if verdict.kind is None or 2 * verdict.s < n:
        verdict.conclusion = "inconclusive"
        return verdict
    verdict.witness = found_witness
    kmax = min(verdict.s - 2, (n - 3) // 2)
    if kmax >= 0:
        verdict.bound_chain = check_shellable_bound(d, found_witness, kmax, SideOracle(d, found_witness))
    ok = crossings >= verdict.zeta and all(b.passed for b in verdict.bound_chain)
    verdict.conclusion = "conclusive" if ok else "violated"
    return verdict
