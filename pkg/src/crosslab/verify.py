"""The reproduction battery behind ``crosslab verify --suite paper``.

Each criterion is a function returning a :class:`CriterionResult`; the
acceptance test and the CLI share them.  Generated drawings are cached in a
:class:`Corpus` so the suite builds each one once.
"""

from __future__ import annotations

import json
import logging
import math
import time
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

from . import kedges
from .arrangement import UNBOUNDED, boundary_vertices, planarize
from .constructions import (
    ClassificationError,
    blazek_koman,
    convex,
    harary_hill,
    is_monotone,
    is_x_bounded,
    layout_crossings,
    random_two_page,
    realize,
)
from .drawing import Drawing, crossing_count, delete_vertices
from .kedges import (
    SideOracle,
    check_identity2,
    check_prop_lastpoint,
    check_recurrence,
    lower_bound_from_table,
)
from .optimizer import BoundViolation, exact_min_crossings, local_search
from .shelling import (
    check_lemma_cycle,
    find_crossing_free_cycle,
    lemma_witness,
    theorem1_pipeline,
    verify_shelling_direct,
)
from .spherical import monte_carlo_mean

log = logging.getLogger(__name__)

CONSTRUCTION_N = range(3, 15)
CONVEX_N = range(4, 11)
RANDOM_COUNT = 200
RANDOM_N = range(5, 12)
SHELL_N = range(5, 15)
EXACT_N = range(4, 9)
SEARCH_N = range(9, 13)
SEARCH_SEEDS = 20
SEARCH_RATE = 0.95
MC_SAMPLES = 20000
MC_SEED = 20240611


def zeta(n: int) -> int:
    # looked up through the module so a patched kedges.zeta is seen here
    return kedges.zeta(n)


@dataclass
class CriterionResult:
    cid: int
    title: str
    passed: bool
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.cid:>2}. {self.title} ({self.seconds:.1f}s)"

    def to_json(self) -> dict:
        return {"id": self.cid, "title": self.title, "pass": self.passed, "detail": self.detail, "seconds": round(self.seconds, 3)}


class Corpus:
    """Generated drawings shared by the criteria."""

    @cached_property
    def bk(self) -> dict[int, tuple]:
        return {n: blazek_koman(n) for n in CONSTRUCTION_N}

    @cached_property
    def hh(self) -> dict[int, tuple]:
        return {n: harary_hill(n) for n in CONSTRUCTION_N}

    @cached_property
    def convex(self) -> dict[int, Drawing]:
        return {n: convex(n) for n in CONVEX_N}

    @cached_property
    def random(self) -> list[tuple[int, Drawing]]:
        out = []
        sizes = list(RANDOM_N)
        for seed in range(RANDOM_COUNT):
            n = sizes[seed % len(sizes)]
            out.append((seed, realize(random_two_page(n, seed))))
        return out

    def identity_corpus(self) -> list[tuple[str, Drawing]]:
        items = [(f"convex({n})", d) for n, d in self.convex.items()]
        items += [(f"blazek_koman({n})", d) for n, (_, d) in self.bk.items()]
        items += [(f"harary_hill({n})", d) for n, (_, d) in self.hh.items()]
        items += [(f"random_two_page({d.n}, seed={s})", d) for s, d in self.random]
        return items


def _timed(cid: int, title: str, fn, corpus: Corpus) -> CriterionResult:
    t = time.perf_counter()
    try:
        passed, detail = fn(corpus)
    except Exception as exc:  # a crash is a failure, reported with its message
        log.exception("criterion %d crashed", cid)
        passed, detail = False, {"error": f"{type(exc).__name__}: {exc}"}
    return CriterionResult(cid, title, passed, detail, time.perf_counter() - t)


def c1_constructions(c: Corpus):
    bad = []
    for fam, table in (("blazek_koman", c.bk), ("harary_hill", c.hh)):
        for n, (layout, d) in table.items():
            comb_count, geo = layout_crossings(layout), crossing_count(d)
            if not comb_count == geo == zeta(n):
                bad.append({"family": fam, "n": n, "combinatorial": comb_count, "geometric": geo, "zeta": zeta(n)})
    spots = {8: zeta(8), 10: zeta(10), 12: zeta(12)}
    ok = not bad and spots == {8: 18, 10: 60, 12: 150}
    return ok, {"failures": bad, "spot_values": spots}


def c2_identity(c: Corpus):
    bad = []
    items = c.identity_corpus()
    for name, d in items:
        rep = check_identity2(d)
        if not rep.equal:
            bad.append({"drawing": name, "crossings": rep.crossings, "formula": rep.formula})
    return not bad, {"checked": len(items), "failures": bad}


def c3_lastpoint(c: Corpus):
    bad = []
    checked = 0
    for name, d in c.identity_corpus():
        arr = planarize(d)
        oracle = SideOracle(d, UNBOUNDED)
        for x in sorted(boundary_vertices(arr, UNBOUNDED)):
            checked += 1
            rep = check_prop_lastpoint(d, x, UNBOUNDED, arr, oracle)
            if not rep.passed:
                bad.append({"drawing": name, "x": x, "failures": [list(f) for f in rep.failures]})
    return not bad, {"checked": checked, "failures": bad[:20]}


def _invariant_one(d: Drawing):
    """All (U, x, y, k) with |U| <= 2 and x on the boundary of D(U)."""
    n = d.n
    kmax = (n - 3) // 2
    if kmax < 0:
        return 0, []
    oracle = SideOracle(d, UNBOUNDED)
    ids = d.vertex_ids
    k_full = oracle.edge_k_values(ids)
    k_minus = {y: oracle.edge_k_values([v for v in ids if v != y]) for y in ids}
    checked, bad = 0, []
    for size in range(0, 3):
        i = size + 1
        if i - 1 > kmax:
            break
        for U in combinations(ids, size):
            sub = delete_vertices(d, U)
            for x in sorted(boundary_vertices(planarize(sub), UNBOUNDED)):
                for y in ids:
                    if y == x or y in U:
                        continue
                    # (D, D_y)-invariant <=k-edges at x, per k, avoiding U
                    js = []
                    for z in ids:
                        if z in U or z in (x, y):
                            continue
                        e = (min(x, z), max(x, z))
                        if k_full[e] == k_minus[y][e]:
                            js.append(k_full[e])
                    for k in range(i - 1, kmax + 1):
                        checked += 1
                        found = sum(1 for j in js if j <= k)
                        if found < k - i + 2:
                            bad.append({"U": list(U), "x": x, "y": y, "k": k, "found": found, "need": k - i + 2})
    return checked, bad


def c4_invariant(c: Corpus):
    total, bad = 0, []
    for name, d in c.identity_corpus():
        checked, fails = _invariant_one(d)
        total += checked
        bad += [dict(f, drawing=name) for f in fails]
    return not bad, {"checked": total, "failures": bad[:20]}


def _hull_cycle(d: Drawing):
    cycle = find_crossing_free_cycle(d, max(math.ceil(d.n / 2), 3))
    if cycle is None or not check_lemma_cycle(d, cycle).passed:
        return None
    return cycle


def c5_recurrence(c: Corpus):
    cases = {"convex(8)": c.convex[8], "blazek_koman(9)": c.bk[9][1], "harary_hill(10)": c.hh[10][1]}
    bad, steps = [], 0
    orders = {}
    for name, d in cases.items():
        order = _hull_cycle(d)
        if order is None:
            bad.append({"drawing": name, "error": "no hull cycle"})
            continue
        orders[name] = order
        oracle = SideOracle(d, lemma_witness(d, order))
        for kprime in range(0, d.n // 2):
            trace = check_recurrence(d, order, kprime, lemma_witness(d, order), oracle)
            steps += len(trace.steps)
            for s in trace.steps:
                if not s.holds:
                    bad.append({"drawing": name, "kprime": kprime, "r": s.r, "lhs": s.lhs,
                                "rhs": s.prev + s.incident_term + s.invariant_term})
    return not bad, {"steps": steps, "orders": orders, "failures": bad}


def c6_shelling_bound(c: Corpus):
    rows, bad = [], []
    for fam, table in (("blazek_koman", c.bk), ("harary_hill", c.hh)):
        for n in SHELL_N:
            v = theorem1_pipeline(table[n][1])
            ok = (
                v.conclusion == "conclusive"
                and v.s is not None
                and 2 * v.s >= n
                and v.crossings >= zeta(n)
                and len(v.bound_chain) == min(v.s - 2, (n - 3) // 2) + 1
                and all(b.passed for b in v.bound_chain)
            )
            rows.append({"family": fam, "n": n, "s": v.s, "kind": v.kind, "conclusion": v.conclusion})
            if not ok:
                bad.append(rows[-1])
    return not bad, {"runs": len(rows), "failures": bad}


def c7_certifiers(c: Corpus):
    checked, bad = 0, []
    items = c.identity_corpus()
    for name, d in items:
        if d.n < 3:
            continue
        cycles = {tuple(cy) for t in {3, max(3, math.ceil(d.n / 2))} if (cy := find_crossing_free_cycle(d, t))}
        for cycle in sorted(cycles):
            if not check_lemma_cycle(d, cycle).passed:
                continue
            checked += 1
            cert = verify_shelling_direct(d, cycle, lemma_witness(d, cycle))
            if not cert.valid:
                bad.append({"drawing": name, "cycle": list(cycle)})
    return checked > 0 and not bad, {"lemma_cycles": checked, "corpus": len(items), "failures": bad}


def c8_optimizer(c: Corpus):
    detail: dict = {"exact": {}, "local_search": {}}
    ok = True
    try:
        for n in EXACT_N:
            r = exact_min_crossings(n)
            detail["exact"][n] = {"count": r.count, "status": r.status}
            ok &= r.count == zeta(n) and r.status == "optimal"
        for n in SEARCH_N:
            counts = [local_search(n, seed=s).count for s in range(SEARCH_SEEDS)]
            hits = sum(1 for x in counts if x == zeta(n))
            detail["local_search"][n] = {"hits": hits, "runs": SEARCH_SEEDS, "min": min(counts)}
            ok &= hits >= SEARCH_RATE * SEARCH_SEEDS and min(counts) >= zeta(n)
    except BoundViolation as exc:
        return False, dict(detail, error=str(exc))
    return ok, detail


def c9_moon(c: Corpus):
    r8 = monte_carlo_mean(8, MC_SAMPLES, MC_SEED)
    r5 = monte_carlo_mean(5, MC_SAMPLES, MC_SEED + 1)
    ok = r8.rel_error <= 0.01 and r5.rel_error <= 0.02
    detail = {
        f"n={r.n}": {"mean": round(r.mean, 4), "expected": float(r.expected), "rel_error": round(r.rel_error, 5),
                     "samples": r.samples, "seed": r.seed}
        for r in (r8, r5)
    }
    return ok, detail


def c10_table(c: Corpus):
    bad = [n for n in range(3, 101) if lower_bound_from_table(n) != zeta(n)]
    return not bad, {"range": [3, 100], "failures": bad}


def c11_predicates(c: Corpus):
    bad = []
    two_page = [(f"blazek_koman({n})", d) for n, (_, d) in c.bk.items()]
    two_page += [(f"random_two_page({d.n}, seed={s})", d) for s, d in c.random]
    for name, d in two_page:
        if not (is_monotone(d) and is_x_bounded(d)):
            bad.append(name)
    implication = 0
    everything = c.identity_corpus()
    for name, d in everything:
        try:
            mono = is_monotone(d)
        except ClassificationError:
            continue  # shared x-coordinates: the predicates do not apply
        except AssertionError:
            bad.append(f"{name}: monotone but not x-bounded")
            continue
        implication += 1
        if mono and not is_x_bounded(d):
            bad.append(f"{name}: monotone but not x-bounded")
    return not bad, {"two_page": len(two_page), "implication_checked": implication, "failures": bad}


CRITERIA = [
    (1, "constructions have exactly Z(n) crossings, 3 <= n <= 14", c1_constructions),
    (2, "crossing identity from the k-edge table", c2_identity),
    (3, "edges to the boundary order have the predicted k", c3_lastpoint),
    (4, "enough invariant <=k-edges at boundary vertices", c4_invariant),
    (5, "deletion recurrence holds at every step", c5_recurrence),
    (6, "shelling found and Z(n) bound chain holds, 5 <= n <= 14", c6_shelling_bound),
    (7, "lemma cycles pass the definitional shelling check", c7_certifiers),
    (8, "optimizer reaches and never beats Z(n)", c8_optimizer),
    (9, "spherical Monte Carlo mean matches n(n-1)(n-2)(n-3)/64", c9_moon),
    (10, "table bound equals Z(n), 3 <= n <= 100", c10_table),
    (11, "2-page drawings are monotone; monotone implies x-bounded", c11_predicates),
]


def run_suite(only=None, corpus: Corpus | None = None, echo=None) -> list[CriterionResult]:
    corpus = Corpus() if corpus is None else corpus
    out = []
    for cid, title, fn in CRITERIA:
        if only is not None and cid not in only:
            continue
        res = _timed(cid, title, fn, corpus)
        if echo is not None:
            echo(res.line())
        out.append(res)
    return out


def summary_json(results: list[CriterionResult]) -> str:
    return json.dumps(
        {"suite": "paper", "pass": all(r.passed for r in results), "criteria": [r.to_json() for r in results]},
        sort_keys=True,
        indent=1,
        default=str,
    )
