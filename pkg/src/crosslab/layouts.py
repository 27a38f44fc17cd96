"""Combinatorial encodings of 2-page and cylindrical drawings."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping

from .drawing import EdgeKey, StructuralError, edge_key
from .geometry import format_scalar, parse_scalar

TOP, BOTTOM = "top", "bottom"


def _pair_str(e: EdgeKey) -> str:
    return f"{e[0]}-{e[1]}"


def _parse_pair(text: str) -> EdgeKey:
    try:
        u, v = (int(t) for t in text.split("-"))
    except ValueError as exc:
        raise StructuralError(f"bad edge key {text!r}") from exc
    return edge_key(u, v)


@dataclass(frozen=True)
class TwoPageLayout:
    spine: tuple[int, ...]
    pages: Mapping[EdgeKey, str]

    def __post_init__(self):
        object.__setattr__(self, "spine", tuple(self.spine))
        pages = {edge_key(*e): p for e, p in self.pages.items()}
        object.__setattr__(self, "pages", dict(sorted(pages.items())))
        if len(set(self.spine)) != len(self.spine):
            raise StructuralError("spine repeats a vertex")
        expected = {edge_key(u, v) for u, v in combinations(self.spine, 2)}
        if set(self.pages) != expected:
            raise StructuralError("every edge needs exactly one page")
        bad = {p for p in self.pages.values()} - {TOP, BOTTOM}
        if bad:
            raise StructuralError(f"unknown page names {sorted(bad)}")

    def position(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.spine)}

    def restrict(self, keep) -> "TwoPageLayout":
        return TwoPageLayout(
            tuple(v for v in self.spine if v in keep),
            {e: p for e, p in self.pages.items() if e[0] in keep and e[1] in keep},
        )

    def to_json(self) -> dict:
        return {
            "spine": list(self.spine),
            "pages": {_pair_str(e): p for e, p in self.pages.items()},
        }

    @classmethod
    def from_json(cls, obj: dict) -> "TwoPageLayout":
        return cls(tuple(int(v) for v in obj["spine"]), {_parse_pair(k): p for k, p in obj["pages"].items()})


def crossings_two_page(layout: TwoPageLayout) -> int:
    """Same-page edge pairs whose endpoints interleave along the spine."""
    pos = layout.position()
    by_page: dict[str, list[tuple[int, int]]] = {TOP: [], BOTTOM: []}
    for (u, v), page in layout.pages.items():
        a, b = sorted((pos[u], pos[v]))
        by_page[page].append((a, b))
    total = 0
    for chords in by_page.values():
        for (a, b), (c, d) in combinations(chords, 2):
            if a < c < b < d or c < a < d < b:
                total += 1
    return total


def _frac_mod1(x: Fraction) -> Fraction:
    return x - math.floor(x)


@dataclass(frozen=True)
class CylindricalLayout:
    """Vertices on two concentric circles, positions in turns.

    ``delta[e]`` for an inner-outer edge is the signed angular change from
    the inner endpoint to the outer endpoint along an angle-monotone spiral.
    """

    inner: tuple[tuple[int, Fraction], ...]
    outer: tuple[tuple[int, Fraction], ...]
    delta: Mapping[EdgeKey, Fraction]

    def __post_init__(self):
        inner = tuple((int(v), Fraction(t)) for v, t in self.inner)
        outer = tuple((int(v), Fraction(t)) for v, t in self.outer)
        object.__setattr__(self, "inner", inner)
        object.__setattr__(self, "outer", outer)
        object.__setattr__(self, "delta", dict(sorted((edge_key(*e), Fraction(x)) for e, x in self.delta.items())))
        ids_in = [v for v, _ in inner]
        ids_out = [v for v, _ in outer]
        if len(set(ids_in) | set(ids_out)) != len(ids_in) + len(ids_out):
            raise StructuralError("inner and outer circles must partition the vertices")
        for ring in (inner, outer):
            turns = [_frac_mod1(t) for _, t in ring]
            if len(set(turns)) != len(turns):
                raise StructuralError("two vertices share a position on one circle")
        side = {v: "inner" for v in ids_in} | {v: "outer" for v in ids_out}
        expected = {edge_key(a, b) for a in ids_in for b in ids_out}
        for e in self.delta:
            if e[0] not in side or e[1] not in side:
                raise StructuralError(f"delta names unknown vertex in {e}")
            if side[e[0]] == side[e[1]]:
                raise StructuralError(f"edge {e} joins one circle but is routed through the annulus")
        if set(self.delta) != expected:
            raise StructuralError("every inner-outer edge needs a displacement")
        turn = self.turns()
        for e, dlt in self.delta.items():
            a, b = self.annulus_ends(e)
            if (turn[a] + dlt - turn[b]).denominator != 1:
                raise StructuralError(f"displacement of {e} does not land on its outer endpoint")

    @property
    def inner_ids(self) -> tuple[int, ...]:
        return tuple(v for v, _ in self.inner)

    @property
    def outer_ids(self) -> tuple[int, ...]:
        return tuple(v for v, _ in self.outer)

    def turns(self) -> dict[int, Fraction]:
        return {v: t for v, t in self.inner + self.outer}

    def annulus_ends(self, e: EdgeKey) -> tuple[int, int]:
        """(inner endpoint, outer endpoint) of an annulus edge."""
        inner = set(self.inner_ids)
        return (e[0], e[1]) if e[0] in inner else (e[1], e[0])

    def restrict(self, keep) -> "CylindricalLayout":
        return CylindricalLayout(
            tuple((v, t) for v, t in self.inner if v in keep),
            tuple((v, t) for v, t in self.outer if v in keep),
            {e: x for e, x in self.delta.items() if e[0] in keep and e[1] in keep},
        )

    def to_json(self) -> dict:
        return {
            "inner": [{"id": v, "turn": format_scalar(t)} for v, t in self.inner],
            "outer": [{"id": v, "turn": format_scalar(t)} for v, t in self.outer],
            "delta": {_pair_str(e): format_scalar(x) for e, x in self.delta.items()},
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CylindricalLayout":
        return cls(
            tuple((int(r["id"]), parse_scalar(r["turn"])) for r in obj["inner"]),
            tuple((int(r["id"]), parse_scalar(r["turn"])) for r in obj["outer"]),
            {_parse_pair(k): parse_scalar(x) for k, x in obj["delta"].items()},
        )


def geodesic_delta(start: Fraction, end: Fraction) -> Fraction:
    """Shortest signed turn from start to end; an exact half turn goes +1/2."""
    diff = _frac_mod1(end - start)
    return diff - 1 if diff > Fraction(1, 2) else diff


def _chord_crossings(ring: tuple[tuple[int, Fraction], ...]) -> int:
    pos = {v: _frac_mod1(t) for v, t in ring}
    chords = [tuple(sorted((pos[a], pos[b]))) for a, b in combinations(pos, 2)]
    total = 0
    for (a, b), (c, d) in combinations(chords, 2):
        if len({a, b, c, d}) < 4:
            continue
        if (a < c < b) != (a < d < b):
            total += 1
    return total


def integers_strictly_between(x: Fraction, y: Fraction) -> int:
    lo, hi = (x, y) if x <= y else (y, x)
    first = math.floor(lo) + 1
    last = math.ceil(hi) - 1
    return max(0, last - first + 1)


def crossings_cylindrical(layout: CylindricalLayout) -> int:
    """Chords interleaving on each circle plus spiral windings in the annulus."""
    total = _chord_crossings(layout.inner) + _chord_crossings(layout.outer)
    turn = layout.turns()
    spirals = [(layout.annulus_ends(e), dlt) for e, dlt in layout.delta.items()]
    for ((a, _), d1), ((c, _), d2) in combinations(spirals, 2):
        start = turn[a] - turn[c]
        total += integers_strictly_between(start, start + d1 - d2)
    return total
