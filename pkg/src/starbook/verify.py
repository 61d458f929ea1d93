"""Validity checks for pages and whole layouts, with typed violation reports.

A page is a star forest drawn on one surface.  Disk pages must be
crossing-free as chord diagrams.  Cross-cap pages may route a set of
mutually crossing chords through the cap: the operative criterion is
that every chord with at least one crossing partner must join a single
"through" family whose endpoint occurrences, read around the circle,
can be split as a1 .. ak b1 .. bk with chord i joining ai to bi.
Occurrences at a shared vertex form a consecutive tie block whose
internal arrangement is free.  Chords that cross nothing stay in the
planar part of the page.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

from .model import (
    BookLayout,
    CircularOrder,
    Edge,
    Page,
    PageKind,
)

# Violation kinds
DUPLICATE_EDGE = "duplicate_edge"
MISSING_EDGE = "missing_edge"
FOREIGN_EDGE = "foreign_edge"
CROSSING_PAIR = "crossing_pair"
NOT_STAR_FOREST = "not_star_forest"
CROSSCAP_UNROUTABLE = "crosscap_unroutable"
TOO_MANY_CROSSCAPS = "too_many_crosscaps"
ORDER_NOT_PERMUTATION = "order_not_permutation"


class Profile(str, Enum):
    """What a layout must satisfy to count as valid."""

    STRICT = "strict"              # all pages disks, crossing-free
    RELAXED = "relaxed"            # at most one cross-cap page
    STAR_FORESTS_ONLY = "saonly"   # ignore the order and all crossings


@dataclass(frozen=True)
class Violation:
    """One independently re-checkable defect of a layout."""

    kind: str
    edge: Edge | None = None
    page: int | None = None
    pages: tuple[int, ...] = ()
    pair: tuple[Edge, Edge] | None = None
    count: int | None = None

    def sort_key(self):
        return (
            self.kind,
            -1 if self.page is None else self.page,
            self.pages,
            self.edge or (0, 0),
            self.pair or ((0, 0), (0, 0)),
            self.count or 0,
        )

    def describe(self) -> str:
        bits = [self.kind]
        if self.edge is not None:
            bits.append(f"edge {self.edge[0]}-{self.edge[1]}")
        if self.pair is not None:
            (a, b), (c, d) = self.pair
            bits.append(f"chords {a}-{b} x {c}-{d}")
        if self.page is not None:
            bits.append(f"page {self.page + 1}")
        if self.pages:
            bits.append("pages " + ",".join(str(p + 1) for p in self.pages))
        if self.count is not None:
            bits.append(f"count {self.count}")
        return " ".join(bits)


@dataclass(frozen=True)
class VerificationReport:
    passed: bool
    violations: tuple[Violation, ...]

    @staticmethod
    def from_violations(violations) -> "VerificationReport":
        vs = tuple(sorted(violations, key=Violation.sort_key))
        return VerificationReport(passed=not vs, violations=vs)

    def kinds(self) -> Counter:
        return Counter(v.kind for v in self.violations)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "violations": [
                {k: v for k, v in vars(viol).items() if v not in (None, ())}
                for viol in self.violations
            ],
        }


class StarForestCheck(NamedTuple):
    ok: bool
    witness: Edge | None
    components: int


def is_star_forest(edges) -> StarForestCheck:
    """Decide whether an edge set is a vertex-disjoint union of stars.

    Equivalently: no edge has both endpoints of degree >= 2.  On failure
    the witness is the first such edge in sorted order.  The component
    count covers connected components among non-isolated vertices and is
    reported whether or not the check passes.
    """
    es = {(u, v) if u < v else (v, u) for u, v in edges}
    deg: dict[int, int] = {}
    for u, v in es:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    bad = [e for e in es if deg[e[0]] >= 2 and deg[e[1]] >= 2]
    witness = min(bad) if bad else None

    parent: dict[int, int] = {}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    unions = 0
    for u, v in es:
        parent.setdefault(u, u)
        parent.setdefault(v, v)
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            unions += 1
    components = len(parent) - unions
    return StarForestCheck(witness is None, witness, components)


def _star_forest_violation(edges) -> Edge | None:
    """First edge (sorted) with both endpoints of degree >= 2, if any."""
    deg: dict[int, int] = {}
    for u, v in edges:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    bad = [e for e in edges if deg[e[0]] >= 2 and deg[e[1]] >= 2]
    return min(bad) if bad else None


def _noncrossing(order: CircularOrder, edges) -> tuple[bool, tuple[Edge, Edge] | None]:
    """Decide whether a chord family is pairwise non-crossing.

    Single sweep around the circle with a stack (balanced-parenthesis
    test); chords sharing a vertex occupy the same position and never
    conflict.  Returns a witness crossing pair on failure.
    """
    starts: dict[int, list[tuple[int, Edge]]] = defaultdict(list)
    n_end: Counter = Counter()
    for e in edges:
        u, v = e
        pu, pv = order.position(u), order.position(v)
        lo, hi = (pu, pv) if pu < pv else (pv, pu)
        starts[lo].append((hi, e))
        n_end[hi] += 1
    stack: list[tuple[int, Edge]] = []
    for pos in sorted(starts.keys() | n_end.keys()):
        closed = 0
        while stack and stack[-1][0] == pos:
            stack.pop()
            closed += 1
        if closed < n_end.get(pos, 0):
            # Some chord ending here is buried: it crosses the chord now on top.
            top = stack[-1]
            buried = next(entry for entry in reversed(stack) if entry[0] == pos)
            return False, (buried[1], top[1])
        if pos in starts:
            for item in sorted(starts[pos], key=lambda t: (-t[0], t[1])):
                stack.append(item)
    return True, None


def disk_page_valid(order: CircularOrder, page: Page) -> tuple[bool, tuple[Edge, Edge] | None]:
    """True iff no two chords of a disk page cross; else some crossing pair."""
    if page.kind is not PageKind.DISK:
        raise ValueError("disk_page_valid requires a disk page")
    return _noncrossing(order, page.edges)


@dataclass(frozen=True)
class CrossCapSplit:
    """Certificate for a valid cross-cap page.

    `through` chords pass through the cap once, `planar` ones not at
    all; `rotation` is the index of the accepted rotation of the
    through-endpoint occurrence sequence (see crosscap_occurrences).
    """

    through: frozenset[Edge]
    planar: frozenset[Edge]
    rotation: int


def crosscap_occurrences(order: CircularOrder, through) -> list[int]:
    """Endpoint occurrences of the through chords, grouped by spine position.

    One entry per (vertex, incident through chord); occurrences of a
    shared vertex are consecutive (a tie block).
    """
    count: Counter = Counter()
    for u, v in through:
        count[u] += 1
        count[v] += 1
    occ: list[int] = []
    for v in order.seq:
        occ.extend([v] * count.get(v, 0))
    return occ


def crosscap_page_valid(order: CircularOrder, page: Page) -> tuple[bool, CrossCapSplit | None]:
    """Decide whether a cross-cap page is drawable without crossings.

    The forced through set is exactly the chords having at least one
    crossing partner within the page: a planar chord can never cross a
    through chord, so nothing smaller or larger needs to be tested.
    The through set is accepted iff some rotation of its endpoint
    occurrence sequence pairs occurrence i with occurrence i+k such that
    the induced vertex pairs are exactly the through chords.
    """
    if page.kind is not PageKind.CROSSCAP:
        raise ValueError("crosscap_page_valid requires a cross-cap page")
    return _crosscap_valid(order, page.edge_set)


def _crosscap_valid(order: CircularOrder, edges) -> tuple[bool, CrossCapSplit | None]:
    es = sorted(set(edges))
    k_all = len(es)
    n = len(order)
    pos = order._pos
    try:
        spans = [(pos[u], pos[v]) for u, v in es]
    except KeyError as missing:
        raise ValueError(f"vertex {missing.args[0]} is not in the circular order") from None
    flagged = [False] * k_all
    parallel: list[tuple[int, int]] = []  # vertex-disjoint non-crossing pairs
    for i in range(k_all):
        pu, pv = spans[i]
        ui, vi = es[i]
        for j in range(i + 1, k_all):
            uj, vj = es[j]
            if ui == uj or ui == vj or vi == uj or vi == vj:
                continue
            qu, qv = spans[j]
            if (0 < (qu - pu) % n < (pv - pu) % n) != (0 < (qv - pu) % n < (pv - pu) % n):
                flagged[i] = flagged[j] = True
            else:
                parallel.append((i, j))
    through = [e for e, f in zip(es, flagged) if f]
    planar = frozenset(e for e, f in zip(es, flagged) if not f)
    if not through:
        return True, CrossCapSplit(frozenset(), planar, 0)
    # Fast reject: in any routable family two through chords either
    # cross or share an endpoint (their occurrences alternate or tie).
    for i, j in parallel:
        if flagged[i] and flagged[j]:
            return False, None
    occ = crosscap_occurrences(order, through)
    k = len(through)
    m = 2 * k
    want = sorted(through)
    for rot in range(m):
        pairs = []
        ok = True
        for i in range(k):
            a = occ[(rot + i) % m]
            b = occ[(rot + i + k) % m]
            if a == b:
                ok = False
                break
            pairs.append((a, b) if a < b else (b, a))
        if ok and sorted(pairs) == want:
            return True, CrossCapSplit(frozenset(through), planar, rot)
    return False, None


def verify_layout(layout: BookLayout, profile: Profile) -> VerificationReport:
    """Check a layout against a profile; all problems become violations.

    Partition exactness and per-page star-forest checks always run; the
    geometric checks and page-kind constraints are skipped under
    STAR_FORESTS_ONLY, as is the spine-order check.
    """
    profile = Profile(profile)
    g = layout.graph
    violations: list[Violation] = []
    geometric = profile is not Profile.STAR_FORESTS_ONLY

    order_ok = layout.order.is_permutation_of(g.n)
    if geometric and not order_ok:
        violations.append(Violation(ORDER_NOT_PERMUTATION))

    # Partition exactness: every graph edge on exactly one page.  The
    # report is sorted at the end, so iteration order is free here.
    locations: dict[Edge, list[int]] = defaultdict(list)
    for pi, page in enumerate(layout.pages):
        for e in page.edges:
            locations[e].append(pi)
    for e in g.edges:
        locs = locations.get(e)
        if not locs:
            violations.append(Violation(MISSING_EDGE, edge=e))
        elif len(locs) > 1:
            violations.append(Violation(DUPLICATE_EDGE, edge=e, pages=tuple(locs)))
    for e, locs in locations.items():
        if e not in g.edges:
            for pi in locs:
                violations.append(Violation(FOREIGN_EDGE, edge=e, page=pi))

    # Every page, the cross-cap one included, must be a star forest.
    for pi, page in enumerate(layout.pages):
        witness = _star_forest_violation(page.edge_set)
        if witness is not None:
            violations.append(Violation(NOT_STAR_FOREST, edge=witness, page=pi))

    if geometric and order_ok:
        spine = set(layout.order.seq)
        for pi, page in enumerate(layout.pages):
            drawable = tuple(e for e in page.edge_set if e[0] in spine and e[1] in spine)
            if page.kind is PageKind.DISK:
                ok, pair = _noncrossing(layout.order, drawable)
                if not ok:
                    violations.append(Violation(CROSSING_PAIR, pair=pair, page=pi))
            else:
                ok, _split = _crosscap_valid(layout.order, drawable)
                if not ok:
                    violations.append(Violation(CROSSCAP_UNROUTABLE, page=pi))

    if geometric:
        caps = tuple(pi for pi, p in enumerate(layout.pages) if p.kind is PageKind.CROSSCAP)
        allowed = 0 if profile is Profile.STRICT else 1
        if len(caps) > allowed:
            violations.append(Violation(TOO_MANY_CROSSCAPS, pages=caps, count=len(caps)))

    return VerificationReport.from_violations(violations)
