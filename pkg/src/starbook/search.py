"""Exact backtracking solver for star-forest page assignments.

Decides whether a graph's edges fit into k pages under a profile,
returning a verified certificate or an exhaustion proof.  Edges are
assigned in a fixed order (most crossing conflicts first, ties broken
lexicographically); pages are tried in index order and a new empty disk
page may only be opened in index order, which breaks page symmetry.
Under the relaxed profile the last page index is the cross-cap page and
is re-validated on every insertion.

Pruning: a counting bound from the fact that distinct stars of a star
forest can never merge (a page with c star components holds at most
n - c edges), and, on disk-only profiles, a greedy pairwise-crossing
clique among the unassigned edges, whose members that fit no open page
each demand a fresh page of their own.

The search is sequential and canonical, so certificates are
byte-identical across runs; the first witness found is the
lexicographically least assignment in the fixed edge order.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass

from .model import (
    BookLayout,
    CircularOrder,
    Edge,
    Page,
    PageKind,
    SimpleGraph,
    identity_order,
    interleaves,
)
from .verify import Profile, crosscap_page_valid, verify_layout

DEFAULT_NODE_LIMIT = 10**9
DEFAULT_TIME_LIMIT = 600.0


@dataclass(frozen=True)
class SearchProblem:
    graph: SimpleGraph
    budget: int
    profile: Profile
    order: CircularOrder | None = None
    crosscap_allowed: bool = False
    optimize_order: bool = False
    deterministic: bool = True
    node_limit: int = DEFAULT_NODE_LIMIT
    time_limit: float = DEFAULT_TIME_LIMIT
    fixed_pages: tuple[tuple[Edge, ...], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "profile", Profile(self.profile))
        if self.budget < 1:
            raise ValueError("page budget must be at least 1")
        if self.crosscap_allowed and self.profile is not Profile.RELAXED:
            raise ValueError("a cross-cap page requires the relaxed profile")
        if self.optimize_order:
            if self.order is not None:
                raise ValueError("optimize_order requires the order to be unset")
            if self.profile is Profile.STAR_FORESTS_ONLY:
                raise ValueError("order optimization is pointless without geometry")
            if self.graph.n > 9:
                raise ValueError("order optimization is limited to n <= 9")
        if self.order is not None and not self.order.is_permutation_of(self.graph.n):
            raise ValueError("order must be a permutation of the graph's vertices")
        if len(self.fixed_pages) > self.budget:
            raise ValueError("more fixed pages than the budget allows")
        if self.crosscap_allowed and len(self.fixed_pages) >= self.budget:
            raise ValueError("the cross-cap page cannot be prefilled")
        if self.fixed_pages and self.optimize_order:
            raise ValueError("fixed pages require a fixed order")
        seen: set[Edge] = set()
        for page in self.fixed_pages:
            for e in page:
                if e not in self.graph.edges:
                    raise ValueError(f"fixed edge {e} is not a graph edge")
                if e in seen:
                    raise ValueError(f"fixed edge {e} appears twice")
                seen.add(e)


@dataclass(frozen=True)
class SearchOutcome:
    status: str  # "sat" | "unsat" | "aborted"
    layout: BookLayout | None
    nodes: int
    max_depth: int
    wall_time: float
    reason: str | None = None  # "node_limit" | "time_limit" when aborted


class _Abort(Exception):
    def __init__(self, reason: str):
        self.reason = reason


class _Engine:
    """Backtracking core for one fixed spine order."""

    def __init__(self, problem: SearchProblem, order: CircularOrder,
                 node_budget: int, deadline: float):
        self.problem = problem
        self.order = order
        self.n = problem.graph.n
        self.budget = problem.budget
        self.geometric = problem.profile is not Profile.STAR_FORESTS_ONLY
        self.cap_idx = problem.budget - 1 if problem.crosscap_allowed else -1
        self.node_budget = node_budget
        self.deadline = deadline
        self.nodes = 0
        self.max_depth = 0

        fixed = {e for page in problem.fixed_pages for e in page}
        self.all_edges = sorted(problem.graph.edges)
        self.index = {e: i for i, e in enumerate(self.all_edges)}
        assignable = [e for e in self.all_edges if e not in fixed]

        m = len(self.all_edges)
        self.conflict = [0] * m
        if self.geometric:
            for i in range(m):
                for j in range(i + 1, m):
                    if interleaves(order, self.all_edges[i], self.all_edges[j]):
                        self.conflict[i] |= 1 << j
                        self.conflict[j] |= 1 << i
        if self.geometric:
            conflict_deg = {
                e: sum(
                    1 for f in assignable
                    if f != e and (self.conflict[self.index[e]] >> self.index[f]) & 1
                )
                for e in assignable
            }
            assignable.sort(key=lambda e: (-conflict_deg[e], e))
        self.assignable = assignable

        # Greedy pairwise-crossing clique per suffix, for the disk-only bound.
        self.use_clique = self.geometric and not problem.crosscap_allowed
        self.cliques: list[list[int]] = []
        if self.use_clique:
            idxs = [self.index[e] for e in assignable]
            for d in range(len(assignable) + 1):
                clique: list[int] = []
                for ei in idxs[d:]:
                    if all((self.conflict[ei] >> c) & 1 for c in clique):
                        clique.append(ei)
                self.cliques.append(clique)

        b = self.budget
        self.mask = [0] * b
        self.deg = [[0] * (self.n + 1) for _ in range(b)]
        self.comps = [0] * b
        self.size = [0] * b
        self.page_edges: list[list[Edge]] = [[] for _ in range(b)]
        for p, page in enumerate(problem.fixed_pages):
            for e in page:
                if not self._feasible(p, e):
                    raise ValueError(f"fixed page {p} is not a valid star-forest disk page")
                self._apply(p, e)

    # page state updates -------------------------------------------------

    def _partner(self, p: int, x: int) -> int:
        for a, b in self.page_edges[p]:
            if a == x:
                return b
            if b == x:
                return a
        raise AssertionError("partner lookup on isolated vertex")

    def _star_ok(self, p: int, u: int, v: int) -> bool:
        deg = self.deg[p]
        du, dv = deg[u], deg[v]
        if du and dv:
            return False
        if not du and not dv:
            return True
        x = u if du else v
        if deg[x] >= 2:
            return True
        return deg[self._partner(p, x)] == 1

    def _feasible(self, p: int, e: Edge) -> bool:
        u, v = e
        if not self._star_ok(p, u, v):
            return False
        if not self.geometric:
            return True
        if p == self.cap_idx:
            probe = Page(PageKind.CROSSCAP, tuple(self.page_edges[p]) + (e,))
            ok, _ = crosscap_page_valid(self.order, probe)
            return ok
        return not (self.conflict[self.index[e]] & self.mask[p])

    def _apply(self, p: int, e: Edge) -> None:
        u, v = e
        deg = self.deg[p]
        if not deg[u] and not deg[v]:
            self.comps[p] += 1
        deg[u] += 1
        deg[v] += 1
        self.mask[p] |= 1 << self.index[e]
        self.size[p] += 1
        self.page_edges[p].append(e)

    def _undo(self, p: int, e: Edge) -> None:
        u, v = e
        deg = self.deg[p]
        deg[u] -= 1
        deg[v] -= 1
        if not deg[u] and not deg[v]:
            self.comps[p] -= 1
        self.mask[p] &= ~(1 << self.index[e])
        self.size[p] -= 1
        self.page_edges[p].pop()

    # pruning ------------------------------------------------------------

    def _prune(self, depth: int) -> bool:
        n, b = self.n, self.budget
        remaining = len(self.assignable) - depth
        capacity = 0
        open_pages = []
        for p in range(b):
            if self.mask[p]:
                open_pages.append(p)
                capacity += n - self.comps[p] - self.size[p]
        empties = b - len(open_pages)
        if remaining > capacity + empties * (n - 1):
            return True
        if self.use_clique:
            clique = self.cliques[depth]
            if len(clique) > empties:
                need = 0
                for c in clique:
                    cm = self.conflict[c]
                    if all(cm & self.mask[p] for p in open_pages):
                        need += 1
                        if need > empties:
                            return True
        return False

    # search -------------------------------------------------------------

    def run(self) -> bool:
        return self._rec(0)

    def _rec(self, depth: int) -> bool:
        self.nodes += 1
        if depth > self.max_depth:
            self.max_depth = depth
        if self.nodes > self.node_budget:
            raise _Abort("node_limit")
        if not self.nodes % 4096 and time.monotonic() > self.deadline:
            raise _Abort("time_limit")
        if depth == len(self.assignable):
            return True
        if self._prune(depth):
            return False
        e = self.assignable[depth]
        opened_empty = False
        for p in range(self.budget):
            if p == self.cap_idx:
                continue
            if not self.mask[p]:
                if opened_empty:
                    break
                opened_empty = True
            if self._feasible(p, e):
                self._apply(p, e)
                if self._rec(depth + 1):
                    return True
                self._undo(p, e)
        if self.cap_idx >= 0 and self._feasible(self.cap_idx, e):
            self._apply(self.cap_idx, e)
            if self._rec(depth + 1):
                return True
            self._undo(self.cap_idx, e)
        return False

    def extract_layout(self) -> BookLayout:
        pages = []
        for p in range(self.budget):
            if not self.page_edges[p]:
                continue
            kind = PageKind.CROSSCAP if p == self.cap_idx else PageKind.DISK
            pages.append(Page(kind, tuple(sorted(self.page_edges[p]))))
        return BookLayout(self.problem.graph, self.order, tuple(pages))


def canonical_orders(n: int):
    """Circular orders up to rotation and reflection: vertex 1 first and
    the forward reading lexicographically no larger than the reversed."""
    if n > 9:
        raise ValueError("order enumeration is limited to n <= 9")
    if n <= 2:
        yield identity_order(n)
        return
    for p in itertools.permutations(range(2, n + 1)):
        if p[0] > p[-1]:
            continue
        yield CircularOrder((1,) + p)


def solve(problem: SearchProblem) -> SearchOutcome:
    """Complete search for a layout within the page budget.

    Returns a verified Satisfiable certificate, an exhaustion proof with
    node statistics, or an Aborted outcome when a limit is hit (never a
    wrong verdict).  With optimize_order the search runs over all
    canonical spine orders and is satisfiable iff any order is.
    """
    start = time.monotonic()
    deadline = start + problem.time_limit
    nodes = 0
    max_depth = 0

    if problem.optimize_order:
        orders = canonical_orders(problem.graph.n)
    elif problem.order is not None:
        orders = [problem.order]
    else:
        orders = [identity_order(problem.graph.n)]

    for order in orders:
        engine = _Engine(problem, order, problem.node_limit - nodes, deadline)
        try:
            found = engine.run()
        except _Abort as abort:
            return SearchOutcome(
                status="aborted",
                layout=None,
                nodes=nodes + engine.nodes,
                max_depth=max(max_depth, engine.max_depth),
                wall_time=time.monotonic() - start,
                reason=abort.reason,
            )
        nodes += engine.nodes
        max_depth = max(max_depth, engine.max_depth)
        if found:
            layout = engine.extract_layout()
            report = verify_layout(layout, problem.profile)
            if not report.passed:
                raise RuntimeError(
                    "solver produced a certificate that fails verification: "
                    + "; ".join(v.describe() for v in report.violations)
                )
            return SearchOutcome("sat", layout, nodes, max_depth, time.monotonic() - start)
    return SearchOutcome("unsat", None, nodes, max_depth, time.monotonic() - start)


@dataclass(frozen=True)
class ExactValueResult:
    status: str  # "resolved" | "all_unsat" | "aborted"
    k_star: int | None
    witness: BookLayout | None
    unsat_below: SearchOutcome | None
    last_outcome: SearchOutcome | None


def exact_value(
    graph: SimpleGraph,
    profile: Profile,
    lo: int,
    hi: int,
    order: CircularOrder | None = None,
    optimize_order: bool = False,
    crosscap_allowed: bool = False,
    deterministic: bool = True,
    node_limit: int = DEFAULT_NODE_LIMIT,
    time_limit: float = DEFAULT_TIME_LIMIT,
) -> ExactValueResult:
    """Least satisfiable budget in [lo, hi] with witness and UNSAT stats.

    Scans budgets upward so that the exhaustion proof at k*-1 falls out
    of the scan; any abort propagates as an aborted result.
    """
    if lo > hi:
        raise ValueError("empty budget range")
    below: SearchOutcome | None = None
    for k in range(lo, hi + 1):
        outcome = solve(SearchProblem(
            graph=graph,
            budget=k,
            profile=profile,
            order=order,
            optimize_order=optimize_order,
            crosscap_allowed=crosscap_allowed,
            deterministic=deterministic,
            node_limit=node_limit,
            time_limit=time_limit,
        ))
        if outcome.status == "aborted":
            return ExactValueResult("aborted", None, None, below, outcome)
        if outcome.status == "sat":
            return ExactValueResult("resolved", k, outcome.layout, below, outcome)
        below = outcome
    return ExactValueResult("all_unsat", None, None, below, below)
