"""Core value types for circular book layouts of simple graphs.

Vertices are 1-based integer labels placed around a circle (the spine).
An edge is a canonical pair (u, v) with u < v.  A book layout assigns
every edge of a graph to one page; each page is drawn either in a disk
or in a disk with a single cross-cap.

All types here are immutable values and all operations are pure
functions, so everything is safe to share across threads.  The layout
containers are deliberately lenient: structural problems (orders that
are not permutations, pages whose edges are not graph edges, duplicated
edges) are representable and are reported by the verifier rather than
rejected at construction time, so that untrusted certificates can be
loaded and diagnosed.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property

Edge = tuple[int, int]


def edge(u: int, v: int) -> Edge:
    """Canonical edge key for the unordered pair {u, v}."""
    if u == v:
        raise ValueError(f"loop edge at vertex {u}")
    if u < 1 or v < 1:
        raise ValueError(f"vertex labels are 1-based, got ({u}, {v})")
    return (u, v) if u < v else (v, u)


def edge_set(pairs) -> frozenset[Edge]:
    """Canonicalize an iterable of vertex pairs into a set of edge keys."""
    return frozenset(edge(u, v) for u, v in pairs)


@dataclass(frozen=True)
class SimpleGraph:
    """A simple undirected graph on vertices 1..n."""

    n: int
    edges: frozenset[Edge]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"vertex count must be nonnegative, got {self.n}")
        object.__setattr__(self, "edges", frozenset(self.edges))
        for u, v in self.edges:
            if not (1 <= u < v <= self.n):
                raise ValueError(f"edge {u}-{v} outside vertex range 1..{self.n}")

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def max_degree(self) -> int:
        deg = [0] * (self.n + 1)
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return max(deg) if deg else 0

    def has_edge(self, u: int, v: int) -> bool:
        return edge(u, v) in self.edges


@dataclass(frozen=True)
class CircularOrder:
    """A cyclic arrangement of vertex labels (the spine order).

    The sequence is normally a permutation of 1..n; that is checked by
    the verifier, not here, so that broken certificates stay loadable.
    """

    seq: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "seq", tuple(self.seq))

    def __len__(self) -> int:
        return len(self.seq)

    def __iter__(self):
        return iter(self.seq)

    @cached_property
    def _pos(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.seq)}

    def position(self, v: int) -> int:
        try:
            return self._pos[v]
        except KeyError:
            raise ValueError(f"vertex {v} is not in the circular order") from None

    def is_permutation_of(self, n: int) -> bool:
        return len(self.seq) == n and set(self.seq) == set(range(1, n + 1))


def identity_order(n: int) -> CircularOrder:
    """The canonical spine order 1, 2, ..., n."""
    return CircularOrder(tuple(range(1, n + 1)))


class PageKind(str, Enum):
    DISK = "disk"
    CROSSCAP = "crosscap"


@dataclass(frozen=True)
class Page:
    """One page of a layout: a kind plus the edges drawn on it."""

    kind: PageKind
    edges: tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, "kind", PageKind(self.kind))
        es = []
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"loop edge at vertex {u}")
            es.append((u, v) if u < v else (v, u))
        object.__setattr__(self, "edges", tuple(es))

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    def __len__(self) -> int:
        return len(self.edges)


def disk_page(edges) -> Page:
    return Page(PageKind.DISK, tuple(edges))


def crosscap_page(edges) -> Page:
    return Page(PageKind.CROSSCAP, tuple(edges))


@dataclass(frozen=True)
class BookLayout:
    """A graph, a spine order, and a sequence of pages.

    Constructors in this package always produce layouts whose pages
    partition the graph's edges, but the type itself does not enforce
    that; run the verifier to decide validity.
    """

    graph: SimpleGraph
    order: CircularOrder
    pages: tuple[Page, ...]

    def __post_init__(self):
        object.__setattr__(self, "pages", tuple(self.pages))

    @property
    def n(self) -> int:
        return self.graph.n

    def page_sizes(self) -> tuple[int, ...]:
        return tuple(len(p) for p in self.pages)


def arc_contains(order: CircularOrder, a: int, b: int, x: int) -> bool:
    """True iff x lies strictly inside the arc traversed from a to b.

    The arc runs in the order's cyclic direction; a and b themselves are
    excluded.
    """
    if a == b:
        raise ValueError("arc endpoints must differ")
    n = len(order)
    pa = order.position(a)
    pb = order.position(b)
    px = order.position(x)
    return 0 < (px - pa) % n < (pb - pa) % n


def interleaves(order: CircularOrder, e: Edge, f: Edge) -> bool:
    """True iff chords e and f cross when drawn inside the spine circle.

    Chords sharing an endpoint never cross: they can always be drawn
    disjointly except at the common vertex.  For vertex-disjoint chords
    this is the classic alternation test: exactly one endpoint of f lies
    strictly inside the arc between e's endpoints.
    """
    u1, v1 = e
    u2, v2 = f
    if u1 == u2 or u1 == v2 or v1 == u2 or v1 == v2:
        return False
    return arc_contains(order, u1, v1, u2) != arc_contains(order, u1, v1, v2)
