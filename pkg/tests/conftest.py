"""Shared brute-force oracles kept independent of the library's own logic."""

import math

import pytest

from starbook import SimpleGraph, complete_graph


def brute_star_forest(edges) -> bool:
    """Every connected component has at most one vertex of degree >= 2."""
    es = {tuple(sorted(e)) for e in edges}
    if not es:
        return True
    adj: dict[int, set[int]] = {}
    for u, v in es:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    seen: set[int] = set()
    for start in adj:
        if start in seen:
            continue
        comp, stack = [], [start]
        seen.add(start)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if sum(1 for x in comp if len(adj[x]) >= 2) > 1:
            return False
    return True


def brute_components(edges) -> int:
    es = {tuple(sorted(e)) for e in edges}
    adj: dict[int, set[int]] = {}
    for u, v in es:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    seen: set[int] = set()
    comps = 0
    for start in adj:
        if start in seen:
            continue
        comps += 1
        stack = [start]
        seen.add(start)
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
    return comps


def segments_cross(order, e, f) -> bool:
    """Geometric oracle: straight chords on the unit circle properly intersect.

    Independent of the combinatorial alternation test; chords sharing an
    endpoint count as non-crossing.
    """
    if set(e) & set(f):
        return False
    n = len(order)

    def xy(v):
        t = 2 * math.pi * order.position(v) / n
        return math.cos(t), math.sin(t)

    def orient(p, q, r):
        val = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
        return 0 if abs(val) < 1e-12 else (1 if val > 0 else -1)

    a, b = xy(e[0]), xy(e[1])
    c, d = xy(f[0]), xy(f[1])
    return (orient(a, b, c) != orient(a, b, d)) and (orient(c, d, a) != orient(c, d, b))


def brute_noncrossing(order, edges):
    """Exhaustive pairwise check used as the disk-page oracle."""
    from starbook import interleaves

    es = list(edges)
    for i in range(len(es)):
        for j in range(i + 1, len(es)):
            if interleaves(order, es[i], es[j]):
                return False, (es[i], es[j])
    return True, None


def all_k5_subsets():
    edges = sorted(complete_graph(5).edges)
    m = len(edges)
    for mask in range(1 << m):
        yield mask, [edges[i] for i in range(m) if mask >> i & 1]


def subgraph_of_k5(edges) -> SimpleGraph:
    return SimpleGraph(5, frozenset(edges))


@pytest.fixture
def k5_star_forest_table():
    """Bitmask -> is-star-forest over the 10 edges of K_5 (brute force)."""
    edges = sorted(complete_graph(5).edges)
    m = len(edges)
    table = [False] * (1 << m)
    for mask in range(1 << m):
        table[mask] = brute_star_forest(edges[i] for i in range(m) if mask >> i & 1)
    return edges, table
