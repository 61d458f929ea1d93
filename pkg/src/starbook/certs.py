"""Certificate serialization: canonical JSON for layouts, plus graph inputs.

Format tag "starbook-cert/1".  Edges are stored with u < v and sorted
lexicographically within each page; disk pages precede the cross-cap
page; serialization is byte-identical for equal layouts.  The meta map
records the graph family and parameters so a verifier can rebuild the
graph being decomposed; without it the complete graph on n vertices is
assumed.

A plain-text edge-list format is also accepted for graph input: the
vertex count on the first line, then one "u v" pair per line,
whitespace-tolerant.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

from .construct import complete_graph, cycle_power, minus_edge, octahedron
from .model import (
    BookLayout,
    CircularOrder,
    Page,
    PageKind,
    SimpleGraph,
    edge,
)

FORMAT_TAG = "starbook-cert/1"

FAMILIES = ("K", "O", "Cpow", "K-e")


class CertificateError(ValueError):
    """Raised when a certificate file is structurally malformed."""


def layout_to_dict(layout: BookLayout, meta: dict | None = None) -> dict:
    disks = [p for p in layout.pages if p.kind is PageKind.DISK]
    caps = [p for p in layout.pages if p.kind is PageKind.CROSSCAP]
    return {
        "format": FORMAT_TAG,
        "n": layout.graph.n,
        "order": list(layout.order.seq),
        "pages": [
            {"kind": p.kind.value, "edges": [list(e) for e in sorted(p.edges)]}
            for p in disks + caps
        ],
        "meta": dict(meta or {}),
    }


def serialize_layout(layout: BookLayout, meta: dict | None = None) -> str:
    """Canonical text form: equal layouts give identical bytes."""
    return json.dumps(layout_to_dict(layout, meta), indent=1, sort_keys=True) + "\n"


def certificate_digest(layout: BookLayout, meta: dict | None = None) -> str:
    return hashlib.sha256(serialize_layout(layout, meta).encode()).hexdigest()


def graph_from_meta(n: int, meta: dict) -> SimpleGraph:
    """Rebuild the decomposed graph from certificate metadata.

    Unknown families are rejected; a missing family defaults to K_n.
    """
    family = meta.get("family")
    if family is None or family == "K":
        return complete_graph(n)
    if family == "O":
        r = int(meta.get("r", n // 2))
        if 2 * r != n:
            raise CertificateError(f"octahedron meta r={r} inconsistent with n={n}")
        return octahedron(r)
    if family == "Cpow":
        if "k" not in meta:
            raise CertificateError("cycle-power certificate lacks meta.k")
        return cycle_power(n, int(meta["k"]))
    if family == "K-e":
        e = meta.get("e", [1, 2])
        if not (isinstance(e, (list, tuple)) and len(e) == 2):
            raise CertificateError(f"bad removed-edge meta: {e!r}")
        return minus_edge(complete_graph(n), edge(int(e[0]), int(e[1])))
    raise CertificateError(f"unknown graph family {family!r}")


def parse_certificate(text: str) -> tuple[BookLayout, dict]:
    """Parse a certificate into a layout plus its meta map.

    Structural problems (bad JSON, wrong tag, malformed edges) raise
    CertificateError; semantic problems (orders that are not
    permutations, edges outside the graph, bad partitions) parse fine
    and are left for the verifier to report.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertificateError(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise CertificateError("certificate must be a JSON object")
    if doc.get("format") != FORMAT_TAG:
        raise CertificateError(f"unsupported format tag {doc.get('format')!r}")
    n = doc.get("n")
    if not isinstance(n, int) or n < 0:
        raise CertificateError(f"bad vertex count {n!r}")
    order = doc.get("order")
    if not isinstance(order, list) or not all(isinstance(v, int) for v in order):
        raise CertificateError("order must be a list of integers")
    raw_pages = doc.get("pages")
    if not isinstance(raw_pages, list):
        raise CertificateError("pages must be a list")
    pages = []
    for i, rp in enumerate(raw_pages):
        if not isinstance(rp, dict):
            raise CertificateError(f"page {i + 1} must be an object")
        try:
            kind = PageKind(rp.get("kind"))
        except ValueError:
            raise CertificateError(f"page {i + 1} has unknown kind {rp.get('kind')!r}") from None
        raw_edges = rp.get("edges")
        if not isinstance(raw_edges, list):
            raise CertificateError(f"page {i + 1} edges must be a list")
        es = []
        for re_ in raw_edges:
            if (not isinstance(re_, list) or len(re_) != 2
                    or not all(isinstance(x, int) for x in re_)):
                raise CertificateError(f"page {i + 1} has a malformed edge {re_!r}")
            u, v = re_
            if not 1 <= u < v:
                raise CertificateError(f"page {i + 1} edge [{u}, {v}] must satisfy 1 <= u < v")
            es.append((u, v))
        pages.append(Page(kind, tuple(es)))
    meta = doc.get("meta", {})
    if not isinstance(meta, dict):
        raise CertificateError("meta must be an object")
    try:
        graph = graph_from_meta(n, meta)
    except ValueError as exc:
        raise CertificateError(str(exc)) from None
    return BookLayout(graph, CircularOrder(tuple(order)), tuple(pages)), meta


def load_certificate(path) -> tuple[BookLayout, dict]:
    return parse_certificate(Path(path).read_text())


def save_certificate(path, layout: BookLayout, meta: dict | None = None) -> None:
    Path(path).write_text(serialize_layout(layout, meta))


def parse_edge_list(text: str) -> SimpleGraph:
    """Graph from plain text: n on the first line, then one 'u v' per line."""
    tokens = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if stripped:
            tokens.append((lineno, stripped.split()))
    if not tokens:
        raise ValueError("empty edge-list input")
    lineno, head = tokens[0]
    if len(head) != 1:
        raise ValueError(f"line {lineno}: expected the vertex count alone")
    try:
        n = int(head[0])
    except ValueError:
        raise ValueError(f"line {lineno}: bad vertex count {head[0]!r}") from None
    edges = set()
    for lineno, parts in tokens[1:]:
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'u v'")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ValueError(f"line {lineno}: bad vertex label") from None
        edges.add(edge(u, v))
    try:
        return SimpleGraph(n, frozenset(edges))
    except ValueError as exc:
        raise ValueError(str(exc)) from None
