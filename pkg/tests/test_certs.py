import json

import pytest

from starbook import (
    complete_graph,
    octahedron,
    octahedron_pages,
    odd_extension,
    relaxed_complete,
    star_pages,
    strict_complete,
    strict_literal,
)
from starbook.certs import (
    CertificateError,
    certificate_digest,
    parse_certificate,
    parse_edge_list,
    serialize_layout,
)


LAYOUT_MAKERS = [
    lambda: star_pages(5),
    lambda: star_pages(9),
    lambda: relaxed_complete(2),
    lambda: relaxed_complete(5),
    lambda: odd_extension(relaxed_complete(3)),
    lambda: strict_literal(3),
    lambda: strict_literal(6),
    lambda: octahedron_pages(4),
    lambda: strict_complete(3),
]


@pytest.mark.parametrize("make", LAYOUT_MAKERS)
def test_round_trip_identity(make):
    layout = make()
    meta = {"family": "K", "n": layout.graph.n}
    if layout.graph.edges != complete_graph(layout.graph.n).edges:
        meta = {"family": "O", "r": layout.graph.n // 2, "n": layout.graph.n}
    text = serialize_layout(layout, meta)
    parsed, parsed_meta = parse_certificate(text)
    assert parsed == layout
    assert parsed_meta == meta
    assert serialize_layout(parsed, parsed_meta) == text  # byte-stable


def test_serialization_is_canonical():
    a = serialize_layout(relaxed_complete(3), {"family": "K", "n": 6})
    b = serialize_layout(relaxed_complete(3), {"family": "K", "n": 6})
    assert a == b
    assert certificate_digest(relaxed_complete(3)) == certificate_digest(relaxed_complete(3))
    assert certificate_digest(relaxed_complete(3)) != certificate_digest(relaxed_complete(4))


def test_cap_page_serialized_last_and_edges_sorted():
    doc = json.loads(serialize_layout(odd_extension(relaxed_complete(3))))
    kinds = [p["kind"] for p in doc["pages"]]
    assert kinds == ["disk"] * 4 + ["crosscap"]
    for p in doc["pages"]:
        assert p["edges"] == sorted(p["edges"])
        for u, v in p["edges"]:
            assert u < v


def test_parse_rejects_malformed():
    good = serialize_layout(star_pages(4), {"family": "K", "n": 4})
    doc = json.loads(good)

    with pytest.raises(CertificateError):
        parse_certificate("not json {")
    with pytest.raises(CertificateError):
        parse_certificate(json.dumps({**doc, "format": "other/9"}))
    with pytest.raises(CertificateError):
        parse_certificate(json.dumps({**doc, "n": "six"}))
    with pytest.raises(CertificateError):
        parse_certificate(json.dumps({**doc, "order": [1, "x"]}))
    bad_pages = {**doc, "pages": [{"kind": "sphere", "edges": []}]}
    with pytest.raises(CertificateError):
        parse_certificate(json.dumps(bad_pages))
    bad_edge = {**doc, "pages": [{"kind": "disk", "edges": [[2, 1]]}]}
    with pytest.raises(CertificateError):
        parse_certificate(json.dumps(bad_edge))
    loop_edge = {**doc, "pages": [{"kind": "disk", "edges": [[2, 2]]}]}
    with pytest.raises(CertificateError):
        parse_certificate(json.dumps(loop_edge))
    with pytest.raises(CertificateError):
        parse_certificate(json.dumps({**doc, "meta": {"family": "Q"}}))


def test_parse_keeps_semantic_problems_for_verifier():
    # Bad orders and out-of-graph edges parse fine; verify reports them.
    from starbook import Profile, verify_layout
    from starbook.verify import FOREIGN_EDGE, ORDER_NOT_PERMUTATION

    doc = json.loads(serialize_layout(star_pages(4), {"family": "K", "n": 4}))
    doc["order"] = [1, 2, 2, 4]
    layout, _ = parse_certificate(json.dumps(doc))
    assert ORDER_NOT_PERMUTATION in verify_layout(layout, Profile.STRICT).kinds()

    doc = json.loads(serialize_layout(octahedron_pages(3), {"family": "O", "r": 3, "n": 6}))
    doc["pages"][0]["edges"].append([1, 4])  # the removed antipodal edge
    layout, _ = parse_certificate(json.dumps(doc))
    assert FOREIGN_EDGE in verify_layout(layout, Profile.STRICT).kinds()


def test_graph_from_meta_families():
    lay = relaxed_complete(3)
    text = serialize_layout(lay, {"family": "K-e", "n": 6, "e": [1, 2]})
    parsed, _ = parse_certificate(text)
    assert parsed.graph.m == 14

    text = serialize_layout(lay, {"family": "Cpow", "n": 6, "k": 2})
    parsed, _ = parse_certificate(text)
    assert parsed.graph.edges == octahedron(3).edges

    text = serialize_layout(lay, {})  # no family: complete graph assumed
    parsed, _ = parse_certificate(text)
    assert parsed.graph.edges == complete_graph(6).edges

    with pytest.raises(CertificateError):
        parse_certificate(serialize_layout(lay, {"family": "O", "r": 4}))


def test_edge_list_parsing():
    g = parse_edge_list("4\n1 2\n 3   4 \n\n2 3\n")
    assert g.n == 4 and g.edges == {(1, 2), (2, 3), (3, 4)}
    g = parse_edge_list("3\n# comment\n1 2\n")
    assert g.m == 1
    with pytest.raises(ValueError):
        parse_edge_list("")
    with pytest.raises(ValueError):
        parse_edge_list("4 5\n1 2\n")
    with pytest.raises(ValueError):
        parse_edge_list("4\n1 2 3\n")
    with pytest.raises(ValueError):
        parse_edge_list("2\n1 5\n")
