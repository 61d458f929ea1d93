import itertools
import random

import pytest

from starbook import (
    BookLayout,
    CircularOrder,
    Page,
    Profile,
    complete_graph,
    crosscap_page,
    crosscap_page_valid,
    disk_page,
    disk_page_valid,
    identity_order,
    is_star_forest,
    relaxed_complete,
    strict_literal,
    verify_layout,
)
from starbook.verify import (
    CROSSCAP_UNROUTABLE,
    CROSSING_PAIR,
    DUPLICATE_EDGE,
    FOREIGN_EDGE,
    MISSING_EDGE,
    NOT_STAR_FOREST,
    ORDER_NOT_PERMUTATION,
    TOO_MANY_CROSSCAPS,
)
from conftest import all_k5_subsets, brute_components, brute_noncrossing, brute_star_forest


# --- is_star_forest ---------------------------------------------------------

def test_star_forest_examples():
    assert is_star_forest([(1, 2), (1, 3), (1, 4)]) == (True, None, 1)
    assert is_star_forest([(1, 2), (2, 3), (3, 4)]) == (False, (2, 3), 1)
    assert is_star_forest([(1, 2), (1, 3), (4, 5), (4, 6)]) == (True, None, 2)
    assert is_star_forest([]) == (True, None, 0)


def test_star_forest_matches_brute_force_on_k5_subsets():
    for _mask, edges in all_k5_subsets():
        ok, witness, comps = is_star_forest(edges)
        assert ok == brute_star_forest(edges)
        assert comps == brute_components(edges)
        if not ok:
            deg = {}
            for u, v in edges:
                deg[u] = deg.get(u, 0) + 1
                deg[v] = deg.get(v, 0) + 1
            assert deg[witness[0]] >= 2 and deg[witness[1]] >= 2


# --- disk pages -------------------------------------------------------------

def test_disk_page_examples():
    o = identity_order(6)
    ok, _ = disk_page_valid(o, disk_page([(1, 2), (1, 3), (4, 5), (4, 6)]))
    assert ok
    ok, pair = disk_page_valid(o, disk_page([(1, 4), (2, 5)]))
    assert not ok and set(pair) == {(1, 4), (2, 5)}
    ok, _ = disk_page_valid(o, disk_page([]))
    assert ok
    with pytest.raises(ValueError):
        disk_page_valid(o, crosscap_page([(1, 2)]))


@pytest.mark.parametrize("n", [5, 6, 7])
def test_disk_sweep_agrees_with_pairwise_oracle(n):
    # Random chord families, sweep vs exhaustive pair check.
    o = identity_order(n)
    chords = list(itertools.combinations(range(1, n + 1), 2))
    rng = random.Random(11)
    for _ in range(400):
        sample = rng.sample(chords, rng.randint(0, min(7, len(chords))))
        ok, pair = disk_page_valid(o, disk_page(sample))
        want_ok, _ = brute_noncrossing(o, sample)
        assert ok == want_ok
        if not ok:
            from starbook import interleaves
            assert interleaves(o, *pair)
            assert pair[0] in sample and pair[1] in sample


def test_disk_sweep_exhaustive_small():
    o = identity_order(5)
    chords = list(itertools.combinations(range(1, 6), 2))
    for k in range(len(chords) + 1):
        for family in itertools.combinations(chords, k) if k <= 3 else ():
            ok, _ = disk_page_valid(o, disk_page(family))
            assert ok == brute_noncrossing(o, family)[0]


# --- cross-cap pages --------------------------------------------------------

def test_crosscap_examples():
    o = identity_order(6)
    ok, split = crosscap_page_valid(o, crosscap_page([(1, 4), (2, 5), (3, 6)]))
    assert ok and split.through == frozenset({(1, 4), (2, 5), (3, 6)}) and not split.planar

    ok, split = crosscap_page_valid(o, crosscap_page([(1, 3), (2, 4), (5, 6)]))
    assert ok
    assert split.through == frozenset({(1, 3), (2, 4)})
    assert split.planar == frozenset({(5, 6)})

    o8 = identity_order(8)
    ok, split = crosscap_page_valid(o8, crosscap_page([(1, 3), (2, 4), (5, 7), (6, 8)]))
    assert not ok and split is None

    ok, split = crosscap_page_valid(o, crosscap_page([(1, 2), (2, 3), (1, 3)]))
    assert ok  # shared endpoints never force the cap

    with pytest.raises(ValueError):
        crosscap_page_valid(o, disk_page([(1, 2)]))
    with pytest.raises(ValueError):
        crosscap_page_valid(o, crosscap_page([(1, 9)]))  # vertex off the spine


def test_crosscap_tie_blocks_at_shared_vertex():
    # Two chords share vertex 1 and both cross a third chord: the two
    # occurrences at vertex 1 form a tie block and the family routes as
    # (1,1,2 | 4,5,6).
    o = identity_order(6)
    ok, split = crosscap_page_valid(o, crosscap_page([(1, 4), (1, 5), (2, 6)]))
    assert ok
    assert split.through == frozenset({(1, 4), (1, 5), (2, 6)})


def test_crosscap_tie_block_star_pair_routes():
    # 26 and 36 share vertex 6 and both cross 15: occurrence sequence
    # (1,2,3 | 5,6,6) realizes exactly {15, 26, 36}.
    o = identity_order(6)
    ok, split = crosscap_page_valid(o, crosscap_page([(1, 5), (2, 6), (3, 6)]))
    assert ok and split.through == frozenset({(1, 5), (2, 6), (3, 6)})


def test_crosscap_fast_reject_disjoint_noncrossing_through_pair():
    # 13 and 46 are vertex-disjoint and non-crossing, yet both are forced
    # through (each crosses 25): no common routing can exist.
    o = identity_order(6)
    ok, split = crosscap_page_valid(o, crosscap_page([(1, 3), (2, 5), (4, 6)]))
    assert not ok and split is None


@pytest.mark.parametrize("r", range(2, 65))
def test_crosscap_accepts_antipodal_family(r):
    o = identity_order(2 * r)
    page = crosscap_page([(i, i + r) for i in range(1, r + 1)])
    ok, split = crosscap_page_valid(o, page)
    assert ok and len(split.through) == r


def test_disk_valid_implies_crosscap_valid_exhaustive():
    # Every subset of E(K_5): if it is disk-valid it must be cap-valid.
    o = identity_order(5)
    for _mask, edges in all_k5_subsets():
        ok_disk, _ = disk_page_valid(o, disk_page(edges))
        if ok_disk:
            ok_cap, split = crosscap_page_valid(o, crosscap_page(edges))
            assert ok_cap and not split.through


def test_disk_valid_implies_crosscap_valid_random_n8():
    o = identity_order(8)
    chords = list(itertools.combinations(range(1, 9), 2))
    rng = random.Random(23)
    for _ in range(600):
        sample = rng.sample(chords, rng.randint(0, 8))
        ok_disk, _ = disk_page_valid(o, disk_page(sample))
        ok_cap, _ = crosscap_page_valid(o, crosscap_page(sample))
        if ok_disk:
            assert ok_cap


def test_crosscap_monotone_under_edge_removal():
    # Removing an edge from a valid cross-cap page keeps it valid.
    rng = random.Random(5)
    o = identity_order(8)
    chords = list(itertools.combinations(range(1, 9), 2))
    tried = 0
    for _ in range(1200):
        sample = rng.sample(chords, rng.randint(1, 6))
        ok, _ = crosscap_page_valid(o, crosscap_page(sample))
        if not ok:
            continue
        tried += 1
        for drop in sample:
            rest = [e for e in sample if e != drop]
            ok_rest, _ = crosscap_page_valid(o, crosscap_page(rest))
            assert ok_rest, (sample, drop)
    assert tried > 100


# --- verify_layout ----------------------------------------------------------

def test_verify_relaxed_construction_passes():
    assert verify_layout(relaxed_complete(3), Profile.RELAXED).passed


def test_verify_strict_literal_r3_exact_violations():
    rep = verify_layout(strict_literal(3), Profile.STRICT)
    assert not rep.passed
    got = sorted((v.kind, v.edge) for v in rep.violations)
    assert got == [
        (DUPLICATE_EDGE, (1, 2)),
        (DUPLICATE_EDGE, (5, 6)),
        (MISSING_EDGE, (1, 5)),
        (MISSING_EDGE, (2, 6)),
    ]


def test_verify_tampered_relaxed_layout():
    # Move one antipodal edge onto disk page 1: page 1 stops being a
    # star forest (and would cross if the edge landed between stars).
    lay = relaxed_complete(3)
    pages = list(lay.pages)
    moved = (1, 4)
    pages[0] = disk_page(tuple(pages[0].edges) + (moved,))
    pages[3] = crosscap_page(tuple(e for e in pages[3].edges if e != moved))
    bad = BookLayout(lay.graph, lay.order, tuple(pages))
    rep = verify_layout(bad, Profile.RELAXED)
    assert not rep.passed
    kinds = rep.kinds()
    assert kinds[MISSING_EDGE] == 0  # edge still present, just misplaced
    assert kinds[CROSSING_PAIR] >= 1 or kinds[NOT_STAR_FOREST] >= 1
    bad_pages = {v.page for v in rep.violations if v.kind in (CROSSING_PAIR, NOT_STAR_FOREST)}
    assert bad_pages == {0}


def test_verify_edge_dropped_from_cap_page():
    lay = relaxed_complete(3)
    pages = list(lay.pages)
    pages[3] = crosscap_page(tuple(e for e in pages[3].edges if e != (1, 4)))
    rep = verify_layout(BookLayout(lay.graph, lay.order, tuple(pages)), Profile.RELAXED)
    missing = [v for v in rep.violations if v.kind == MISSING_EDGE]
    assert [v.edge for v in missing] == [(1, 4)]


def test_verify_detects_missing_and_duplicate_and_foreign():
    g = complete_graph(4)
    o = identity_order(4)
    pages = (
        disk_page([(1, 2), (1, 3), (1, 4), (1, 2)]),   # duplicate within a page
        disk_page([(2, 3), (2, 4)]),
    )
    rep = verify_layout(BookLayout(g, o, pages), Profile.STRICT)
    kinds = rep.kinds()
    assert kinds[DUPLICATE_EDGE] == 1
    assert kinds[MISSING_EDGE] == 1  # (3, 4)
    dup = next(v for v in rep.violations if v.kind == DUPLICATE_EDGE)
    assert dup.edge == (1, 2) and dup.pages == (0, 0)

    from starbook import octahedron
    o3 = octahedron(3)
    rep = verify_layout(
        BookLayout(o3, identity_order(6), (disk_page([(1, 4)]),)), Profile.STAR_FORESTS_ONLY
    )
    foreign = [v for v in rep.violations if v.kind == FOREIGN_EDGE]
    assert len(foreign) == 1 and foreign[0].edge == (1, 4)


def test_verify_order_and_kind_constraints():
    g = complete_graph(3)
    pages = (disk_page([(1, 2), (1, 3), (2, 3)]),)
    bad_order = BookLayout(g, CircularOrder((1, 2, 2)), pages)
    rep = verify_layout(bad_order, Profile.STRICT)
    assert ORDER_NOT_PERMUTATION in rep.kinds()
    # order problems are ignored under the pure star-forest profile
    rep = verify_layout(bad_order, Profile.STAR_FORESTS_ONLY)
    assert ORDER_NOT_PERMUTATION not in rep.kinds()

    capped = BookLayout(
        g, identity_order(3),
        (crosscap_page([(1, 2), (1, 3)]), disk_page([(2, 3)])),
    )
    assert TOO_MANY_CROSSCAPS in verify_layout(capped, Profile.STRICT).kinds()
    assert verify_layout(capped, Profile.RELAXED).passed

    two_caps = BookLayout(
        complete_graph(4),
        identity_order(4),
        (crosscap_page([(1, 3), (2, 4)]), crosscap_page([(1, 2), (1, 4), (3, 4)]),
         disk_page([(2, 3)])),
    )
    rep = verify_layout(two_caps, Profile.RELAXED)
    v = next(v for v in rep.violations if v.kind == TOO_MANY_CROSSCAPS)
    assert v.count == 2 and v.pages == (0, 1)


def test_verify_unroutable_cap_page():
    g = complete_graph(8)
    pages = [disk_page(sorted(g.edges - {(1, 3), (2, 4), (5, 7), (6, 8)}))]
    pages.append(crosscap_page([(1, 3), (2, 4), (5, 7), (6, 8)]))
    rep = verify_layout(BookLayout(g, identity_order(8), tuple(pages)), Profile.RELAXED)
    assert CROSSCAP_UNROUTABLE in rep.kinds()


def test_partition_soundness_random_page_shuffles():
    # Multiset union of pages equals the edge set iff no partition violations.
    rng = random.Random(3)
    base = relaxed_complete(4)
    for _ in range(60):
        pages = [list(p.edges) for p in base.pages]
        op = rng.choice(["drop", "dup", "move"])
        pi = rng.randrange(len(pages))
        if not pages[pi]:
            continue
        e = rng.choice(pages[pi])
        if op == "drop":
            pages[pi].remove(e)
        elif op == "dup":
            pages[rng.randrange(len(pages))].append(e)
        else:
            pages[pi].remove(e)
            pages[rng.randrange(len(pages))].append(e)
        rebuilt = tuple(
            Page(p.kind, tuple(es)) for p, es in zip(base.pages, pages)
        )
        lay = BookLayout(base.graph, base.order, rebuilt)
        rep = verify_layout(lay, Profile.STAR_FORESTS_ONLY)
        union = sorted(e for p in rebuilt for e in p.edges)
        exact = union == sorted(base.graph.edges)
        partition_violations = [
            v for v in rep.violations
            if v.kind in (DUPLICATE_EDGE, MISSING_EDGE, FOREIGN_EDGE)
        ]
        assert exact == (not partition_violations)


def test_report_is_deterministic_and_sorted():
    rep1 = verify_layout(strict_literal(4), Profile.STRICT)
    rep2 = verify_layout(strict_literal(4), Profile.STRICT)
    assert rep1 == rep2
    keys = [v.sort_key() for v in rep1.violations]
    assert keys == sorted(keys)
