"""Tests for ear decompositions, nest analysis, and interchange."""

from __future__ import annotations

import pytest

from bcx.ears import (
    Ear,
    EarDecomposition,
    ear_decomposition,
    interchange_normalize,
    nest_analysis,
)
from bcx.hpoly import delta1
from bcx.multigraph import Multigraph

from graphs import (
    banana,
    bowtie,
    cycle_graph,
    k4,
    k23,
    necklace_pair,
    path_graph,
    showcase_graph,
    single_loop,
    theta,
)

SEEDS = (0, 1, 2, 3, 4)


def blocks_catalog():
    return [
        cycle_graph(2),
        cycle_graph(3),
        cycle_graph(6),
        banana(3),
        banana(4),
        k23(),
        theta(1, 2, 2),
        theta(2, 3, 4),
        k4(),
        showcase_graph(),
        necklace_pair()[0],
        necklace_pair()[1],
    ]


# ----------------------------------------------------------------------
# construction and validation


def test_cycle_is_single_ear():
    for n in (2, 3, 5, 8):
        dec = ear_decomposition(cycle_graph(n), seed=0)
        assert len(dec.ears) == 1
        assert dec.ears[0].is_closed
        assert dec.ears[0].edge_set() == frozenset(range(1, n + 1))
        rep = nest_analysis(cycle_graph(n), dec)
        assert rep.intervals == ()
        assert (rep.p1, rep.p2) == (0, 0)
        assert rep.nested


def test_ear_count_equals_nullity():
    for G in blocks_catalog():
        for seed in SEEDS:
            dec = ear_decomposition(G, seed=seed)
            assert len(dec.ears) == G.nullity()


def test_non_blocks_rejected():
    for G in (path_graph(3), bowtie(), single_loop(), Multigraph.of([(1, 0, 1)])):
        with pytest.raises(ValueError):
            ear_decomposition(G)


def test_validator_rejects_bad_decompositions():
    G = theta(1, 2, 2)
    # edges: 1 (0,1); 2 (0,2), 3 (1,2); 4 (0,3), 5 (1,3)
    square = Ear((0, 2, 1, 3, 0), (2, 3, 5, 4))
    chord = Ear((0, 1), (1,))
    EarDecomposition(G, (square, chord))  # sanity: this one is fine

    with pytest.raises(ValueError, match="partition"):
        EarDecomposition(G, (square,))
    with pytest.raises(ValueError, match="first ear"):
        EarDecomposition(G, (chord, square))
    with pytest.raises(ValueError, match="does not join"):
        EarDecomposition(G, (Ear((0, 2, 1, 3, 0), (2, 3, 4, 5)), chord))
    # an internal vertex of a later ear must be new
    H = theta(2, 2, 2)
    tri = Ear((0, 2, 1, 3, 0), (1, 2, 4, 3))
    bad = Ear((0, 2, 1), (1, 2))
    with pytest.raises(ValueError, match="not new"):
        EarDecomposition(H, (tri, bad))


def test_decompositions_are_valid_across_seeds():
    # the constructor re-validates everything, so building is the assertion
    for G in blocks_catalog():
        for seed in SEEDS:
            ear_decomposition(G, seed=seed)


# ----------------------------------------------------------------------
# nest analysis


def test_banana_intervals():
    G = banana(3)
    dec = ear_decomposition(G, seed=0)
    rep = nest_analysis(G, dec)
    assert rep.nested
    assert len(rep.intervals) == 1
    assert (rep.p1, rep.p2) == (1, 0)


def test_k23_intervals():
    G = k23()
    for seed in SEEDS:
        dec = ear_decomposition(G, seed=seed)
        rep = nest_analysis(G, dec)
        assert rep.nested
        assert len(rep.intervals) == 1
        iv = rep.intervals[0]
        assert iv.host == 0
        assert iv.min_len == 2
        assert (rep.p1, rep.p2) == (0, 1)


def test_showcase_fixed_decomposition():
    G = showcase_graph()
    dec = EarDecomposition(
        G,
        (
            Ear((0, 1, 2, 4, 3, 0), (2, 3, 4, 5, 1)),
            Ear((1, 2), (6,)),
            Ear((2, 3), (7,)),
            Ear((2, 5, 7, 3), (8, 9, 10)),
            Ear((5, 6, 3), (11, 12)),
        ),
    )
    rep = nest_analysis(G, dec)
    assert rep.nested
    got = {(iv.host, iv.edges): (iv.ears, iv.min_len) for iv in rep.intervals}
    assert got == {
        (0, frozenset({3})): ((1,), 1),
        (0, frozenset({4, 5})): ((2, 3), 1),
        (3, frozenset({9, 10})): ((4,), 2),
    }
    assert (rep.p1, rep.p2) == (2, 1)


def test_p1_p2_are_seed_invariant():
    for G in blocks_catalog():
        seen = set()
        for seed in SEEDS:
            dec = ear_decomposition(G, seed=seed)
            rep = nest_analysis(G, dec)
            if rep.nested:
                seen.add((rep.p1, rep.p2))
        if seen:
            assert len(seen) == 1


def test_showcase_counts_across_seeds():
    G = showcase_graph()
    for seed in SEEDS:
        dec = ear_decomposition(G, seed=seed)
        assert len(dec.ears) == 5
        rep = nest_analysis(G, dec)
        assert rep.nested
        assert (rep.p1, rep.p2) == (2, 1)


def test_k4_never_nested():
    G = k4()
    for seed in SEEDS:
        rep = nest_analysis(G, ear_decomposition(G, seed=seed))
        assert not rep.nested
        assert rep.offending_ear is not None


def test_necklace_pair_counts():
    g1, g2 = necklace_pair()
    rep1 = nest_analysis(g1, ear_decomposition(g1, seed=0))
    rep2 = nest_analysis(g2, ear_decomposition(g2, seed=0))
    assert rep1.nested and rep2.nested
    assert rep1.p2 == delta1(g1)
    assert rep2.p2 == delta1(g2)
    assert rep1.p2 == rep2.p2


def test_report_json_shape():
    G = showcase_graph()
    rep = nest_analysis(G, ear_decomposition(G, seed=0))
    obj = rep.to_json_obj()
    assert sorted(obj) == [
        "ears",
        "intervals",
        "nested",
        "offending_ear",
        "p1",
        "p2",
    ]
    assert sorted(e for ear in obj["ears"] for e in ear) == sorted(G.edge_ids())
    for iv in obj["intervals"]:
        assert set(iv) == {"host", "edges", "endpoints", "ears", "min_len"}


# ----------------------------------------------------------------------
# interchange


def test_interchange_moves_singleton_into_place():
    # two triangles sharing an edge, decomposed as square + chord
    G = theta(1, 2, 2)
    dec = EarDecomposition(
        G, (Ear((0, 2, 1, 3, 0), (2, 3, 5, 4)), Ear((0, 1), (1,)))
    )
    before = nest_analysis(G, dec)
    assert [sorted(iv.edges) for iv in before.intervals] == [[2, 3]]
    norm = interchange_normalize(G, dec)
    after = nest_analysis(G, norm)
    assert (after.p1, after.p2) == (before.p1, before.p2) == (1, 0)
    assert [sorted(iv.edges) for iv in after.intervals] == [[1]]
    assert norm.ears[1].edge_set() == frozenset({2, 3})


def test_interchange_noop_when_already_normalized():
    for G in (cycle_graph(5), k23(), banana(3)):
        dec = ear_decomposition(G, seed=0)
        norm = interchange_normalize(G, dec)
        rep = nest_analysis(G, norm)
        for iv in rep.intervals:
            if iv.min_len == 1:
                assert len(iv.edges) == 1


def test_interchange_showcase():
    G = showcase_graph()
    dec = EarDecomposition(
        G,
        (
            Ear((0, 1, 2, 4, 3, 0), (2, 3, 4, 5, 1)),
            Ear((1, 2), (6,)),
            Ear((2, 3), (7,)),
            Ear((2, 5, 7, 3), (8, 9, 10)),
            Ear((5, 6, 3), (11, 12)),
        ),
    )
    norm = interchange_normalize(G, dec)
    rep = nest_analysis(G, norm)
    assert (rep.p1, rep.p2) == (2, 1)
    for iv in rep.intervals:
        if iv.min_len == 1:
            assert len(iv.edges) == 1


def test_interchange_reorders_past_inner_ear():
    # square with a doubled side and a diagonal; the diagonal's interval
    # strictly contains the doubled side's, so the swapped-in path must be
    # moved ahead of the short ear
    G = Multigraph.of(
        [(1, 0, 1), (2, 1, 2), (3, 2, 3), (4, 0, 3), (5, 0, 1), (6, 0, 2)]
    )
    dec = EarDecomposition(
        G,
        (
            Ear((0, 1, 2, 3, 0), (1, 2, 3, 4)),
            Ear((0, 1), (5,)),
            Ear((0, 2), (6,)),
        ),
    )
    before = nest_analysis(G, dec)
    assert {frozenset(iv.edges) for iv in before.intervals} == {
        frozenset({1}),
        frozenset({1, 2}),
    }
    norm = interchange_normalize(G, dec)
    after = nest_analysis(G, norm)
    assert (after.p1, after.p2) == (before.p1, before.p2) == (2, 0)
    for iv in after.intervals:
        assert len(iv.edges) == 1
    assert norm.ears[1].edge_set() == frozenset({1, 2})


def test_interchange_requires_nested():
    G = k4()
    dec = ear_decomposition(G, seed=0)
    with pytest.raises(ValueError, match="nested"):
        interchange_normalize(G, dec)


def test_interchange_across_seeds_preserves_counts():
    for G in blocks_catalog():
        for seed in SEEDS[:3]:
            dec = ear_decomposition(G, seed=seed)
            rep = nest_analysis(G, dec)
            if not rep.nested:
                continue
            norm = interchange_normalize(G, dec)
            rep2 = nest_analysis(G, norm)
            assert (rep2.p1, rep2.p2) == (rep.p1, rep.p2)
            for iv in rep2.intervals:
                if iv.min_len == 1:
                    assert len(iv.edges) == 1
