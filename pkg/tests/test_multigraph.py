"""Core graph type: operations, connectivity, circuits, serialization."""

from __future__ import annotations

import pytest

from bcx.multigraph import (
    Multigraph,
    all_cycles,
    format_edge_list,
    graph_from_json,
    graph_to_json,
    matroid_components,
    matroid_connected,
    parse_edge_list,
)

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


def brute_components(G):
    """Independent oracle: two edges are equivalent iff a common circuit holds both."""
    parent = {e: e for e in G.edge_ids()}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for cyc in all_cycles(G):
        ids = sorted(cyc)
        for other in ids[1:]:
            parent[find(other)] = find(ids[0])
    classes = {}
    for e in G.edge_ids():
        classes.setdefault(find(e), set()).add(e)
    return sorted((frozenset(c) for c in classes.values()), key=min)


def test_construction_normalizes_endpoints():
    G = Multigraph.of([(1, 5, 2), (2, 3, 3)])
    assert G.endpoints(1) == (2, 5)
    assert G.is_loop(2)
    assert G.vertices == frozenset({2, 3, 5})


def test_duplicate_edge_id_rejected():
    with pytest.raises(ValueError):
        Multigraph.of([(1, 0, 1), (1, 1, 2)])


def test_from_pairs_assigns_ids_in_order():
    G = Multigraph.from_pairs([(0, 1), (1, 2), (2, 0)])
    assert G.edge_ids() == (1, 2, 3)
    assert G.endpoints(2) == (1, 2)


def test_degrees_count_loops_twice():
    G = Multigraph.of([(1, 0, 0), (2, 0, 1)])
    assert G.degree(0) == 3
    assert G.degree(1) == 1


def test_delete_keeps_vertices_restrict_drops_them():
    G = cycle_graph(3)
    H = G.delete_edges([1, 2])
    assert H.vertices == G.vertices
    R = G.restrict([3])
    assert R.vertices == frozenset({0, 2})
    with pytest.raises(KeyError):
        G.delete_edge(99)


def test_contract_merges_into_smaller_vertex():
    G = Multigraph.of([(1, 2, 7), (2, 7, 9)])
    H = G.contract_edge(1)
    assert H.vertices == frozenset({2, 9})
    assert H.endpoints(2) == (2, 9)


def test_contract_turns_parallel_mates_into_loops():
    G = banana(3)
    H = G.contract_edge(1)
    assert H.vertices == frozenset({0})
    assert H.is_loop(2) and H.is_loop(3)


def test_contract_loop_is_deletion():
    G = Multigraph.of([(1, 0, 0), (2, 0, 1)])
    H = G.contract_edge(1)
    assert H.edge_ids() == (2,)
    assert H.vertices == frozenset({0, 1})


def test_simplify_keeps_min_id_representative():
    G = Multigraph.of([(3, 0, 1), (5, 0, 1), (2, 1, 1), (7, 1, 2)])
    S, rep = G.simplify()
    assert S.edge_ids() == (3, 7)
    assert rep == {3: 3, 5: 3, 7: 7}
    S2, rep2 = S.simplify()
    assert S2 == S and rep2 == {3: 3, 7: 7}


def test_rank_nullity_and_nu():
    G = showcase_graph()
    assert (G.vertex_count, G.edge_count) == (8, 12)
    assert G.rank() == 7 and G.nullity() == 5
    assert k23().rank() == 4 and k23().nullity() == 2 and k23().nu() == 2
    g1, g2 = necklace_pair()
    assert g1.nullity() == 3 and g2.nullity() == 3
    assert g1.nu() == 4 and g2.nu() == 3
    # isolated vertex changes neither rank nor nullity
    iso = Multigraph(g1.vertices | {99}, g1.edges)
    assert iso.rank() == g1.rank() and iso.nullity() == g1.nullity()


def test_connected_components_count_isolated_vertices():
    G = Multigraph(frozenset({0, 1, 2, 9}), ((1, 0, 1), (2, 1, 2)))
    comps = G.connected_components()
    assert sorted(len(c) for c in comps) == [1, 3]
    assert not G.is_connected()


def test_matroid_components_on_known_graphs():
    assert matroid_components(cycle_graph(5)) == [frozenset({1, 2, 3, 4, 5})]
    assert matroid_components(bowtie()) == [
        frozenset({1, 2, 3}),
        frozenset({4, 5, 6}),
    ]
    assert matroid_components(path_graph(3)) == [
        frozenset({1}),
        frozenset({2}),
        frozenset({3}),
    ]
    # loops are their own components
    G = Multigraph.of([(1, 0, 1), (2, 1, 2), (3, 0, 2), (4, 1, 1)])
    assert matroid_components(G) == [frozenset({1, 2, 3}), frozenset({4})]
    assert matroid_connected(cycle_graph(2))
    assert not matroid_connected(bowtie())
    with pytest.raises(ValueError):
        matroid_connected(Multigraph(frozenset({0}), ()))


def test_matroid_components_match_circuit_sharing_oracle():
    samples = [
        cycle_graph(2),
        cycle_graph(6),
        banana(4),
        k4(),
        k23(),
        bowtie(),
        path_graph(4),
        showcase_graph(),
        theta(1, 2, 3),
        single_loop(),
        # triangle with a pendant edge and a loop
        Multigraph.of([(1, 0, 1), (2, 1, 2), (3, 0, 2), (4, 2, 3), (5, 3, 3)]),
        # two triangles joined by a bridge
        Multigraph.of(
            [
                (1, 0, 1),
                (2, 1, 2),
                (3, 0, 2),
                (4, 2, 3),
                (5, 3, 4),
                (6, 4, 5),
                (7, 3, 5),
            ]
        ),
    ]
    for G in samples:
        assert matroid_components(G) == brute_components(G), G


def test_all_cycles_counts():
    assert len(all_cycles(cycle_graph(7))) == 1
    assert len(all_cycles(banana(3))) == 3
    assert len(all_cycles(k23())) == 3
    assert len(all_cycles(k4())) == 7
    assert all_cycles(path_graph(3)) == []
    assert all_cycles(single_loop()) == [frozenset({1})]
    tri = all_cycles(cycle_graph(3))
    assert tri == [frozenset({1, 2, 3})]


def test_all_cycles_respects_cap(monkeypatch):
    big = cycle_graph(21)
    with pytest.raises(ValueError):
        all_cycles(big)
    monkeypatch.setenv("BCX_MAX_EDGES", "25")
    assert len(all_cycles(big)) == 1


def test_parse_edge_list_auto_ids():
    G = parse_edge_list("# a comment\n0 1\n1 2  # trailing\n2 0\n")
    assert G == cycle_graph(3)


def test_parse_edge_list_explicit_ids_and_roundtrip():
    text = "0 1 4\n1 2 2\n2 0 9\n"
    G = parse_edge_list(text)
    assert G.edge_ids() == (2, 4, 9)
    assert parse_edge_list(format_edge_list(G)) == G


def test_parse_edge_list_errors_carry_line_numbers():
    with pytest.raises(ValueError, match="line 2"):
        parse_edge_list("0 1\n0 x\n")
    with pytest.raises(ValueError, match="line 3"):
        parse_edge_list("0 1 1\n1 2 2\n2 0\n")
    with pytest.raises(ValueError, match="line 1"):
        parse_edge_list("0 1 2 3 4\n")
    with pytest.raises(ValueError, match="line 2"):
        parse_edge_list("0 1 5\n1 2 5\n")


def test_json_roundtrip_preserves_isolated_vertices():
    G = Multigraph(frozenset({0, 1, 2, 8}), ((1, 0, 1), (3, 1, 2)))
    back = graph_from_json(graph_to_json(G))
    assert back == G
    with pytest.raises(ValueError):
        graph_from_json("{not json")
