"""Codec tests, cross-checked against networkx as the reference codec."""

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from nzflow import Graph6Error, MultiGraph, parse_graph6, serialize_graph6
from nzflow.catalog import k4, petersen, to_networkx


def test_k4_is_c_tilde():
    g = parse_graph6("C~")
    assert g.n == 4 and g.m == 6
    assert serialize_graph6(g) == "C~"


def test_single_vertex():
    g = parse_graph6("@")
    assert g.n == 1 and g.m == 0


def test_empty_graph_zero_vertices():
    g = parse_graph6("?")
    assert g.n == 0 and g.m == 0


def test_header_is_stripped():
    assert parse_graph6(">>graph6<<C~").m == 6


def test_illegal_character_reports_offset():
    with pytest.raises(Graph6Error) as err:
        parse_graph6("C" + chr(30))
    assert err.value.offset == 1


def test_truncated_record():
    # K4 needs one data byte after the size; give none
    with pytest.raises(Graph6Error, match="truncated"):
        parse_graph6("C")


def test_trailing_data_rejected():
    with pytest.raises(Graph6Error, match="trailing"):
        parse_graph6("C~~")


def test_incremental_sparse6_unsupported():
    with pytest.raises(Graph6Error, match="incremental"):
        parse_graph6(";C~")


def test_matches_networkx_on_named_graphs():
    for g in (k4(), petersen()):
        ours = serialize_graph6(g)
        theirs = nx.to_graph6_bytes(
            nx.Graph(to_networkx(g)), header=False
        ).decode().strip()
        assert ours == theirs
        back = parse_graph6(theirs)
        assert sorted(map(tuple, map(sorted, back.edges))) == sorted(
            map(tuple, map(sorted, g.edges))
        )


def test_sparse6_round_trip_via_networkx():
    g = petersen()
    rec = nx.to_sparse6_bytes(nx.Graph(to_networkx(g)), header=False).decode().strip()
    back = parse_graph6(rec)
    assert back.n == g.n
    assert sorted(map(tuple, map(sorted, back.edges))) == sorted(
        map(tuple, map(sorted, g.edges))
    )


def test_sparse6_multigraph():
    h = nx.MultiGraph()
    h.add_nodes_from(range(3))
    h.add_edges_from([(0, 1), (0, 1), (1, 2)])
    rec = nx.to_sparse6_bytes(h, header=False).decode().strip()
    g = parse_graph6(rec)
    assert g.n == 3 and g.m == 3
    pairs = sorted(tuple(sorted(e)) for e in g.edges)
    assert pairs == [(0, 1), (0, 1), (1, 2)]


def test_sparse6_loop_rejected():
    h = nx.MultiGraph()
    h.add_nodes_from(range(2))
    h.add_edge(0, 0)
    rec = nx.to_sparse6_bytes(h, header=False).decode().strip()
    with pytest.raises(Graph6Error, match="loop"):
        parse_graph6(rec)


def test_serialize_rejects_parallel_edges():
    with pytest.raises(ValueError, match="parallel"):
        serialize_graph6(MultiGraph(2, [(0, 1), (0, 1)]))


@st.composite
def random_simple_graph(draw):
    n = draw(st.integers(min_value=0, max_value=40))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return MultiGraph(n, [p for p, keep in zip(pairs, mask) if keep])


@settings(max_examples=60, deadline=None)
@given(random_simple_graph())
def test_round_trip_and_networkx_equivalence(g):
    rec = serialize_graph6(g)
    back = parse_graph6(rec)
    assert back.n == g.n
    assert sorted(map(tuple, map(sorted, back.edges))) == sorted(
        map(tuple, map(sorted, g.edges))
    )
    nx_rec = nx.to_graph6_bytes(nx.Graph(to_networkx(g)), header=False).decode().strip()
    assert rec == nx_rec


def test_large_vertex_count_form():
    n = 100
    g = MultiGraph(n, [(i, i + 1) for i in range(n - 1)])
    rec = serialize_graph6(g)
    assert rec.startswith("~")
    back = parse_graph6(rec)
    assert back.n == n and back.m == n - 1


def test_vertex_count_overflow_rejected():
    with pytest.raises(Graph6Error, match="overflow"):
        parse_graph6("~~" + "?" * 10)
