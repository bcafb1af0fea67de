import io

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nospam.graph import (
    DirectedGraph,
    EdgeListError,
    LoadOptions,
    dyad_partition,
    has_arc,
    load_edge_list,
    neighbors_union,
    write_edge_list,
    write_label_map,
)

from .conftest import random_digraph


def load(text, **kw):
    return load_edge_list(io.BytesIO(text.encode()), LoadOptions(**kw))


def test_load_cycle():
    g, report = load("a b\nb c\nc a\n")
    assert (g.n_nodes, g.n_arcs) == (3, 3)
    assert len(g.uni_dyads) == 3 and g.bi_dyads == []
    assert g.labels == ["a", "b", "c"]
    assert report.self_loops_dropped == report.duplicates_dropped == 0


def test_load_reciprocal_pair():
    g, _ = load("a b\nb a\n")
    assert (g.n_nodes, g.n_arcs) == (2, 2)
    assert g.uni_dyads == [] and g.bi_dyads == [(0, 1)]


def test_load_drops_loops_and_duplicates():
    g, report = load("a a\na b\na b\n")
    assert (g.n_nodes, g.n_arcs) == (2, 1)
    assert report.self_loops_dropped == 1
    assert report.duplicates_dropped == 1


def test_load_separators_and_comments():
    g, report = load("# header\n% other comment\n\na,b\nb\tc\n c  d \n")
    assert g.n_arcs == 3
    assert report.lines_read == 3


def test_load_text_stream():
    g, _ = load_edge_list(io.StringIO("1 2\n2 3\n"))
    assert g.labels == ["1", "2", "3"]


@pytest.mark.parametrize("text,line", [("a b\nc\n", 2), ("a b c\n", 1), ("x y\n# c\na b c d\n", 3)])
def test_load_malformed(text, line):
    with pytest.raises(EdgeListError) as err:
        load(text)
    assert err.value.line == line
    assert f"line {line}" in str(err.value)


def test_load_extra_columns_opt_in():
    g, _ = load("a b 1\nb c 2\n", allow_extra_columns=True)
    assert g.n_arcs == 2


@pytest.mark.parametrize("text", ["", "# only a comment\n", "a a\nb b\n"])
def test_load_empty(text):
    with pytest.raises(EdgeListError):
        load(text)


def test_load_from_path(tmp_path):
    path = tmp_path / "g.txt"
    path.write_text("u v\nv w\n")
    g, _ = load_edge_list(path)
    assert g.n_arcs == 2


def test_dyad_partition_examples(cycle3, ffl):
    assert [len(x) for x in dyad_partition(cycle3)] == [3, 0]
    assert [len(x) for x in dyad_partition(ffl)] == [3, 0]
    pair = DirectedGraph.from_arcs(2, [(0, 1), (1, 0)])
    assert [len(x) for x in dyad_partition(pair)] == [0, 1]


def test_neighbors_union_examples(cycle3, ffl):
    assert neighbors_union(cycle3, 0, 1) == {2}
    X, Y, Z = 0, 1, 2
    assert neighbors_union(ffl, X, Y) == {Z}
    g = DirectedGraph.from_arcs(4, [(0, 1), (1, 2), (2, 0)])
    assert all(3 not in neighbors_union(g, u, v) for u in range(4) for v in range(4) if u != v)


def test_has_arc(ffl):
    assert has_arc(ffl, 0, 1) and not has_arc(ffl, 1, 0)
    with pytest.raises(IndexError):
        has_arc(ffl, 0, 3)
    with pytest.raises(IndexError):
        neighbors_union(ffl, -1, 0)


def test_constructor_rejects_non_simple():
    with pytest.raises(ValueError):
        DirectedGraph.from_arcs(2, [(0, 0)])
    with pytest.raises(ValueError):
        DirectedGraph.from_arcs(2, [(0, 1), (0, 1)])
    with pytest.raises(ValueError):
        DirectedGraph.from_arcs(2, [(0, 2)])


def _check_invariants(g):
    uni, bi = dyad_partition(g)
    assert g.n_arcs == len(uni) + 2 * len(bi)
    covered = set(uni) | {(a, b) for a, b in bi} | {(b, a) for a, b in bi}
    assert covered == g.arcs
    assert len(set(uni)) == len(uni)
    for a, b in uni:
        assert (b, a) not in g.arcs
    for u in range(g.n_nodes):
        assert sorted(g.out_adjacency[u].tolist()) == sorted(b for a, b in g.arcs if a == u)
        assert sorted(g.in_adjacency[u].tolist()) == sorted(a for a, b in g.arcs if b == u)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 12), st.floats(0, 1), st.integers(0, 2**32 - 1))
def test_structure_invariants(n, p, seed):
    g = random_digraph(n, p, np.random.default_rng(seed))
    _check_invariants(g)
    for u in range(n):
        for v in range(n):
            if u == v:
                continue
            brute = {w for a, b in g.arcs for w in (a, b) if {a, b} & {u, v}} - {u, v}
            assert neighbors_union(g, u, v) == brute


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 15), st.floats(0.05, 1), st.integers(0, 2**32 - 1))
def test_round_trip(n, p, seed):
    g = random_digraph(n, p, np.random.default_rng(seed))
    if g.n_arcs == 0:
        return
    buf = io.StringIO()
    write_edge_list(g, buf)
    h, _ = load_edge_list(io.StringIO(buf.getvalue()))
    relabeled = {(h.labels[a], h.labels[b]) for a, b in h.arcs}
    assert relabeled == {(g.labels[a], g.labels[b]) for a, b in g.arcs}


def test_label_map(tmp_path):
    g, _ = load("alpha beta\nbeta gamma\n")
    write_label_map(g, tmp_path / "labels.csv")
    assert (tmp_path / "labels.csv").read_text().splitlines() == [
        "label,index",
        "alpha,0",
        "beta,1",
        "gamma,2",
    ]
