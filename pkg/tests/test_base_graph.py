import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cfigraphs import base_graph as bg
from cfigraphs.errors import GraphFormatError


def test_family_shapes():
    p3 = bg.path(3)
    assert p3.n == 4 and p3.edges == ((0, 1), (1, 2), (2, 3))
    c3 = bg.cycle(3)
    assert c3.n == 3 and set(c3.edges) == {(0, 1), (0, 2), (1, 2)}
    with pytest.raises(ValueError):
        bg.cycle(2)
    with pytest.raises(ValueError):
        bg.path(0)
    with pytest.raises(ValueError):
        bg.complete(0)


def test_edge_count_closed_forms():
    assert len(bg.path(7).edges) == 7
    assert len(bg.cycle(9).edges) == 9
    assert len(bg.complete(6).edges) == 6 * 5 // 2
    assert len(bg.complete_bipartite(3, 3).edges) == 9
    assert len(bg.grid(2, 3).edges) == 7
    assert len(bg.petersen().edges) == 15


def test_degrees():
    k4 = bg.complete(4)
    assert all(k4.degree(v) == 3 for v in range(4))
    p3 = bg.path(3)
    assert p3.degree(0) == 1 and p3.degree(1) == 2
    star = bg.complete_bipartite(1, 3)
    assert star.degree(0) == 3 and star.max_degree() == 3
    with pytest.raises(ValueError):
        p3.degree(9)


def test_components():
    c3 = bg.cycle(3)
    assert bg.connected_components(c3) == [frozenset({0, 1, 2})]
    two = bg.disjoint_union(c3, c3)
    assert [len(c) for c in bg.connected_components(two)] == [3, 3]
    single = bg.BaseGraph(1, ())
    assert bg.connected_components(single) == [frozenset({0})]
    assert bg.is_connected(bg.petersen())


def test_classify_linear():
    g = bg.disjoint_union(bg.path(4), bg.path(6))
    assert bg.classify_linear(g) == [bg.LinearShape("path", 4), bg.LinearShape("path", 6)]
    assert bg.classify_linear(bg.cycle(18)) == [bg.LinearShape("cycle", 18)]
    assert bg.classify_linear(bg.complete(4)) == [bg.LinearShape("other")]


def test_loops_and_duplicates():
    with pytest.raises(ValueError):
        bg.BaseGraph.from_edges(3, [(0, 0)])
    g = bg.BaseGraph.from_edges(3, [(0, 1), (1, 0), (1, 2)])
    assert g.edges == ((0, 1), (1, 2))


def test_json_roundtrip_canonical():
    g = bg.grid(2, 3)
    data = bg.write_graph(g, "json")
    g2, meta = bg.read_graph(data, "json")
    assert g2 == g and meta == {}
    assert bg.write_graph(g2, "json") == data


def test_json_colors_names():
    g = bg.path(1)
    data = bg.write_graph(g, "json", colors=[5, 7], names=["x", "y"])
    g2, meta = bg.read_graph(data, "json")
    assert g2 == g and meta["colors"] == [5, 7] and meta["names"] == ["x", "y"]
    with pytest.raises(GraphFormatError):
        bg.read_graph(b'{"n": 2, "edges": [[0,1]], "colors": [1]}', "json")


def test_dimacs():
    text = b"c comment\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n"
    g, _ = bg.read_graph(text, "dimacs")
    assert g == bg.cycle(3)
    # duplicate edges dedupe silently
    g2, _ = bg.read_graph(b"p edge 2 2\ne 1 2\ne 2 1\n", "dimacs")
    assert g2.edges == ((0, 1),)
    with pytest.raises(GraphFormatError, match="loop"):
        bg.read_graph(b"p edge 2 1\ne 1 1\n", "dimacs")
    with pytest.raises(GraphFormatError, match="line 1"):
        bg.read_graph(b"q edge 2 1\n", "dimacs")
    rt, _ = bg.read_graph(bg.write_graph(g, "dimacs"), "dimacs")
    assert rt == g


@st.composite
def graphs(draw):
    n = draw(st.integers(1, 8))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    return bg.BaseGraph.from_edges(n, edges)


@settings(max_examples=40, deadline=None)
@given(graphs())
def test_io_roundtrip_property(g):
    for fmt in ("json", "dimacs"):
        g2, _ = bg.read_graph(bg.write_graph(g, fmt), fmt)
        assert g2 == g


@settings(max_examples=40, deadline=None)
@given(graphs(), st.randoms())
def test_classify_linear_relabel_invariant(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    assert bg.classify_linear(g) == bg.classify_linear(g.relabel(perm))
