from __future__ import annotations

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import corpus_upto
from gsc.graph import (
    AdjacencyError,
    Graph,
    Graph6Error,
    common_neighbors,
    complete,
    complete_bipartite,
    components,
    cycle,
    from_graph6,
    identify_set,
    identify_vertices,
    path,
    prism,
    to_graph6,
    triangles,
)
import oracles


@st.composite
def graphs(draw, max_n: int = 10) -> Graph:
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


def test_graph_rejects_asymmetric_rows():
    with pytest.raises(ValueError):
        Graph(2, (0b10, 0))
    with pytest.raises(ValueError):
        Graph(1, (0b1,))


def test_edge_count_is_half_degree_sum():
    g = prism()
    assert g.m == sum(g.degree(v) for v in range(g.n)) // 2 == 9


# graph6 -------------------------------------------------------------------

def test_triangle_graph6():
    # reference encoding from networkx
    assert nx.to_graph6_bytes(nx.complete_graph(3), header=False).strip() == b"Bw"
    g = from_graph6("Bw")
    assert (g.n, g.m) == (3, 3)
    assert to_graph6(complete(3)) == "Bw"


def test_single_vertex_and_empty_pair():
    g = from_graph6("@")
    assert (g.n, g.m) == (1, 0)
    assert to_graph6(Graph.empty(2)) == "A?"
    assert len(to_graph6(Graph.empty(2))) == 2


def test_prism_round_trip():
    code = to_graph6(prism())
    assert len(code) == 4
    assert from_graph6(code) == prism()
    assert nx.is_isomorphic(nx.from_graph6_bytes(code.encode()), nx.circular_ladder_graph(3))


@pytest.mark.parametrize(
    "line, offset",
    [
        ("B>w", 1),  # '>' is ASCII 62
        ("Bww", 2),  # trailing garbage
        ("D", 1),  # missing edge data
        ("", 0),
        ("~?@?", 0),  # long form
        ("Bx", 1),  # non-zero padding bits
    ],
)
def test_malformed_graph6(line, offset):
    with pytest.raises(Graph6Error) as err:
        from_graph6(line)
    assert err.value.offset == offset
    assert "offset" in str(err.value)


def test_to_graph6_rejects_large_graphs():
    with pytest.raises(ValueError):
        to_graph6(Graph.empty(63))


def test_graph6_agrees_with_networkx_on_corpus():
    for line in corpus_upto(7):
        ours = from_graph6(line)
        ref = nx.from_graph6_bytes(line.encode())
        assert ours.n == ref.number_of_nodes()
        assert set(ours.edges()) == {(min(e), max(e)) for e in ref.edges()}
        assert to_graph6(ours) == line


@given(graphs(max_n=62 // 4))
def test_graph6_round_trip(g):
    assert from_graph6(to_graph6(g)) == g


# components and neighbourhoods ---------------------------------------------

def test_components_examples():
    assert components(complete(3)) == [frozenset({0, 1, 2})]
    assert components(Graph.from_edges(4, [(0, 1), (2, 3)])) == [frozenset({0, 1}), frozenset({2, 3})]
    # the prism minus its matching {au, bv, cw}
    no_matching = Graph.from_edges(6, [e for e in prism().edges() if e not in [(0, 3), (1, 4), (2, 5)]])
    assert sorted(map(len, components(no_matching))) == [3, 3]


@given(graphs())
def test_components_partition(g):
    parts = components(g)
    assert sum(map(len, parts)) == g.n
    assert frozenset().union(*parts) == frozenset(range(g.n))
    owner = {v: i for i, p in enumerate(parts) for v in p}
    assert all(owner[u] == owner[v] for u, v in g.edges())
    assert len(parts) == nx.number_connected_components(oracles.to_nx(g))


def test_common_neighbors_examples():
    assert common_neighbors(cycle(4), 0, 2) == {1, 3}
    assert common_neighbors(complete_bipartite(2, 3), 0, 1) == {2, 3, 4}
    assert common_neighbors(prism(), 0, 3) == set()
    with pytest.raises(ValueError):
        common_neighbors(cycle(4), 1, 1)


def test_triangle_examples():
    assert len(triangles(prism())) == 2
    assert triangles(cycle(5)) == []
    assert triangles(complete(4)) == [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]


@given(graphs())
def test_triangles_match_brute_force(g):
    assert triangles(g) == oracles.triangles(g)


# identification -------------------------------------------------------------

def test_identify_opposite_corners_of_c4():
    h, relabel = identify_vertices(cycle(4), 0, 2)
    assert (h.n, h.m) == (3, 2)
    assert relabel[0] == relabel[2] == 0
    assert h.neighbors(0) == {relabel[1], relabel[3]}
    assert not h.has_edge(relabel[1], relabel[3])


def test_identify_across_disjoint_edges():
    h, relabel = identify_vertices(Graph.from_edges(4, [(0, 1), (2, 3)]), 0, 2)
    assert h == Graph.from_edges(3, [(0, 1), (0, 2)])
    assert relabel == {0: 0, 1: 1, 2: 0, 3: 2}


def test_identify_errors():
    with pytest.raises(AdjacencyError):
        identify_vertices(cycle(4), 0, 1)
    with pytest.raises(ValueError):
        identify_vertices(cycle(4), 2, 2)
    with pytest.raises(ValueError):
        identify_set(cycle(4), [])


def _claim14_prism():
    # triangles x y0 z0 and y2 y1 z1 with matching x-y2, y0-y1, z0-z1
    x, y0, z0, y2, y1, z1 = range(6)
    return prism(), dict(x=x, y0=y0, z0=z0, y1=y1, z1=z1, y2=y2)


def test_identify_y0_z1_in_prism_gives_2n_minus_3():
    g, v = _claim14_prism()
    assert common_neighbors(g, v["y0"], v["z1"]) == {v["y1"], v["z0"]}
    h, _ = identify_vertices(g, v["y0"], v["z1"])
    assert h.n == g.n - 1
    assert h.m == 2 * h.n - 3 == g.m - 2


def test_identify_set_examples():
    assert identify_set(cycle(4), [2]).graph == cycle(4)
    h, relabel = identify_set(path(4), [1, 2])
    assert h == path(3)
    assert relabel == {0: 0, 1: 1, 2: 1, 3: 2}


def test_contract_claim14c_path_in_prism():
    g, v = _claim14_prism()
    h, _ = identify_set(g, [v["y1"], v["y2"], v["x"], v["z0"]])
    assert h.n == g.n - 3
    # only y0 and z1 survive, each joined to the merged vertex
    assert g.m - h.m == 7
    assert h == Graph.from_edges(3, [(0, 1), (0, 2)])


@given(graphs(max_n=9), st.data())
def test_identify_vertices_degree_law(g, data):
    pairs = [(x, y) for x in range(g.n) for y in range(x + 1, g.n) if not g.has_edge(x, y)]
    if not pairs:
        return
    x, y = data.draw(st.sampled_from(pairs))
    h, relabel = identify_vertices(g, x, y)
    assert h.n == g.n - 1
    assert h.degree(relabel[x]) == len(g.neighbors(x) | g.neighbors(y))
    assert h.m == g.m - len(g.neighbors(x) & g.neighbors(y))
