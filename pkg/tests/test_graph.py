import pytest
from hypothesis import given
from hypothesis import strategies as st

from pgmatroid.gf2 import Gf2Matrix
from pgmatroid.graph import (
    MultiGraph,
    NotIncidenceMatrix,
    contract_edge,
    graph_from_incidence,
    incidence_matrix,
)


@st.composite
def multigraphs(draw, max_n=8, max_m=14):
    n = draw(st.integers(1, max_n))
    pairs = draw(st.lists(st.tuples(st.integers(1, n), st.integers(1, n)), max_size=max_m))
    return MultiGraph.from_pairs(n, pairs)


def test_incidence_examples():
    assert incidence_matrix(MultiGraph.from_pairs(2, [(1, 2)])).to_lists() == [[1], [1]]
    assert incidence_matrix(MultiGraph.from_pairs(2, [(2, 2)])).to_lists() == [[0], [0]]
    tri = incidence_matrix(MultiGraph.from_pairs(3, [(1, 2), (2, 3), (1, 3)]))
    assert tri.shape == (3, 3)
    assert all(bin(c).count("1") == 2 for c in tri.columns())


def test_graph_from_incidence_examples():
    g = graph_from_incidence(Gf2Matrix.from_lists([[1], [1]]))
    assert g.edges[0][1:] == (1, 2)
    g = graph_from_incidence(Gf2Matrix.from_lists([[0], [0]]))
    assert g.edges[0].is_loop and g.edges[0].u == 1
    with pytest.raises(NotIncidenceMatrix, match="not a graph incidence matrix"):
        graph_from_incidence(Gf2Matrix.from_lists([[1], [0]]))
    with pytest.raises(NotIncidenceMatrix):
        graph_from_incidence(Gf2Matrix.from_lists([[1], [1], [1]]))


@given(multigraphs())
def test_incidence_round_trip(g):
    a = incidence_matrix(g)
    back = graph_from_incidence(a)
    assert incidence_matrix(back).rows == a.rows


def test_contract_examples():
    g, vmap = contract_edge(MultiGraph.from_pairs(2, [(1, 2)]), 0)
    assert g.n == 1 and g.m == 0 and vmap == {1: 1, 2: 1}
    g, _ = contract_edge(MultiGraph.from_pairs(3, [(1, 2), (2, 3), (1, 3)]), 0)
    assert g.n == 2 and sorted((e.u, e.v) for e in g.edges) == [(1, 2), (1, 2)]
    g, _ = contract_edge(MultiGraph.from_pairs(4, [(1, 2), (2, 3), (3, 4)]), 1)
    assert g.n == 3 and g.m == 2 and g.is_connected()
    with pytest.raises(ValueError):
        contract_edge(MultiGraph.from_pairs(1, [(1, 1)]), 0)


@given(multigraphs(), st.data())
def test_contract_properties(g, data):
    non_loops = [e.id for e in g.edges if not e.is_loop]
    if not non_loops:
        return
    eid = data.draw(st.sampled_from(non_loops))
    h, vmap = contract_edge(g, eid)
    assert h.n == g.n - 1 and h.m == g.m - 1
    assert len(h.components()) == len(g.components())
    assert set(h.edge_ids) == set(g.edge_ids) - {eid}
    e = g.edge(eid)
    assert vmap[e.u] == vmap[e.v]


def test_validation():
    with pytest.raises(ValueError):
        MultiGraph(2, ((0, 1, 3),))
    with pytest.raises(ValueError):
        MultiGraph(2, ((0, 1, 2), (0, 2, 1)))


def test_delta_and_components():
    g = MultiGraph.from_pairs(5, [(1, 2), (2, 3), (4, 5), (4, 4)])
    assert g.delta({1}) == frozenset({0})
    assert g.delta({2}) == frozenset({0, 1})
    assert g.components() == [[1, 2, 3], [4, 5]]
    assert g.delete_edges([1]).components() == [[1, 2], [3], [4, 5]]
