import pytest
from hypothesis import given
from hypothesis import strategies as st

from tfl.enumeration import all_graphs
from tfl.graph import (
    Graph,
    complete_graph,
    cycle_graph,
    delete_vertices,
    empty_graph,
    is_connected,
    path_graph,
    petersen_graph,
)
from tfl.invariants import (
    alpha,
    connectivity_bruteforce,
    connectivity_value,
    has_independent_set,
    independence_number,
    independence_number_bruteforce,
    is_independent_set,
    local_connectivity,
    vertex_connectivity,
)

from .conftest import graphs


def test_examples():
    assert alpha(petersen_graph()) == 4
    assert connectivity_value(petersen_graph()) == 3
    assert independence_number(cycle_graph(7)).size == 3
    assert vertex_connectivity(complete_graph(5)).kappa == 4
    assert vertex_connectivity(complete_graph(5)).cut == 0
    assert vertex_connectivity(path_graph(4)).kappa == 1
    disconnected = empty_graph(3)
    assert vertex_connectivity(disconnected).kappa == 0
    assert alpha(empty_graph(5)) == 5
    assert connectivity_value(Graph(1, [0])) == 0


@pytest.mark.parametrize("n", range(1, 7))
def test_against_bruteforce_all_graphs(n):
    for g in all_graphs(n):
        w = independence_number(g)
        assert w.size == independence_number_bruteforce(g)
        assert is_independent_set(g, w.set) and w.set.bit_count() == w.size
        c = vertex_connectivity(g)
        assert c.kappa == connectivity_bruteforce(g) if is_connected(g) else c.kappa == 0


def test_lexicographically_least_witness():
    # C6: the lexicographically least maximum independent set is {0, 2, 4}
    assert independence_number(cycle_graph(6)).vertices == [0, 2, 4]


@given(graphs(max_n=10))
def test_independence_witness_is_maximum_and_valid(g):
    w = independence_number(g)
    assert is_independent_set(g, w.set)
    assert w.size == alpha(g)
    assert not has_independent_set(g, w.size + 1)
    assert has_independent_set(g, w.size)


@given(graphs(max_n=10, connected=True))
def test_cut_witness_separates(g):
    w = vertex_connectivity(g)
    assert w.kappa <= g.min_degree()
    if g.is_complete():
        assert w.cut == 0 and w.kappa == g.n - 1
    else:
        assert w.cut.bit_count() == w.kappa
        assert not is_connected(delete_vertices(g, w.cut))


@given(graphs(max_n=10, connected=True), st.integers(0, 6))
def test_capped_connectivity(g, cap):
    assert connectivity_value(g, cap) == min(connectivity_value(g), cap, g.n - 1)


@given(graphs(min_n=3, max_n=9, connected=True))
def test_local_connectivity_symmetric_and_bounds_kappa(g):
    k = connectivity_value(g)
    for s in range(g.n):
        for t in range(s + 1, g.n):
            if not g.has_edge(s, t):
                v = local_connectivity(g, s, t)
                assert v == local_connectivity(g, t, s)
                assert v >= k


def test_local_connectivity_rejects_adjacent():
    with pytest.raises(ValueError):
        local_connectivity(complete_graph(3), 0, 1)
