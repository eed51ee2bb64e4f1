import pickle
import random

import pytest
from hypothesis import given

from tfl.errors import DecodeError, InvalidArgument, InvalidSize, SizeLimit
from tfl.graph import (
    Graph,
    bits,
    complete_graph,
    components,
    cycle_graph,
    delete_vertices,
    disjoint_union,
    empty_graph,
    from_graph6,
    induced_subgraph,
    is_connected,
    join,
    k_copies,
    members,
    path_graph,
    petersen_graph,
    relabel,
    to_graph6,
)

from .conftest import graphs


def test_known_graph6_strings():
    # reference encodings produced by nauty's geng/showg conventions
    assert to_graph6(complete_graph(4)) == "C~"
    assert to_graph6(path_graph(4)) == "Ch"
    assert to_graph6(petersen_graph()) == "IheA@GUAo"
    assert to_graph6(empty_graph(1)) == "@"


def test_header_accepted():
    assert from_graph6(">>graph6<<C~") == complete_graph(4)


def test_large_size_header_round_trip():
    g = cycle_graph(63)
    s = to_graph6(g)
    assert s[0] == "~"
    assert from_graph6(s) == g
    g = complete_graph(64)
    assert from_graph6(to_graph6(g)) == g


def test_decode_errors_carry_line_numbers():
    with pytest.raises(DecodeError, match="line 7"):
        from_graph6("C~~", line=7)
    with pytest.raises(DecodeError):
        from_graph6("")
    with pytest.raises(DecodeError):
        from_graph6("C\x7f")
    with pytest.raises(DecodeError, match="padding"):
        from_graph6("Aw")  # n=2 has one data bit; the rest must be zero


def test_size_limit_over_64():
    text = "~" + chr(63) + chr(1 + 63) + chr(2 + 63)  # n = 66
    with pytest.raises(SizeLimit, match="line 3"):
        from_graph6(text + "?" * ((66 * 65 // 2 + 5) // 6), line=3)


def test_validation():
    with pytest.raises(InvalidArgument):
        Graph(2, [2, 0])  # asymmetric
    with pytest.raises(InvalidArgument):
        Graph(2, [1, 0])  # loop on 0
    with pytest.raises(InvalidSize):
        Graph(0, [])
    with pytest.raises(InvalidArgument):
        complete_graph(3).degree(3)
    with pytest.raises(InvalidArgument):
        induced_subgraph(complete_graph(3), 0)


@given(graphs(max_n=12))
def test_graph6_round_trip(g):
    assert from_graph6(to_graph6(g)) == g


def test_graph6_round_trip_random_orders():
    rng = random.Random(5)
    for n in (1, 2, 5, 6, 7, 13, 33, 62, 63, 64):
        adj = [0] * n
        for u in range(n):
            for v in range(u + 1, n):
                if rng.random() < 0.5:
                    adj[u] |= 1 << v
                    adj[v] |= 1 << u
        g = Graph(n, adj)
        assert from_graph6(to_graph6(g)) == g


def test_constructors():
    assert complete_graph(5).m == 10
    assert cycle_graph(6).degrees() == [2] * 6
    assert path_graph(4).m == 3
    p = petersen_graph()
    assert p.n == 10 and p.m == 15 and set(p.degrees()) == {3}
    u = disjoint_union(complete_graph(3), complete_graph(2))
    assert len(components(u)) == 2
    j = join(empty_graph(2), empty_graph(3))
    assert j.m == 6
    kk = k_copies(3, complete_graph(2))
    assert kk.n == 6 and kk.m == 3


@given(graphs(max_n=9))
def test_relabel_preserves_degree_sequence(g):
    perm = list(range(g.n))
    random.Random(g.n).shuffle(perm)
    h = relabel(g, perm)
    assert sorted(h.degrees()) == sorted(g.degrees())
    assert h.m == g.m
    for u, v in g.edges():
        assert h.has_edge(perm[u], perm[v])


@given(graphs(max_n=9))
def test_components_partition(g):
    comps = components(g)
    total = 0
    for c in comps:
        assert c & total == 0
        total |= c
        assert is_connected(g, c)
    assert total == g.vertex_mask
    assert is_connected(g) == (len(comps) == 1)


def test_subgraphs_and_bits():
    g = petersen_graph()
    s = bits([0, 1, 2, 3, 4])
    h = induced_subgraph(g, s)
    assert h.n == 5 and h.m == 5
    assert delete_vertices(g, s).n == 5
    assert members(bits([5, 1, 3])) == [1, 3, 5]


def test_graphs_pickle():
    g = petersen_graph()
    assert pickle.loads(pickle.dumps(g)) == g
