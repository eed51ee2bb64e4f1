import random

import pytest

from tfl.cycles import hamiltonian_cycle
from tfl.enumeration import is_isomorphic
from tfl.errors import InvalidArgument, InvalidSize
from tfl.families import (
    ALPHA_SHARPNESS,
    G_FAMILY,
    SHARPNESS,
    FamilyDescriptor,
    alpha_sharpness_graph,
    build_g_family,
    is_in_family_g,
    sandwich_graphs,
    sharpness_graph,
)
from tfl.graph import Graph, complete_graph, cycle_graph, relabel
from tfl.invariants import alpha, connectivity_value
from tfl.twofactor import find_two_factor


def test_small_members():
    g1 = build_g_family(7, 2)
    degs = g1.degrees()
    assert degs.count(1) == 1 and degs[5] == 3
    g2 = build_g_family(7, 5)
    k6 = complete_graph(6)
    pendant = Graph.from_edges(7, list(k6.edges()) + [(5, 6)])
    assert is_isomorphic(g2, pendant)
    assert FamilyDescriptor(G_FAMILY, 7, t=1).name == "G3(7)"
    assert FamilyDescriptor(G_FAMILY, 7, t=2).name == "G1(7)"
    assert FamilyDescriptor(G_FAMILY, 7, t=5).name == "G2(7)"
    assert FamilyDescriptor(G_FAMILY, 7, t=3).name == "G(n=7, t=3)"


@pytest.mark.parametrize("n", range(5, 13))
def test_recognizer_round_trip(n):
    rng = random.Random(n)
    for t in range(1, n - 1):
        g = build_g_family(n, t)
        perm = list(range(n))
        rng.shuffle(perm)
        desc = is_in_family_g(relabel(g, perm))
        assert desc == FamilyDescriptor(G_FAMILY, n, t=t)
        assert desc.build() == g
        assert desc.as_dict()["t"] == t


def test_recognizer_rejects_non_members():
    assert is_in_family_g(cycle_graph(9)) is None
    assert is_in_family_g(complete_graph(6)) is None
    # a pendant on a non-clique
    g = build_g_family(8, 3)
    holed = Graph.from_edges(8, [e for e in g.edges() if e != (0, 1)])
    assert is_in_family_g(holed) is None
    assert is_in_family_g(sharpness_graph(2)) is None


@pytest.mark.parametrize("n", range(5, 11))
def test_members_meet_the_order_and_independence_bounds(n):
    for t in range(1, n - 1):
        g = build_g_family(n, t)
        assert connectivity_value(g) == 1 and alpha(g) == 2
        assert find_two_factor(g, 1) is None and find_two_factor(g, n // 3) is None


@pytest.mark.parametrize("k", [1, 2, 3])
def test_sharpness_parameters(k):
    s = sharpness_graph(k)
    assert s.n == 3 * k + 2
    assert connectivity_value(s) == k and alpha(s) == k + 1
    assert hamiltonian_cycle(s) is None
    assert find_two_factor(s, 2) is None
    h = alpha_sharpness_graph(k)
    assert h.n == 3 * k + 4
    assert connectivity_value(h) == k and alpha(h) == k + 2
    assert find_two_factor(h, 2) is None
    assert FamilyDescriptor(SHARPNESS, s.n, k=k).build() == s
    assert FamilyDescriptor(ALPHA_SHARPNESS, h.n, k=k).build() == h


@pytest.mark.parametrize("n", range(5, 13))
def test_sandwich_members_are_recognized(n):
    seen = set()
    for g in sandwich_graphs(n):
        desc = is_in_family_g(g)
        assert desc is not None and desc.t >= 2
        seen.add(desc.t)
    assert seen == set(range(2, n - 1))


def test_errors():
    with pytest.raises(InvalidArgument):
        build_g_family(4, 1)
    with pytest.raises(InvalidArgument):
        build_g_family(8, 0)
    with pytest.raises(InvalidArgument):
        build_g_family(8, 7)
    with pytest.raises(InvalidArgument):
        sharpness_graph(0)
    with pytest.raises(InvalidArgument):
        alpha_sharpness_graph(-1)
    with pytest.raises(InvalidSize):
        sharpness_graph(21)
    with pytest.raises(InvalidSize):
        alpha_sharpness_graph(21)
    with pytest.raises(InvalidArgument):
        FamilyDescriptor("nope", 5).build()
