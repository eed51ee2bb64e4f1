import pytest
from hypothesis import given

from tfl.budget import Budget
from tfl.enumeration import all_graphs
from tfl.errors import BudgetExceeded, InvalidArgument, InvalidSize
from tfl.graph import complete_graph, cycle_graph, disjoint_union, path_graph, petersen_graph
from tfl.twofactor import (
    TwoFactorCertificate,
    certificate_mask,
    find_two_factor,
    find_two_factor_exact_components,
    min_two_factor_components,
    two_factor_component_counts_bruteforce,
    validate_certificate,
)

from .conftest import graphs


def test_examples():
    k6 = find_two_factor_exact_components(complete_graph(6), 2)
    assert [len(c) for c in k6.cycles] == [3, 3]
    k7 = find_two_factor_exact_components(complete_graph(7), 2)
    assert sorted(len(c) for c in k7.cycles) == [3, 4]
    p = petersen_graph()
    assert find_two_factor(p, 1) is None
    two = find_two_factor(p, 2)
    assert two is not None and [len(c) for c in two.cycles] == [5, 5]
    assert min_two_factor_components(p) == 2
    assert min_two_factor_components(disjoint_union(cycle_graph(3), cycle_graph(4))) == 2
    assert min_two_factor_components(path_graph(3)) == -1


def test_errors():
    with pytest.raises(InvalidSize):
        find_two_factor(complete_graph(2), 1)
    with pytest.raises(InvalidArgument):
        find_two_factor(complete_graph(4), 0)
    with pytest.raises(InvalidArgument):
        find_two_factor_exact_components(complete_graph(4), 0)
    with pytest.raises(BudgetExceeded):
        find_two_factor(petersen_graph(), 1, Budget(5))


def test_certificate_lines_round_trip():
    cert = TwoFactorCertificate.of([[5, 4, 3], [2, 0, 1]])
    assert cert.lines() == ["0 1 2", "3 4 5"]
    assert TwoFactorCertificate.from_lines(cert.lines()) == cert
    assert certificate_mask(cert) == 0b111111
    assert validate_certificate(complete_graph(6), cert)
    assert not validate_certificate(complete_graph(7), cert)


@pytest.mark.parametrize("n", range(3, 7))
def test_against_edge_subset_oracle(n):
    for g in all_graphs(n):
        counts = two_factor_component_counts_bruteforce(g)
        for c in range(1, n // 3 + 1):
            found = find_two_factor(g, c)
            assert (found is not None) == any(k <= c for k in counts)
            if found is not None:
                assert validate_certificate(g, found) and found.components <= c
            exact = find_two_factor_exact_components(g, c)
            assert (exact is not None) == (c in counts)
            if exact is not None:
                assert exact.components == c
        assert min_two_factor_components(g) == (min(counts) if counts else -1)


@given(graphs(min_n=3, max_n=10))
def test_found_certificates_validate(g):
    cert = find_two_factor(g, 3)
    if cert is not None:
        assert validate_certificate(g, cert)
        assert cert.components <= 3
        assert certificate_mask(cert) == g.vertex_mask
    m = min_two_factor_components(g)
    if m > 0:
        assert find_two_factor(g, m) is not None
        if m > 1:
            assert find_two_factor(g, m - 1) is None
