import json

import pytest

from tfl.budget import Budget
from tfl.errors import InvalidArgument, SizeLimit
from tfl.families import build_g_family, sharpness_graph
from tfl.graph import Graph, complete_graph, cycle_graph, petersen_graph, to_graph6
from tfl.harness import (
    COUNTEREXAMPLE,
    CONSISTENT,
    EXCEPTION_FAMILY,
    EXIT_COUNTEREXAMPLE,
    EXIT_INCONCLUSIVE,
    EXIT_OK,
    SKIPPED,
    Summary,
    VerificationRecord,
    check_sharpness,
    eval_amar,
    eval_kouider,
    eval_theorem1,
    evaluate,
    run_campaign,
    sharpness_exit_code,
)

KEYS = ["graph", "n", "alpha", "kappa", "omega_min_two_factor", "hypotheses", "conclusions", "witness", "status"]


@pytest.fixture
def corpus(tmp_path):
    f = tmp_path / "corpus.g6"
    gs = [sharpness_graph(2), build_g_family(9, 7), petersen_graph(), cycle_graph(5)]
    f.write_text("".join(to_graph6(g) + "\n" for g in gs))
    return f


@pytest.mark.parametrize("campaign", ["theorem1", "chvatal-erdos", "amar", "kaneko-yoshimoto", "kouider"])
def test_small_campaigns_verify(campaign):
    summary, lines = run_campaign(campaign, n_max=6)
    assert summary.total == 1 + 1 + 2 + 6 + 21 + 112
    assert summary.counts[COUNTEREXAMPLE] == 0 and summary.counts[SKIPPED] == 0
    assert summary.exit_code == EXIT_OK and summary.verdict == "verified"
    for line in lines:
        assert list(json.loads(line)) == KEYS


def test_theorem1_exceptions_are_reported():
    summary, lines = run_campaign("theorem1", n_max=7)
    recs = [VerificationRecord.from_json(x) for x in lines]
    assert all(r.status == EXCEPTION_FAMILY for r in recs)
    # one member for each t at n = 6 and n = 7
    assert per_n_exceptions(summary) == {"6": 4, "7": 5}
    for r in recs:
        assert r.alpha == 2 and r.kappa == 1 and r.omega_min_two_factor == -1


def per_n_exceptions(summary: Summary) -> dict:
    return {n: row[EXCEPTION_FAMILY] for n, row in summary.per_n.items() if row[EXCEPTION_FAMILY]}


def test_record_round_trip():
    rec = evaluate("theorem1", complete_graph(6))
    back = VerificationRecord.from_json(rec.to_json())
    assert back == rec
    assert list(json.loads(rec.to_json())) == KEYS


def test_workers_do_not_change_output():
    one = run_campaign("theorem1", n_max=7, workers=1, verbose=True)
    two = run_campaign("theorem1", n_max=7, workers=2, verbose=True)
    assert one[1] == two[1]
    assert one[0].as_dict() == two[0].as_dict()
    assert len(one[1]) == one[0].total


def test_checkpoint_resume_matches_a_straight_run(tmp_path):
    cp = tmp_path / "cp.json"
    straight = run_campaign("chvatal-erdos", n_max=7, verbose=True)
    part, _ = run_campaign("chvatal-erdos", n_max=7, checkpoint=cp, verbose=True, stop_after=300)
    assert not part.complete and part.exit_code == EXIT_INCONCLUSIVE and part.total == 300
    saved = json.loads(cp.read_text())
    assert saved["total"] == 300
    rest, lines = run_campaign("chvatal-erdos", n_max=7, checkpoint=cp, verbose=True)
    assert rest.as_dict() == straight[0].as_dict()
    assert lines == straight[1]
    with pytest.raises(InvalidArgument, match="different run"):
        run_campaign("chvatal-erdos", n_max=6, checkpoint=cp)


def test_file_source(corpus):
    summary, lines = run_campaign("theorem1", source=str(corpus), verbose=True)
    recs = {r.graph: r for r in map(VerificationRecord.from_json, lines)}
    s = recs[to_graph6(sharpness_graph(2))]
    assert s.status == CONSISTENT and not s.hypotheses["order"]
    assert (s.alpha, s.kappa) == (3, 2)
    g2 = recs[to_graph6(build_g_family(9, 7))]
    assert g2.status == EXCEPTION_FAMILY and g2.witness["name"] == "G2(9)"
    assert summary.total == 4 and summary.exit_code == EXIT_OK
    _, lines = run_campaign("kouider", source=str(corpus), verbose=True)
    pet = next(r for r in map(VerificationRecord.from_json, lines) if r.graph == to_graph6(petersen_graph()))
    assert pet.conclusions == {"cycle_cover": True, "cycles_allowed": 2}
    assert len(pet.witness) == 2


def test_budget_exhaustion_is_inconclusive(corpus):
    summary, lines = run_campaign("chvatal-erdos", source=str(corpus), budget=3)
    assert summary.counts[SKIPPED] > 0
    assert summary.exit_code == EXIT_INCONCLUSIVE and summary.verdict == "inconclusive"
    assert all(json.loads(x)["status"] in (SKIPPED, CONSISTENT) for x in lines)


def test_counterexample_exit_code():
    s = Summary("x")
    s.add(5, COUNTEREXAMPLE)
    s.add(5, SKIPPED)
    assert s.exit_code == EXIT_COUNTEREXAMPLE
    assert s.lines()[0] == "x: 2 graphs, verdict counterexample"


def test_per_graph_evaluators():
    assert eval_theorem1(cycle_graph(3), Budget()).hypotheses["order"] is False
    # two K4 sharing vertex 3: kappa 1, alpha 2, a triangle plus a 4-cycle
    bowtie = Graph.from_edges(7, [(a, b) for q in ((0, 1, 2, 3), (3, 4, 5, 6)) for a in q for b in q if a < b])
    rec = eval_theorem1(bowtie, Budget())
    assert rec.status == CONSISTENT and rec.hypotheses == {"connected": True, "order": True, "alpha": True}
    assert rec.conclusions["two_factor_le2"] is True
    assert sorted(len(line.split()) for line in rec.witness) == [3, 4]
    assert eval_kouider(petersen_graph(), Budget()).status == CONSISTENT
    # a non-Hamiltonian graph with alpha = kappa + 1
    amar = eval_amar(build_g_family(7, 3), Budget(), all_longest=True)
    assert amar.hypotheses == {"connected": True, "alpha": True, "non_hamiltonian": True}
    assert amar.conclusions == {"remainder_complete": True, "all_remainders_complete": True}


def test_argument_errors():
    with pytest.raises(InvalidArgument):
        run_campaign("nope", n_max=4)
    with pytest.raises(InvalidArgument):
        run_campaign("theorem1")
    with pytest.raises(InvalidArgument):
        run_campaign("theorem1", n_max=4, workers=0)
    with pytest.raises(SizeLimit):
        run_campaign("theorem1", n_max=11)
    with pytest.raises(SizeLimit):
        run_campaign("kouider", n_max=9)


def test_sharpness_rows():
    rows = check_sharpness(3)
    assert [(r.kind, r.k) for r in rows[:2]] == [("sharpness", 1), ("alpha-sharpness", 1)]
    assert all(r.ok for r in rows)
    assert sharpness_exit_code(rows) == EXIT_OK
    assert json.loads(rows[2].to_json())["checks"]["kappa=k"] is True
    tight = check_sharpness(2, budget=2)
    assert sharpness_exit_code(tight) == EXIT_INCONCLUSIVE
    with pytest.raises(InvalidArgument):
        check_sharpness(0)
