import io
import json

import pytest

from tfl.cli import main
from tfl.families import build_g_family, sharpness_graph
from tfl.graph import complete_graph, from_graph6, petersen_graph, to_graph6

PETERSEN = to_graph6(petersen_graph())


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def jsonl(text):
    return [json.loads(x) for x in text.splitlines()]


def test_invariants(capsys):
    code, out, _ = run(capsys, "invariants", PETERSEN)
    assert code == 0
    (rec,) = jsonl(out)
    assert (rec["alpha"], rec["kappa"], rec["min_degree"]) == (4, 3, 3)
    assert len(rec["independent_set"]) == 4 and len(rec["cut"]) == 3


def test_invariants_from_stdin(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(f"C~\n\n{PETERSEN}\n"))
    code, out, _ = run(capsys, "invariants", "-")
    assert code == 0 and [r["n"] for r in jsonl(out)] == [4, 10]


def test_two_factor(capsys):
    code, out, _ = run(capsys, "two-factor", "--max-components", "1", PETERSEN)
    assert code == 0 and jsonl(out)[0]["found"] is False
    code, out, _ = run(capsys, "two-factor", "--max-components", "2", PETERSEN)
    rec = jsonl(out)[0]
    assert rec["found"] and rec["components"] == 2 and len(rec["cycles"]) == 2


def test_extract(capsys):
    g6 = to_graph6(build_g_family(8, 3))
    code, out, _ = run(capsys, "extract", g6)
    rec = jsonl(out)[0]
    assert code == 0 and rec["result"] == "exception" and rec["graph"] == g6
    code, out, _ = run(capsys, "extract", to_graph6(complete_graph(6)))
    assert jsonl(out)[0]["result"] == "hamiltonian"


def test_family(capsys):
    code, out, err = run(capsys, "family", "g-family", "--n", "9", "--t", "7")
    assert code == 0 and from_graph6(out.strip()) == build_g_family(9, 7)
    assert "G2(9)" in err
    code, out, _ = run(capsys, "family", "sharpness", "--k", "2")
    assert from_graph6(out.strip()) == sharpness_graph(2)
    code, out, err = run(capsys, "family", "alpha-sharpness", "--k", "2")
    assert code == 0 and from_graph6(out.strip()).n == 10


def test_enumerate(capsys):
    code, out, err = run(capsys, "enumerate", "--n", "5")
    assert code == 0 and len(out.split()) == 21 and "21 graphs" in err
    code, out, _ = run(capsys, "enumerate", "--n", "4", "--all")
    assert len(out.split()) == 11


def test_verify_and_figures(capsys, tmp_path):
    out_file = tmp_path / "recs.jsonl"
    code, _, err = run(
        capsys, "verify", "theorem1", "--n-max", "7", "--out", str(out_file), "--figures", str(tmp_path)
    )
    assert code == 0 and "verdict verified" in err
    recs = jsonl(out_file.read_text())
    assert len(recs) == 9 and {r["status"] for r in recs} == {"exception-family"}
    png = tmp_path / "theorem1-statuses.png"
    assert png.read_bytes()[:4] == b"\x89PNG"


def test_verify_from_file_with_checkpoint(capsys, tmp_path):
    src = tmp_path / "in.g6"
    src.write_text(PETERSEN + "\n" + to_graph6(sharpness_graph(2)) + "\n")
    cp = tmp_path / "cp.json"
    code, out, _ = run(capsys, "verify", "kouider", "--source", str(src), "--verbose", "--checkpoint", str(cp))
    assert code == 0 and len(jsonl(out)) == 2 and cp.exists()


def test_verify_budget_exhaustion_exits_inconclusive(capsys, tmp_path):
    src = tmp_path / "in.g6"
    src.write_text(PETERSEN + "\n")
    code, out, err = run(capsys, "verify", "chvatal-erdos", "--source", str(src), "--budget", "2")
    assert code == 2 and "inconclusive" in err
    assert jsonl(out)[0]["status"] == "skipped-budget"


def test_check_sharpness(capsys, tmp_path):
    code, out, err = run(capsys, "check-sharpness", "--k-max", "2", "--figures", str(tmp_path))
    assert code == 0 and len(jsonl(out)) == 4 and "FAILED" not in err
    assert (tmp_path / "sharpness.png").exists()
    code, _, _ = run(capsys, "check-sharpness", "--k-max", "1", "--budget", "1")
    assert code == 2


def test_budget_on_single_commands(capsys):
    code, _, err = run(capsys, "two-factor", "--max-components", "1", "--budget", "3", PETERSEN)
    assert code == 2 and "inconclusive" in err


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["bogus"],
        ["invariants"],
        ["invariants", "C~~"],
        ["family", "g-family", "--n", "4", "--t", "1"],
        ["family", "sharpness", "--k", "0"],
        ["enumerate", "--n", "11"],
        ["verify", "theorem1"],
        ["verify", "theorem1", "--n-max", "12"],
        ["verify", "theorem1", "--source", "/nonexistent/file.g6"],
        ["two-factor", "--max-components", "0", PETERSEN],
        ["extract", "A_"],
        ["--log-level", "LOUD", "invariants", PETERSEN],
    ],
)
def test_usage_errors_exit_3(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 3, err


def test_help_exits_0(capsys):
    code, out, _ = run(capsys, "--help")
    assert code == 0 and "verify" in out
