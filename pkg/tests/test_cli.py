"""Driver behavior: subcommand output shapes, exit codes, and report
determinism."""

import json
from pathlib import Path

import pytest

from equiblow import TheoremCheckError, cli

CORPUS = Path(cli.__file__).parent / "corpus"


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def report(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


def test_blowup_reports_charts_and_verdicts(capsys):
    rep = report(capsys, "blowup", str(CORPUS / "e2.kb"))
    names = [c["name"] for c in rep["charts"]]
    assert names == ["chart_x", "chart_y"]
    cx = rep["charts"][0]
    assert cx["ideal_gb"] == ["z", "xi_x^2*T_y"]
    assert cx["unstable_gb"] == ["T_y"]
    assert cx["checks"]["coinc"] is True
    assert rep["ledger"]["coinc_all"] is True
    assert rep["version"]


def test_blowup_chart_filter(capsys):
    rep = report(capsys, "blowup", str(CORPUS / "e2.kb"), "--chart", "chart_y")
    assert [c["name"] for c in rep["charts"]] == ["chart_y"]


def test_blowup_unknown_chart_is_exit_2(capsys):
    code, _, err = run(capsys, "blowup", str(CORPUS / "e2.kb"), "--chart", "nope")
    assert code == 2
    assert "chart" in err


def test_blowup_trivial_action_reports_dense(capsys):
    rep = report(capsys, "blowup", str(CORPUS / "trivial.kb"))
    assert rep["charts"] == []
    assert rep["ledger"]["dense"] is True


def test_blowup_full_runs_the_iterated_driver(capsys):
    rep = report(capsys, "blowup", str(CORPUS / "e1.kb"), "--full")
    assert rep["ledger"]["u_hat_empty"] is True
    assert len(rep["ledger"]["stages"]) == 1
    assert rep["ledger"]["stages"][0]["charts"][0]["ideal_gb"] == ["1"]


def test_crit_reports_weak_model_checks_and_dims(capsys):
    rep = report(capsys, "crit", str(CORPUS / "square.kb"), "--point", "0,0")
    led = rep["ledger"]
    assert led["passed"] is True
    assert led["cohomology_dims"] == [1, 2, 2, 1]
    assert led["reduced_obstruction_dim"] == 2


def test_semistable_point_verdicts(capsys):
    rep = report(
        capsys, "semistable", str(CORPUS / "e2.kb"), "--chart", "chart_x",
        "--point", "1,0,0",
    )
    assert rep["ledger"]["semistable"] is False
    assert rep["ledger"]["direction"] == [1]


def test_obstruction_subcommand_cubic(capsys, tmp_path):
    src = tmp_path / "cubic.kb"
    src.write_text(
        'variables = [x]\nweights = []\npotential = "1/3*x^3"\nbasepoint = [0]\n'
    )
    rep = report(capsys, "obstruction", str(src), "--direction", "1", "--ext-order", "2")
    assert rep["ledger"]["vector"] == ["1"]
    assert rep["ledger"]["liftable"] is False


def test_omega_verify_subcommand(capsys):
    rep = report(capsys, "omega-verify", str(CORPUS / "square_pair.kb"))
    assert rep["ledger"]["passed"] is True


def test_fiber_check_subcommand(capsys):
    rep = report(capsys, "fiber-check", str(CORPUS / "family.kb"), "--at", "-2")
    assert rep["ledger"]["commutes"] is True
    assert rep["ledger"]["charts"] == {"chart_x": True, "chart_y": True}


def test_independence_subcommand(capsys):
    rep = report(capsys, "independence", str(CORPUS / "e2aux.kb"), "--aux", "u")
    assert rep["ledger"]["independent"] is True


def test_missing_file_is_exit_2(capsys):
    code, _, err = run(capsys, "blowup", "/nonexistent/input.kb")
    assert code == 2
    assert err


def test_budget_flag_exhaustion_is_exit_4(capsys):
    code, _, err = run(capsys, "blowup", str(CORPUS / "e2.kb"), "--budget", "1")
    assert code == 4
    assert "budget" in err.lower() or "cap" in err


def test_budget_env_exhaustion_is_exit_4(capsys, monkeypatch):
    monkeypatch.setenv("EQUIBLOW_BUDGET", "1")
    code, _, _ = run(capsys, "blowup", str(CORPUS / "e2.kb"))
    assert code == 4


def test_bad_budget_env_is_exit_2(capsys, monkeypatch):
    monkeypatch.setenv("EQUIBLOW_BUDGET", "many")
    code, _, _ = run(capsys, "blowup", str(CORPUS / "e2.kb"))
    assert code == 2


def test_precondition_violation_is_exit_3(capsys, tmp_path):
    # fiber-check on a file without a base parameter
    src = tmp_path / "nobase.kb"
    src.write_text('variables = [x, y]\nweights = [[1, -1]]\npotential = "x*y"\n')
    code, _, err = run(capsys, "fiber-check", str(src))
    assert code == 3


def test_theorem_failure_is_exit_5(capsys, monkeypatch):
    def explode(*a, **kw):
        raise TheoremCheckError("synthetic failure for the exit-code contract")

    monkeypatch.setattr(cli, "verify_coinc", explode)
    code, _, err = run(capsys, "blowup", str(CORPUS / "e2.kb"))
    assert code == 5
    assert "THEOREM" in err


def test_obstruction_disagreement_is_exit_5(capsys, monkeypatch, tmp_path):
    src = tmp_path / "cubic.kb"
    src.write_text(
        'variables = [x]\nweights = []\npotential = "1/3*x^3"\nbasepoint = [0]\n'
    )
    monkeypatch.setattr(cli, "find_lift", lambda *a, **kw: object())
    code, _, _ = run(
        capsys, "obstruction", str(src), "--direction", "1", "--ext-order", "2"
    )
    assert code == 5


def test_json_flag_writes_the_same_bytes(capsys, tmp_path):
    out1 = tmp_path / "a.json"
    out2 = tmp_path / "b.json"
    code1, stdout1, _ = run(capsys, "corpus", "--json", str(out1))
    code2, stdout2, _ = run(capsys, "corpus", "--json", str(out2))
    assert code1 == code2 == 0
    assert out1.read_bytes() == out2.read_bytes()
    assert stdout1 == stdout2
    assert out1.read_text() == stdout1


def test_corpus_checks_all_pass(capsys):
    rep = report(capsys, "corpus")
    assert rep["ledger"]["failed"] == []
    names = [c["name"] for c in rep["ledger"]["checks"]]
    assert "coinc:e2.kb" in names
    assert "omega:square_pair.kb" in names


def test_corpus_failure_is_exit_1(capsys, monkeypatch):
    def fail_coinc(model, center, budget=None):
        from equiblow import make_charts

        charts = make_charts(model.ring, model.weights, center)
        return {c.name: False for c in charts}

    monkeypatch.setattr(cli, "verify_coinc", fail_coinc)
    code, out, _ = run(capsys, "corpus")
    assert code == 1
    rep = json.loads(out)
    assert rep["ledger"]["failed"]
