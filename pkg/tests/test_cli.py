import io
import json
from pathlib import Path

import jsonschema
import pytest

from kwcheck import cli

SCHEMA = json.loads((Path(__file__).resolve().parents[1] / "docs" / "report_schema.json").read_text())


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(argv, out, err)
    return code, out.getvalue(), err.getvalue()


def reports(text):
    return [json.loads(line) for line in text.splitlines()]


@pytest.fixture(scope="module")
def quick():
    return run(["suite", "--profile", "quick"])


def test_quick_suite_passes(quick):
    code, out, err = quick
    assert code == 0, err
    reps = reports(out)
    assert len(reps) == len(cli.suite_tasks("quick"))
    assert all(r["status"] == "pass" for r in reps)
    assert "summary:" in err


def test_reports_match_schema(quick):
    for r in reports(quick[1]):
        jsonschema.validate(r, SCHEMA)
    _, out, _ = run(["--timing", "verify", "prop-exp", "--p", "3"])
    rep, = reports(out)
    jsonschema.validate(rep, SCHEMA)
    assert rep["timing_ms"] >= 0


def test_output_is_canonical_json(quick):
    for line in quick[1].splitlines():
        assert line == json.dumps(json.loads(line), sort_keys=True, separators=(",", ":"))


def test_determinism_across_runs_and_jobs(quick):
    again = run(["suite", "--profile", "quick"])
    parallel = run(["--jobs", "2", "suite", "--profile", "quick"])
    assert quick[1] == again[1] == parallel[1]


def test_single_commands():
    code, out, _ = run(["verify", "prop-exp", "--p", "3"])
    rep, = reports(out)
    assert code == 0 and rep["witness"]["survivors"] == [[0, 0], [1, 0], [2, 0]]
    code, out, _ = run(["verify", "prop-pex2", "--bound", "10000"])
    assert code == 0 and reports(out)[0]["witness"]["route_a"] == [-2, -1, 2]
    code, out, _ = run(["subfield", "--n", "9", "--subgroup", "1,8"])
    rep, = reports(out)
    assert code == 0 and rep["witness"]["minimal_polynomial"] == [1, -3, 0, 1]
    code, out, _ = run(["verify", "gauss-sum", "--p", "3", "--q", "7"])
    assert code == 0
    code, out, _ = run(["classgroup", "--p", "5"])
    assert code == 0 and reports(out)[0]["witness"]["invariants"] == []


@pytest.mark.parametrize(
    "argv",
    [
        ["frobnicate"],
        [],
        ["verify", "prop-exp"],
        ["subfield", "--n", "8", "--subgroup", "1,x"],
        ["--jobs", "0", "suite"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    assert cli.run(argv) == 2


def test_invalid_parameters_give_usage_reports():
    code, out, _ = run(["verify", "prop-exp", "--p", "11"])
    rep, = reports(out)
    assert code == 2 and rep["status"] == "usage" and rep["witness"]["error"]
    jsonschema.validate(rep, SCHEMA)
    code, _, _ = run(["subfield", "--n", "10", "--subgroup", "1"])
    assert code == 2


def test_internal_error_exits_3(monkeypatch):
    def boom(**kwargs):
        raise RuntimeError("injected")

    monkeypatch.setitem(cli.CHECKS, "prop-exp", boom)
    code, out, err = run(["verify", "prop-exp", "--p", "3"])
    rep, = reports(out)
    assert code == 3 and rep["status"] == "error" and "injected" in rep["witness"]["error"]
    jsonschema.validate(rep, SCHEMA)


def test_failure_exits_1(monkeypatch):
    monkeypatch.setitem(cli.CHECKS, "prop-exp", lambda **kw: ("fail", {"reason": "injected"}))
    assert run(["verify", "prop-exp", "--p", "3"])[0] == 1


# mutation smoke tests: a single injected arithmetic fault must surface as a fail


def _fails(argv):
    code, out, _ = run(argv)
    bad = [r for r in reports(out) if r["status"] == "fail"]
    return code, bad


def test_mutation_wrong_stickelberger_element(monkeypatch):
    from kwcheck import stick

    def wrong(p):
        return stick.GroupRingElement.from_dict(p, {a: a for a in range(1, p)})

    monkeypatch.setattr(stick, "stickelberger_element", wrong)
    code, bad = _fails(["verify", "gauss-sum", "--p", "5", "--q", "11"])
    assert code == 1 and bad and not bad[0]["witness"]["checks"]["ideal_equals_theta_image"]


def test_mutation_broken_pth_roots(monkeypatch):
    from kwcheck import kummer

    monkeypatch.setattr(kummer, "pth_power_root", lambda x, p, **kw: None)
    code, bad = _fails(["suite", "--profile", "quick"])
    assert code == 1 and {r["check"] for r in bad} >= {"prop-exp"}
    assert all(r["witness"] for r in bad)


def test_mutation_sign_dropped_in_squarefree_part(monkeypatch):
    from kwcheck import lattice

    real = lattice._squarefree_part
    monkeypatch.setattr(lattice, "_squarefree_part", lambda v: abs(real(v)))
    code, bad = _fails(["verify", "prop-pex2", "--bound", "10000"])
    assert code == 1 and bad[0]["witness"]["route_b"] != [-2, -1, 2]


def test_mutation_off_by_one_minus_class_number(monkeypatch):
    from kwcheck import stick

    real = stick.minus_class_number
    monkeypatch.setattr(stick, "minus_class_number", lambda p: real(p) + (p == 7))
    code, bad = _fails(["classgroup", "--p", "7", "--effort", "1"])
    assert code == 1
    assert bad[0]["witness"]["relation_lattice_order"] == 1 and bad[0]["witness"]["expected_order"] == 2


def test_exhausted_search_is_undecided():
    # one round over a small factor base at p = 23 stops short of full rank
    code, out, _ = run(["classgroup", "--p", "23", "--factor-base", "50", "--effort", "1"])
    rep, = reports(out)
    assert code == 1 and rep["status"] == "undecided"
