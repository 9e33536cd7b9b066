import json

import pytest

from dispheres.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_reach_unreachable(capsys):
    code, out = run(capsys, "reach", "0,1/2,1/2", "1,1/2,1/2")
    data = json.loads(out)
    assert code == 1
    assert data["schema"] == "dispheres/1"
    assert data["reachable"] is False
    assert data["witness"]["code"] == "NOT_REACHABLE"
    assert (data["witness"]["j"], data["witness"]["k"]) == (0, 0)


def test_reach_reachable(capsys):
    code, out = run(capsys, "reach", "0,0,1/2", "1,1,1/2")
    assert code == 0 and json.loads(out)["reachable"] is True


def test_reach_same_point(capsys):
    code, out = run(capsys, "reach", "1/3,0,1", "1/3,0,1")
    assert code == 0 and json.loads(out)["reachable"] is True


@pytest.mark.parametrize("argv", [
    ("reach", "0,0.5", "1,1"),
    ("reach", "0,1/2", "1,1,1"),
    ("reach", "0,abc", "1,1"),
    ("reach", "0,3/2", "1,1"),
    ("reach", "0,1/2"),
])
def test_malformed_input(capsys, argv):
    code, _ = run(capsys, *argv)
    assert code == 2


def test_not_on_boundary(capsys):
    code, out = run(capsys, "reach", "1/2,1/2", "1,1")
    assert code == 1
    assert json.loads(out)["witness"]["code"] == "NOT_ON_BOUNDARY"
    code, out = run(capsys, "plan", "1,0", "0,1")
    assert code == 1
    assert json.loads(out)["error"]["code"] == "NOT_ORDERED"


def test_plan_a2_route(capsys):
    code, out = run(capsys, "plan", "0,1/3,1/2", "1,1,1/2")
    data = json.loads(out)
    assert code == 0
    assert data["label"] == "A2"
    assert data["path"]["waypoints"] == [
        ["0/1", "1/3", "1/2"], ["0/1", "1/3", "1/2"], ["0/1", "1/1", "1/2"], ["1/1", "1/1", "1/2"]
    ]
    assert data["path"]["stages"] == ["0/1", "1/3", "2/3", "1/1"]


def test_plan_a1_route_with_figure(capsys):
    code, out = run(capsys, "plan", "1/3,0,1/2", "1,1,1/2", "--figure")
    data = json.loads(out)
    assert code == 0 and data["label"] == "A1"
    fig = data["figure"]
    assert fig["polyline_exact"] == [["1/3", "0/1", "1/2"], ["1/1", "0/1", "1/2"], ["1/1", "1/1", "1/2"]]
    assert fig["segment_patterns"] == ["−0−", "1−−"]
    assert len(fig["cube_edges"]) == 12


def test_plan_constant(capsys):
    code, out = run(capsys, "plan", "0,1/5,1/5", "0,1/5,1/5")
    data = json.loads(out)
    assert code == 0 and data["label"] == "A1"
    assert len({tuple(w) for w in data["path"]["waypoints"]}) == 1


def test_plan_unreachable(capsys):
    code, out = run(capsys, "plan", "0,1/2,1/2", "1,1/2,1/2")
    err = json.loads(out)["error"]
    assert code == 1 and err["code"] == "NOT_REACHABLE" and err["j"] == 0 and err["k"] == 0


def test_figure_needs_n2(capsys):
    code, _ = run(capsys, "plan", "0,0", "1,1", "--figure")
    assert code == 2


def test_classify(capsys):
    code, out = run(capsys, "classify", "0,1/3,1/2", "1,1,1/2")
    assert code == 0 and json.loads(out)["label"] == "A2"


def test_csv(capsys):
    code, out = run(capsys, "plan", "0,0", "1,1", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "label,index,stage,x0,x1"
    assert lines[1] == "A1,0,0/1,0/1,0/1"
    assert out.endswith("\n")
    code, out = run(capsys, "reach", "0,1/2,1/2", "1,1/2,1/2", "--format", "csv")
    assert out.splitlines()[1] == "false,NOT_REACHABLE,0,0"


def test_verify_n1(capsys):
    code, out = run(capsys, "verify", "--n", "1", "--m", "4", "--samples", "300")
    data = json.loads(out)
    assert code == 0 and data["passed"]
    classes = next(c for c in data["checks"] if c["name"].startswith("fiber_classes"))
    assert classes["counters"]["corner_pair"] == 2


def test_verify_n2(capsys):
    code, out = run(capsys, "verify", "--n", "2", "--m", "2", "--samples", "300")
    data = json.loads(out)
    assert code == 0 and data["passed"]
    structure = next(c for c in data["checks"] if c["name"].startswith("structure"))
    assert structure["counters"]["vertices"] == 26


def test_verify_bad_n(capsys):
    code, out = run(capsys, "verify", "--n", "0")
    assert code == 3
    assert json.loads(out)["error"]["code"] == "BAD_PARAMETER"


def test_verify_guardrails(capsys, monkeypatch):
    monkeypatch.setenv("DISPHERES_GUARDRAIL_VERTICES", "10")
    code, out = run(capsys, "verify", "--n", "2", "--m", "2", "--samples", "10")
    assert code == 3
    assert json.loads(out)["error"]["guardrail"] == "DISPHERES_GUARDRAIL_VERTICES"
    monkeypatch.delenv("DISPHERES_GUARDRAIL_VERTICES")
    monkeypatch.setenv("DISPHERES_GUARDRAIL_PATHS", "1")
    code, out = run(capsys, "verify", "--n", "1", "--m", "2", "--samples", "10")
    assert code == 3
    assert json.loads(out)["error"]["guardrail"] == "paths"


def test_verify_deterministic(capsys):
    argv = ("verify", "--n", "2", "--m", "3", "--samples", "200", "--seed", "5")
    _, first = run(capsys, *argv)
    _, second = run(capsys, *argv)
    assert first == second
    _, other = run(capsys, *argv[:-1], "6")
    assert other != first
    _, csv_out = run(capsys, *argv, "--format", "csv")
    assert csv_out.splitlines()[0] == "check,passed,counters"
