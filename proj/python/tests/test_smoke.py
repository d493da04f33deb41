import json
import os
from fractions import Fraction

import pytest

import cotton

DATA = os.environ.get("COTTON_TEST_DATA", os.path.join(os.path.dirname(__file__), "..", "..", "tests", "data"))


def test_model_curvature_exact():
    g = cotton.Metric.model("t")
    assert g.coords == ["t", "s", "x"]
    r = cotton.curvature(g, [0, 0, 2])
    assert r["ricci"][0][0] == Fraction(-6)
    assert r["scalar"] == 0
    assert r["cotton"][0][2][0] == 3
    assert r["cotton"][2][0][0] == -3
    assert all(v == 0 for a in r["nabla_cotton"] for b in a for c in b for v in c)


def test_float_mode_matches_exact():
    g = cotton.Metric.model("t^2 - 1")
    exact = cotton.curvature(g, ["1/2", 3, "5/4"])
    approx = cotton.curvature(g, [0.5, 3, 1.25], mode="float")
    assert isinstance(approx["scalar"], float)
    for i in range(3):
        for j in range(3):
            assert approx["ricci"][i][j] == pytest.approx(float(exact["ricci"][i][j]), abs=1e-12)


def test_spec_round_trip():
    text = open(os.path.join(DATA, "model.metric")).read()
    g = cotton.Metric.from_spec(text)
    assert g.component(0, 0) == "x^3 + t*x"
    assert cotton.Metric.from_spec(g.to_spec()).to_spec() == g.to_spec()


def test_classify_model_and_control():
    pts = [[k, 2 * k - 3, Fraction(k, 3) - 1] for k in range(6)]
    assert cotton.classify(cotton.Metric.model("t"), pts)["verdict"] == "ECS"
    quartic = cotton.Metric.from_components(["t", "s", "x"], {"t,t": "x^4", "t,s": "1/2", "x,x": "1"})
    result = cotton.classify(quartic, pts)
    assert result["verdict"] == "NonParallel"
    assert result["witness"] is not None


def test_decompose_rank_one():
    ip = [[1, 0, 0], [0, 1, 0], [0, 0, -1]]
    u, v = (0, 1, 1), (1, 0, 0)
    lower = lambda w: (w[0], w[1], -w[2])
    ul, vl = lower(u), lower(v)
    t = [[[(ul[i] * vl[j] - vl[i] * ul[j]) * ul[k] for k in range(3)] for j in range(3)] for i in range(3)]
    d = cotton.decompose(ip, t)
    assert d["kind"] == "RankOneKernel"
    assert d["kernel"] == [(0, 1, 1)]
    assert d["residual"] < 1e-12


def test_errors_map_to_python_exceptions():
    with pytest.raises(cotton.InputError):
        cotton.Metric.model("s")
    with pytest.raises(cotton.PreconditionError):
        cotton.decompose([[1, 0, 0], [0, 1, 0], [0, 0, -1]], [[[1] * 3] * 3] * 3)
    degenerate = cotton.Metric.from_components(["x", "y", "z"], {"x,x": "x", "y,y": "1", "z,z": "1"})
    with pytest.raises(cotton.PreconditionError):
        cotton.curvature(degenerate, [0, 1, 1])
    assert issubclass(cotton.InputError, cotton.CottonError)


def test_verify_model():
    checks = cotton.verify_model("t/2 + 1/3", [[1, 2, 3], ["1/2", 0, -2]])
    assert len(checks) == 7
    assert all(passed for _, passed, _ in checks)


def test_cli_json_round_trip():
    code, out, err = cotton.run_cli(["verify-model", "--a", "t", "--report", "json"])
    assert code == 0, err
    assert json.dumps(json.loads(out), indent=2, sort_keys=True, ensure_ascii=False) + "\n" == out


def test_cli_exit_codes():
    assert cotton.run_cli(["decompose", os.path.join(DATA, "not_cotton.tensor")])[0] == 3
    assert cotton.run_cli(["curvature", os.path.join(DATA, "corrupt.metric"), "--at", "t=0,s=0,x=1"])[0] == 2


def test_selftest_float():
    results = cotton.selftest("float")
    assert len(results) == 12
    assert all(r["passed"] for r in results), [r for r in results if not r["passed"]]
