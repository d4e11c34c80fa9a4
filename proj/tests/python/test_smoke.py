import json
import math

import pytest

import sdpfeas


def test_version():
    assert sdpfeas.__version__ == "0.1.0"


def test_false_omission_rate():
    r = sdpfeas.false_omission_rate(tp=80, fn=3, fp=5, tn=17)
    assert r["p"] == pytest.approx(0.15)
    assert r["fraction"] == "3/20"


def test_assumption_violation_is_raised():
    with pytest.raises(sdpfeas.AssumptionViolation):
        sdpfeas.false_omission_rate(tp=80, fn=0, fp=5, tn=17)


def test_worked_bound():
    r = sdpfeas.bound(100, 0.05, {"family": "constant", "lambda": 2}, 1.0)
    assert r["theorem"] == "corollary9"
    assert r["bound"] == pytest.approx(math.exp(-0.9), rel=1e-14)


def test_out_of_regime_has_no_bound():
    r = sdpfeas.bound(100, 0.05, {"family": "constant", "lambda": 6}, 1.0)
    assert r["regime"] == "OutOfRegime"
    assert r["bound"] is None


def test_tails():
    exact = sdpfeas.exact_binomial_tail(100, 0.05, 2.0)
    assert exact.value == pytest.approx(0.03708120932735521, rel=1e-13)
    a = sdpfeas.mc_tail(100, 0.05, 2.0, trials=20000, seed=5)
    b = sdpfeas.mc_tail(100, 0.05, 2.0, trials=20000, seed=5, threads=2)
    assert a == b
    assert abs(a.value - exact.value) < 4 * a.stderr


def test_hazard_functions():
    w = {"family": "weibull", "K": 2.0, "m": 1.5}
    assert sdpfeas.hazard_at(w, 4.0) == pytest.approx(16.0)
    assert sdpfeas.reliability_at(w, 1.0) == pytest.approx(math.exp(-0.8))
    with pytest.raises(sdpfeas.InvalidInput):
        sdpfeas.hazard_at({"family": "weibull", "K": -1.0, "m": 0.0}, 1.0)


def test_run_verify_report():
    cfg = {
        "outcome": {"l": 100, "p": 0.05},
        "model": {"family": "constant", "lambda": 2},
        "t": 1.0,
    }
    report = json.loads(sdpfeas.run_verify(json.dumps(cfg), seed=1, mc_trials=2000))
    assert report["summary"]["all_hold"] is True
    assert report["tool"] == "sdpfeas"


def test_run_cli_usage_error():
    code, out, err = sdpfeas.run_cli(["frobnicate"])
    assert code == 1
