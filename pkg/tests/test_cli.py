import json

import pytest
from click.testing import CliRunner

from picardforms.cli import main


@pytest.fixture
def run(tmp_path, monkeypatch):
    monkeypatch.setenv("PM_CACHE", str(tmp_path / "cache"))
    runner = CliRunner()

    def invoke(*args):
        return runner.invoke(main, list(args))

    return invoke


def test_fj_json_carries_depth(run):
    r = run("fj", "--form", "zeta", "--qv", "3", "--u", "10", "--format", "json")
    assert r.exit_code == 0, r.output
    d = json.loads(r.output)
    assert d["depth_certified"] == {"qv_thirds": 9, "u": 10}
    assert d["weight"] == [0, 6]


def test_fj_cache_hit_is_byte_identical(run):
    a = run("fj", "--form", "E11", "--qv", "2", "--u", "8", "--format", "json").output
    b = run("fj", "--form", "E11", "--qv", "2", "--u", "8", "--format", "json").output
    assert a == b


def test_fj_unknown_form(run):
    r = run("fj", "--form", "chi99")
    assert r.exit_code == 2
    assert "unknown form" in r.output


def test_nu(run):
    r = run("nu", "--expr", "J011", "--qv", "2", "--u", "8")
    assert r.exit_code == 0
    assert "orders along T1: [0, 1]" in r.output


@pytest.mark.parametrize("expr", ["J999", "J140 + J200", "J140 +"])
def test_nu_usage_errors(run, expr):
    assert run("nu", "--expr", expr).exit_code == 2


def test_orders_expr(run):
    r = run("orders", "--expr", "J104*J140", "--format", "json")
    assert r.exit_code == 0
    assert json.loads(r.output)["orders"] == [4, 5, 0, 1, 2]


def test_orders_needs_one_option(run):
    assert run("orders").exit_code == 2


def test_restrict(run):
    r = run("restrict", "--form", "E6", "--rows", "1")
    assert r.exit_code == 0
    assert "theta^6 - 36*theta^3*psi^3 + 972*psi^6" in r.output


def test_verify_pass_and_fail(run):
    assert run("verify", "--suite", "covariant-relations").exit_code == 0
    r = run("verify", "--suite", "taylor-blocks", "--format", "json")
    assert r.exit_code == 1
    failed = [c["id"] for s in json.loads(r.output)["suites"] for c in s["checks"] if c["status"] == "fail"]
    assert failed == ["c_19"]
    assert run("verify", "--suite", "nope").exit_code == 2


def test_hilbert(run):
    r = run("hilbert", "--target", "sigma42")
    assert r.exit_code == 0
    assert "t^4 + 2*t^10 + 4*t^16 + 7*t^22 + 11*t^28" in r.output
    assert run("hilbert", "--target", "nope").exit_code == 2


def test_covariant_eval(run):
    r = run("covariant", "eval", "--quartic", "1,0,0,0,1", "--linear", "0,1", "--expr", "J200", "--format", "json")
    assert r.exit_code == 0
    assert json.loads(r.output)["values"]["J200"] == ["2"]
    assert run("covariant", "eval", "--quartic", "1,2", "--linear", "0,1").exit_code == 2
    assert run("covariant", "eval", "--quartic", "1,x,0,0,1", "--linear", "0,1").exit_code == 2


def test_numeric(run):
    r = run("numeric", "--check", "theta-vanishing", "--point", "0.1,-1")
    assert r.exit_code == 0
    r = run("numeric", "--check", "E11", "--point", "0.05,-0.5")
    assert r.exit_code == 2
    r = run("numeric", "--check", "E11", "--tol", "1e-30", "--format", "json")
    assert r.exit_code == 1 and json.loads(r.output)["ok"] is False


def test_shallow_depths_do_not_crash(run):
    r = run("nu", "--expr", "J011", "--qv", "1", "--u", "4")
    assert r.exit_code == 0, r.output
    assert "exact below q_v^1, u^4" in r.output
    r = run("fj", "--form", "chi44", "--qv", "1", "--u", "4")
    assert r.exit_code == 0, r.output


def test_computation_failure_is_usage_error(run, monkeypatch):
    from picardforms import cli

    def boom(*a, **k):
        raise ArithmeticError("component 4 vanishes")

    monkeypatch.setattr(cli, "nu", boom)
    r = run("nu", "--expr", "J011")
    assert r.exit_code == 2
    assert "try a larger --qv or --u" in r.output
