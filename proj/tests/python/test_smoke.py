import json
import os
import subprocess

import pytest

import unitfrac


def test_harmonic_and_lcm():
    assert unitfrac.harmonic_exact(4) == (25, 12)
    assert unitfrac.harmonic_float(2) == 1.5
    assert unitfrac.lcm_upto(10) == 2520


def test_census_methods_agree():
    for n in (1, 6, 12, 20):
        b = unitfrac.count_bruteforce(n)
        m = unitfrac.count_mitm(n)
        s = unitfrac.count_signwalk(n)
        assert b["count_le_one"] == m["count_le_one"] == s["count_le_one"]
        assert b["count_eq_one"] == m["count_eq_one"] == s["count_eq_one"]
    assert unitfrac.count_bruteforce(6)["count_eq_one"] == 2
    assert unitfrac.count_mitm(40)["count_le_one"] == 28926586886


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        unitfrac.harmonic_exact(0)
    with pytest.raises(OverflowError):
        unitfrac.count_bruteforce(27)


def test_bounds():
    assert unitfrac.rate_function(0.0384235) <= -0.0541
    assert unitfrac.bits_per_n_asymptotic(-0.054) <= 0.93
    r = unitfrac.minimize_rate()
    assert r.f_star <= -0.0541 and r.bracket_lo <= 0.0384235 <= r.bracket_hi
    p = unitfrac.canonical_params(30, 2)
    lemma = unitfrac.tail_bound_log2(p, unitfrac.BoundVariant.Lemma)
    opt = unitfrac.optimized_bound_log2(30, 2)
    assert lemma.log2_prob_bound == pytest.approx(opt.log2_prob_bound, rel=1e-12)
    best = unitfrac.best_finite_bound(40)
    assert 2 ** best.log2_count_bound >= 28926586886
    rows, crossing = unitfrac.threshold_report(200)
    assert rows[0][0] == 19 and crossing is not None


def test_monte_carlo():
    e = unitfrac.estimate_tail(12, unitfrac.harmonic_float(12) - 2, 200000, 1)
    exact = 921 / 4096
    assert abs(e.p_hat - exact) <= 1.5 * e.ci_halfwidth
    mean, var = unitfrac.moment_check(1, 10000, 2)
    assert var == pytest.approx(1.0, rel=1e-2)


def test_run_cli_in_process():
    status, out, err = unitfrac.run_cli(["census", "6", "--format", "json"])
    assert status == 0 and err == ""
    assert json.loads(out)["rows"][0]["count_eq_one"] == "2"
    assert unitfrac.run_cli(["census", "0"])[0] == 1


@pytest.mark.skipif("UNITFRAC_CLI" not in os.environ, reason="CLI path not provided")
def test_cli_binary():
    cli = os.environ["UNITFRAC_CLI"]
    out = subprocess.run([cli, "rate", "0.0384235", "--format", "csv"], capture_output=True, text=True, check=True)
    header, row = out.stdout.strip().splitlines()
    assert header == "c,f,bits_per_n"
    assert float(row.split(",")[1]) <= -0.0541
    assert subprocess.run([cli, "census", "0"], capture_output=True).returncode == 1
    assert subprocess.run([cli, "census"], capture_output=True).returncode == 2
