from fractions import Fraction

import pytest

from singpoly import suites
from singpoly.suites import SUITES, RunConfig, cases, run_case, run_suite

SMALL = RunConfig(N=3, m_max=3, samples=3)


@pytest.mark.parametrize("suite", SUITES)
def test_suite_passes_small_generic(suite):
    report = run_suite(suite, SMALL)
    assert report.passed, report.to_text()
    assert report.counts()["pass"] > 0


@pytest.mark.parametrize("kappa", [Fraction(-1, 2), Fraction(2, 3), Fraction(-1)])
@pytest.mark.parametrize("suite", ["commute", "recurrences", "dwmn", "val1n", "n2"])
def test_suite_passes_specialized(suite, kappa):
    report = run_suite(suite, RunConfig(N=4, kappa=kappa, m_max=3, samples=2, max_degree=4))
    assert report.passed, report.to_text()


def test_integer_kappa_skips_poles():
    report = run_suite("dwmn", RunConfig(N=3, kappa=Fraction(-1), m_max=3))
    c = report.counts()
    assert c["fail"] == 0 and c["skip"] > 0


def test_cases_are_sorted_and_unique():
    report = run_suite("val1n", SMALL)
    keys = [o.key for o in report.outcomes]
    assert keys == sorted(set(keys))


def test_all_concatenates_suites():
    total = sum(len(cases(s, SMALL)) for s in SUITES)
    assert len(cases("all", SMALL)) == total
    with pytest.raises(ValueError):
        cases("nope", SMALL)


def test_q2z_lists_each_case():
    report = run_suite("q2z", RunConfig(N=3))
    names = [o.name for o in report.outcomes]
    assert names and all(n.startswith("q2z/vanish/") for n in names)
    text = report.to_text()
    for n in names:
        assert n in text


def test_report_determinism():
    cfg = RunConfig(N=3, seed=7, m_max=2, samples=2)
    a = run_suite("commute", cfg).to_text()
    b = run_suite("commute", cfg).to_text()
    assert a == b
    assert "seed=7" in a


def test_parallel_matches_serial():
    cfg = RunConfig(N=3, seed=3, m_max=2, samples=2)
    serial = run_suite("val1n", cfg).to_text()
    parallel = run_suite("val1n", RunConfig(N=3, seed=3, m_max=2, samples=2, jobs=2)).to_text()
    assert serial == parallel


def test_negative_control_reports_counterexample(monkeypatch):
    real = suites.omega_at_ones
    monkeypatch.setattr(suites, "omega_at_ones", lambda m, n, ctx: real(m, n, ctx) + (m == 2))
    report = run_suite("val1n", SMALL)
    assert not report.passed
    bad = report.first_failure
    assert bad.check == "omega" and bad.params[0] == 2
    assert bad.counterexample["case"] == bad.name
    text = report.to_text()
    assert "FAIL val1n/omega/2" in text
    assert "first counterexample:" in text
    assert report.to_json()["counterexample"] == bad.counterexample


def test_negative_control_polynomial_witness(monkeypatch):
    real = suites.dunkl

    def broken(i, f, ctx):
        # multiplication by x_1 does not commute with the other operators
        out = real(i, f, ctx)
        return out + f.times_variable(1) if i == 1 else out

    monkeypatch.setattr(suites, "dunkl", broken)
    outcome = run_case(("commute", "commute", (0,)), RunConfig(N=3, seed=0))
    assert outcome.status == "fail"
    assert "nvars" in outcome.counterexample.get("difference", outcome.counterexample.get("f", {}))


def test_skip_on_pole():
    cfg = RunConfig(N=3, kappa=Fraction(-1))
    outcome = run_case(("val1n", "omega", (1, 1)), cfg)
    assert outcome.status == "skip"
