"""Acceptance gate: fourteen exact criteria, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v`` or directly as a script.
Every comparison is exact; the time budget is part of each criterion.
"""
import subprocess
import sys
import time
from fractions import Fraction
from math import comb

import pytest

from singpoly.cli import main as cli_main
from singpoly.dunkl import DunklContext, alternating, dunkl, euler_dunkl
from singpoly.krawtchouk import q_poly
from singpoly.polyring import Permutation, permute
from singpoly.singular import family_half, family_n0, family_nn, is_singular, module_rank
from singpoly.suites import RunConfig, run_case, run_suite

HALF = Fraction(1, 2)


class CriterionFailed(AssertionError):
    pass


def require(cond, why):
    if not cond:
        raise CriterionFailed(why)


def suite_clean(suite, config, checks=None):
    """Run a suite; every selected case must pass (no skips at generic kappa)."""
    report = run_suite(suite, config)
    picked = [o for o in report.outcomes if checks is None or o.check in checks]
    bad = [o for o in picked if o.status != "pass"]
    require(picked, f"{suite}: no cases selected")
    if bad:
        raise CriterionFailed(f"{suite}: {bad[0].name} {bad[0].status}: {bad[0].detail}")
    return len(picked)


def c01_commutativity():
    n = 0
    for N in (3, 4, 5):
        cfg = RunConfig(N=N, max_degree=5, seed=1)
        for idx in range(100):
            out = run_case(("commute", "commute", (idx,)), cfg)
            require(out.status == "pass", f"N={N} f#{idx}: {out.detail}")
            n += 1
    return f"{n} polynomials, degree <= 5"


def c02_recurrences():
    n = sum(suite_clean("recurrences", RunConfig(N=N, m_max=6)) for N in (3, 4, 5))
    return f"{n} cases"


def c03_omega_recurrences():
    checks = {"D1", "D1-diagonal", "D2"}
    n = sum(suite_clean("dwmn", RunConfig(N=N, m_max=6), checks) for N in (3, 4, 5))
    return f"{n} cases"


def c04_values_at_ones():
    n = 0
    for N in (2, 3, 4, 5):
        n += suite_clean("val1n", RunConfig(N=N, m_max=5, samples=20), {"omega"})
    d = suite_clean("val1n", RunConfig(N=3, m_max=0, samples=20), {"dougall"})
    require(d == 20, f"{d} Dougall samples")
    return f"{n} closed-form cases, {d} Dougall tuples"


def c05_two_variables():
    n = suite_clean("n2", RunConfig(N=2, m_max=6))
    return f"{n} cases"


def c06_krawtchouk():
    n = suite_clean("krawtchouk", RunConfig(), {"properties"})
    require(n == 10, f"{n} sizes")
    return "n = 1..10"


def c07_basis_change():
    n = suite_clean("qexpand", RunConfig(N=3, max_degree=6, samples=50), {"roundtrip"})
    require(n == 50, f"{n} combinations")
    return "50 combinations at 3 kappa values"


def c08_even_odd_patterns():
    n = suite_clean("krawtchouk", RunConfig(), {"prop-even", "prop-odd"})
    return f"{n} (n, i) pairs"


def c09_ab_closed_forms():
    n = suite_clean("krawtchouk", RunConfig(), {"ab-closed"})
    return f"{n} (l, n) pairs"


def c10_q_vanishing():
    count = 0
    for N, l in ((3, 0), (3, 1), (5, 0)):
        ctx = DunklContext(N, -l - HALF)
        top = N * (2 * l + 1)
        for n in range(2 * l + 1):
            for d in (top - 1, top):
                require(q_poly(d - n, n, ctx).is_zero(), f"q_({d - n},{n}) != 0 at N={N}, l={l}")
                count += 1
    return f"{count} vanishing q_mn"


def c11_half_family():
    for l, m in ((0, 1), (1, 1), (0, 2)):
        cert = family_half(l, m)
        f = cert.polynomial
        ctx = DunklContext(cert.N, cert.kappa)
        require(not f.is_zero(), f"half({l},{m}) is zero")
        for i in range(1, cert.N + 1):
            require(dunkl(i, f, ctx).is_zero(), f"half({l},{m}): D_{i} f != 0")
        t12 = permute(Permutation.transposition(1, 2, cert.N), f)
        require((f + t12).is_zero(), f"half({l},{m}): (1+(1,2)) f != 0")
        require(euler_dunkl(f, ctx).is_zero(), f"half({l},{m}): Euler eigenvalue not 0")
    a3 = alternating(3).specialize(-HALF)
    require(family_half(0, 1).polynomial.is_proportional(a3) is not None, "half(0,1) is not a multiple of a_3")
    cert = family_half(0, 2)
    rank = module_rank(cert.polynomial, DunklContext(cert.N, cert.kappa)).rank
    require(rank == comb(4, 2), f"rank {rank}")
    return "3 instances, rank 6 at N=5"


def _cli_code(*argv):
    import contextlib
    import io

    with contextlib.redirect_stdout(io.StringIO()), contextlib.redirect_stderr(io.StringIO()):
        return cli_main(list(argv))


def c12_families():
    for n, N in ((1, 2), (2, 3), (1, 3), (3, 4)):
        cert = family_n0(n, N)
        require(cert.verdict.singular and cert.passed, f"n0({n},{N}) not certified")
    for n, N in ((1, 4), (1, 5), (3, 5)):
        cert = family_nn(n, N)
        require(cert.verdict.singular and cert.passed, f"nn({n},{N}) not certified")
    require(_cli_code("family", "n0", "3", "3") == 3, "n0(3,3) not rejected")
    require(_cli_code("family", "nn", "2", "5") == 3, "nn(2,5) not rejected")
    return "7 certified, 2 rejected"


def c13_alternating():
    for N, l in ((3, 0), (3, 1), (4, 0)):
        a = alternating(N, 2 * l + 1)
        require(is_singular(a, DunklContext(N, -l - HALF)).singular, f"a_{N}^{2 * l + 1} not singular")
        v = is_singular(a, DunklContext(N, 1))
        require(not v.singular and sorted(v.residuals) == list(range(1, N + 1)), f"N={N}: residuals at kappa=1")
    return "3 powers"


def c14_determinism():
    cmd = [sys.executable, "-m", "singpoly", "verify", "all", "--seed", "7"]
    runs = [subprocess.run(cmd, capture_output=True, check=False) for _ in range(2)]
    require(all(r.returncode == 0 for r in runs), "verify all did not pass")
    require(runs[0].stdout == runs[1].stdout, "reports differ")
    return f"{len(runs[0].stdout)} identical bytes"


CRITERIA = [
    (1, "commutativity", c01_commutativity, 60),
    (2, "p recurrences", c02_recurrences, 120),
    (3, "D_1, D_2 on omega", c03_omega_recurrences, 120),
    (4, "values at 1^N and Dougall", c04_values_at_ones, 60),
    (5, "two-variable case", c05_two_variables, 30),
    (6, "Krawtchouk properties", c06_krawtchouk, 10),
    (7, "p to q basis change", c07_basis_change, 30),
    (8, "q-coefficient vanishing patterns", c08_even_odd_patterns, 60),
    (9, "A/B closed forms", c09_ab_closed_forms, 10),
    (10, "q_mn vanishing", c10_q_vanishing, 120),
    (11, "half-integer family", c11_half_family, 300),
    (12, "n0 and nn families", c12_families, 60),
    (13, "alternating powers", c13_alternating, 60),
    (14, "determinism", c14_determinism, 300),
]


def evaluate_criterion(number, title, fn, budget):
    start = time.perf_counter()
    try:
        detail = fn()
        ok = True
    except CriterionFailed as e:
        detail, ok = str(e), False
    elapsed = time.perf_counter() - start
    if ok and elapsed > budget:
        ok, detail = False, f"{detail}; over the {budget}s budget"
    line = f"{'PASS' if ok else 'FAIL'} criterion {number:2d}: {title} ({elapsed:.1f}s of {budget}s) {detail}"
    return ok, line


@pytest.mark.parametrize("number,title,fn,budget", CRITERIA, ids=[f"c{c[0]:02d}" for c in CRITERIA])
def test_criterion(capsys, number, title, fn, budget):
    ok, line = evaluate_criterion(number, title, fn, budget)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [evaluate_criterion(*c) for c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
