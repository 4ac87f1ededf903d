"""Property suites behind ``singpoly verify``.

Every suite expands into a list of independent cases.  A case is a plain
tuple ``(suite, check, params)`` so it can be shipped to a worker process;
its randomness comes from a generator seeded by the run seed and the case
key, which keeps reports identical whatever the scheduling.
"""
from __future__ import annotations

import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, replace
from fractions import Fraction
from math import factorial
from typing import Optional

from singpoly.dunkl import DunklContext, Partition, alternating, cherednik, dunkl, euler_dunkl, mu
from singpoly.errors import DivisibilityError, GcdError, PoleError, SingpolyError
from singpoly.field import Scalar, binomial, format_rational, hyp_terminating, pochhammer
from singpoly.jackbasis import f_poly, omega, omega_at_ones, p_at_ones, p_poly, restrict_to_2
from singpoly.krawtchouk import (
    ab_closed,
    ab_series,
    krawtchouk,
    omega_q_coeffs,
    p_to_q,
    q_poly,
)
from singpoly.polyring import (
    Permutation,
    Polynomial,
    divided_difference,
    evaluate,
    partial,
    permute,
    random_polynomial,
    to_json,
    transpose,
)
from singpoly.singular import (
    family_half,
    family_n0,
    family_nn,
    is_singular,
    module_rank,
    singular_values,
)

SUITES = ("commute", "recurrences", "dwmn", "val1n", "n2", "krawtchouk", "qexpand", "q2z", "families")

# catalogue run by the families suite
N0_CASES = ((1, 2), (2, 3), (1, 3), (3, 4))
NN_CASES = ((1, 4), (1, 5), (3, 5))
HALF_CASES = ((0, 1), (1, 1), (0, 2))
ALT_CASES = ((3, 0), (3, 1), (4, 0))
REJECT_CASES = (("n0", 3, 3), ("n0", 4, 2), ("nn", 2, 5), ("nn", 3, 7))


@dataclass(frozen=True)
class RunConfig:
    N: int = 3
    kappa: Optional[Fraction] = None
    max_degree: Optional[int] = None
    seed: int = 0
    out: str = "text"
    jobs: int = 1
    m_max: Optional[int] = None
    n_max: Optional[int] = None
    samples: Optional[int] = None
    l_max: Optional[int] = None

    @property
    def ctx(self):
        return DunklContext(self.N, self.kappa)

    @property
    def degree(self):
        if self.max_degree is not None:
            return self.max_degree
        return 4 if self.kappa is None else 6

    def label_bound(self, default):
        return self.m_max if self.m_max is not None else default

    def count(self, default):
        return self.samples if self.samples is not None else default

    def describe(self):
        k = "generic" if self.kappa is None else format_rational(self.kappa)
        return f"N={self.N} kappa={k} max-degree={self.degree} seed={self.seed}"


@dataclass
class Outcome:
    suite: str
    check: str
    params: tuple
    status: str  # "pass", "fail" or "skip"
    detail: str = ""
    counterexample: Optional[dict] = None

    @property
    def key(self):
        return (self.suite, self.check, self.params)

    @property
    def name(self):
        return "/".join([self.suite, self.check] + [str(p) for p in self.params])


class _Fail(Exception):
    def __init__(self, detail, **witness):
        super().__init__(detail)
        self.detail = detail
        self.witness = witness


def _rng(config, suite, check, params):
    return random.Random(f"{config.seed}-{suite}-{check}-{'-'.join(map(str, params))}")


def _expect_equal(lhs, rhs, what, **inputs):
    if lhs != rhs:
        diff = lhs - rhs if isinstance(lhs, Polynomial) else None
        raise _Fail(f"{what}: sides differ", difference=diff, **inputs)


def _expect(cond, what, **inputs):
    if not cond:
        raise _Fail(what, **inputs)


def _w(m, n, ctx):
    """omega_mn, with a negative label read as the zero polynomial."""
    if m < 0 or n < 0:
        return Polynomial.zero(ctx.N)
    return omega(m, n, ctx)


def _p(m, n, ctx):
    if m < 0 or n < 0:
        return Polynomial.zero(ctx.N)
    return p_poly(m, n, ctx)


def _sample_kappa(rng, avoid=()):
    """A small non-integer rational, outside ``avoid``."""
    while True:
        k = Fraction(rng.randint(-9, 9), rng.choice((2, 3, 4, 5, 7)))
        if k.denominator > 1 and k not in avoid:
            return k


# -- commute: Dunkl operator identities ----------------------------------------

def _commute(config, idx):
    ctx = config.ctx
    f = random_polynomial(_rng(config, "commute", "commute", (idx,)), ctx.N, config.degree)
    for i in range(1, ctx.N + 1):
        for j in range(i + 1, ctx.N + 1):
            lhs = dunkl(i, dunkl(j, f, ctx), ctx)
            rhs = dunkl(j, dunkl(i, f, ctx), ctx)
            _expect_equal(lhs, rhs, f"D_{i} D_{j} != D_{j} D_{i}", f=f)
    return f"degree {f.degree()}, {len(f)} terms"


def _product_rule(config, idx):
    ctx = config.ctx
    rng = _rng(config, "commute", "product", (idx,))
    half = max(config.degree // 2, 1)
    f = ctx.coerce(random_polynomial(rng, ctx.N, half, nterms=rng.randint(1, 3)))
    g = ctx.coerce(random_polynomial(rng, ctx.N, half, nterms=rng.randint(1, 3)))
    for i in range(1, ctx.N + 1):
        rhs = f * dunkl(i, g, ctx) + partial(f, i) * g
        cross = Polynomial.zero(ctx.N)
        for j in range(1, ctx.N + 1):
            if j != i:
                cross = cross + divided_difference(f, i, j) * transpose(g, i, j)
        rhs = rhs + cross.scale(ctx.k)
        _expect_equal(dunkl(i, f * g, ctx), rhs, f"product rule for D_{i}", f=f, g=g)
    return ""


def _euler(config, idx):
    ctx = config.ctx
    f = ctx.coerce(random_polynomial(_rng(config, "commute", "euler", (idx,)), ctx.N, config.degree))
    plain = Polynomial.zero(ctx.N)
    for i in range(1, ctx.N + 1):
        plain = plain + partial(f, i).times_variable(i)
    swaps = Polynomial.zero(ctx.N)
    for i in range(1, ctx.N + 1):
        for j in range(i + 1, ctx.N + 1):
            swaps = swaps + (f - transpose(f, i, j))
    _expect_equal(euler_dunkl(f, ctx), plain + swaps.scale(ctx.k), "Euler decomposition", f=f)
    return ""


def _homogeneous(config, idx):
    ctx = config.ctx
    rng = _rng(config, "commute", "homogeneous", (idx,))
    d = rng.randint(1, config.degree)
    f = random_polynomial(rng, ctx.N, d, degree=d)
    for i in range(1, ctx.N + 1):
        g = dunkl(i, f, ctx)
        _expect(g.is_zero() or g.degrees() == [d - 1], f"D_{i} output not homogeneous of degree {d - 1}", f=f)
    return f"degree {d}"


def _alternating_identity(config, l):
    ctx = config.ctx
    a = ctx.coerce(alternating(ctx.N, 2 * l + 1))
    factor = (Scalar.coerce(ctx.k) * 2 + (2 * l + 1)) / (2 * l + 1)
    for i in range(1, ctx.N + 1):
        _expect_equal(dunkl(i, a, ctx), partial(a, i).scale(factor), f"D_{i} a_N^{2 * l + 1}")
    return f"power {2 * l + 1}"


def _commute_cases(config):
    n = config.count(20)
    out = [("commute", "commute", (i,)) for i in range(n)]
    out += [("commute", "product", (i,)) for i in range(n)]
    out += [("commute", "euler", (i,)) for i in range(n)]
    out += [("commute", "homogeneous", (i,)) for i in range(n)]
    out += [("commute", "alternating", (l,)) for l in range(2 if config.N <= 3 else 1)]
    return out


# -- recurrences for D_1 p_mn --------------------------------------------------

def _d1p_rhs(m, n, ctx):
    """Right-hand side of the D_1 p_mn recurrence (m, n >= 1)."""
    k = ctx.k
    N = ctx.N
    tail = Polynomial.zero(N)
    if m > n:
        head = p_poly(m - 1, n, ctx).scale(N * k + m)
        top = n - 1
    else:
        head = p_poly(m - 1, n, ctx).scale((N - 1) * k + m) + p_poly(n, m - 1, ctx).scale(k)
        top = m - 2  # empty when m = 1
    for i in range(top + 1):
        tail = tail + p_poly(m + n - 1 - i, i, ctx) - p_poly(i, m + n - 1 - i, ctx)
    return head + tail.scale(k)


def _recurrence_d1(config, m, n):
    ctx = config.ctx
    _expect_equal(dunkl(1, p_poly(m, n, ctx), ctx), _d1p_rhs(m, n, ctx), f"D_1 p_({m},{n})")
    return "m > n" if m > n else ("m = 1, second sum omitted" if m == 1 else "n >= m")


def _recurrence_d2(config, m, n):
    ctx = config.ctx
    rhs = transpose(_d1p_rhs(n, m, ctx), 1, 2)
    _expect_equal(dunkl(2, p_poly(m, n, ctx), ctx), rhs, f"D_2 p_({m},{n}) by label interchange")
    return ""


def _boundary(config, m, n):
    ctx = config.ctx
    p = p_poly(m, n, ctx)
    for i in range(3, ctx.N + 1):
        _expect(dunkl(i, p, ctx).is_zero(), f"D_{i} p_({m},{n}) != 0")
    if n == 0:
        _expect(dunkl(2, p, ctx).is_zero(), f"D_2 p_({m},0) != 0")
    if m == 0:
        _expect(dunkl(1, p, ctx).is_zero(), f"D_1 p_(0,{n}) != 0")
    return ""


def _recurrence_cases(config):
    b = config.label_bound(6)
    out = []
    for m in range(b + 1):
        for n in range(b + 1):
            out.append(("recurrences", "boundary", (m, n)))
            if m >= 1 and n >= 1:
                out.append(("recurrences", "D1", (m, n)))
                out.append(("recurrences", "D2", (m, n)))
    return out


# -- dwmn: Dunkl operators on omega_mn -----------------------------------------

def _thm_d1(config, m, n):
    ctx = config.ctx
    k = Scalar.coerce(ctx.k)
    N = ctx.N
    w = _w(m, n, ctx)
    if m > n:
        c = ((N - 1) * k + n) * k / (k + m - n)
        inner = _w(n - 1, m, ctx) - _w(m, n - 1, ctx).scale(k / (k + m - n + 1))
        rhs = _w(m - 1, n, ctx).scale(N * k + m) + inner.scale(c)
    else:
        rhs = (_w(n - 1, n, ctx) - _w(n, n - 1, ctx).scale(k / (k + 1))).scale((N - 1) * k + n)
    _expect_equal(dunkl(1, w, ctx), rhs, f"D_1 omega_({m},{n})")
    return ""


def _thm_d2(config, m, n):
    ctx = config.ctx
    k = Scalar.coerce(ctx.k)
    inner = _w(m, n - 1, ctx) - _w(n - 1, m, ctx).scale(k / (k + m - n + 1))
    rhs = inner.scale((ctx.N - 1) * k + n)
    _expect_equal(dunkl(2, _w(m, n, ctx), ctx), rhs, f"D_2 omega_({m},{n})")
    return ""


def _eigen(config, m, n):
    ctx = config.ctx
    k = Scalar.coerce(ctx.k)
    N = ctx.N
    w = _w(m, n, ctx)
    values = [(N - 1) * k + m + 1, (N - 2) * k + n + 1] + [(N - i) * k + 1 for i in range(3, N + 1)]
    for i, val in enumerate(values, 1):
        _expect_equal(cherednik(i, w, ctx), w.scale(val), f"Cherednik operator {i} on omega_({m},{n})")
    return ""


def _symmetry(config, m, n):
    ctx = config.ctx
    w = _w(m, n, ctx)
    for i in range(3, ctx.N + 1):
        for j in range(i + 1, ctx.N + 1):
            _expect_equal(transpose(w, i, j), w, f"({i},{j}) omega_({m},{n})")
    return ""


def _nonvanishing(config, m, n):
    # omega_mn != 0 whenever 2 kappa avoids -(m-n+1), ..., -m
    excluded = {Fraction(-j, 2) for j in range(m - n + 1, m + 1)}
    if config.kappa is None:
        rng = _rng(config, "dwmn", "nonvanishing", (m, n))
        kappa = _sample_kappa(rng, excluded)
    else:
        kappa = config.kappa
        # outside the standing assumption kappa not in -N the statement fails (f_40 = 0 at -1)
        if kappa in excluded or (kappa.denominator == 1 and kappa < 0):
            return None
    ctx = DunklContext(config.N, kappa)
    try:
        w = omega(m, n, ctx)
    except PoleError:
        return None
    _expect(not w.is_zero(), f"omega_({m},{n}) vanishes at kappa = {format_rational(kappa)}")
    return f"kappa = {format_rational(kappa)}"


def _dwmn_cases(config):
    b = config.label_bound(6)
    out = []
    for m in range(b + 1):
        for n in range(m + 1):
            if m > n:
                out.append(("dwmn", "D1", (m, n)))
            else:
                out.append(("dwmn", "D1-diagonal", (m, n)))
            out.append(("dwmn", "D2", (m, n)))
            out.append(("dwmn", "eigen", (m, n)))
            out.append(("dwmn", "nonvanishing", (m, n)))
        for n in range(b + 1):
            out.append(("dwmn", "symmetry", (m, n)))
    return out


# -- val1n: values at (1, ..., 1) ----------------------------------------------

def _val1n(config, m, n):
    ctx = config.ctx
    ones = [1] * ctx.N
    want = omega_at_ones(m, n, ctx)
    got = evaluate(_w(m, n, ctx), ones)
    _expect(got == want, f"omega_({m},{n})(1^N) = {got}, closed form {want}")
    swapped = evaluate(_w(n, m, ctx), ones)
    _expect(swapped == want, f"omega_({n},{m})(1^N) = {swapped}, closed form {want}")
    return str(want)


def _p_values(config, i, j):
    ctx = config.ctx
    p = p_poly(i, j, ctx)
    got = evaluate(p, [1] * ctx.N)
    _expect(got == p_at_ones(i, j, ctx), f"p_({i},{j})(1^N) = {got}")
    if j == 0:
        e1 = [1] + [0] * (ctx.N - 1)
        want = Scalar.coerce(pochhammer(ctx.k + 1, i)) / factorial(i)
        _expect(evaluate(p, e1) == want, f"p_({i},0)(1,0,...,0) != (kappa+1)_{i}/{i}!")
    return ""


def _dougall(config, idx):
    rng = _rng(config, "val1n", "dougall", (idx,))
    while True:
        N = rng.randint(2, 6)
        n = rng.randint(1, 5)
        m = rng.randint(n + 1, n + 5)
        k = Fraction(rng.randint(-12, 12), rng.randint(1, 7))
        d = m - n
        numer = [-n, -k, N * k + 1 + m, d, Fraction(d, 2) + 1]
        denom = [m + 1, k + d + 1, -N * k - n, Fraction(d, 2)]
        rhs_den = pochhammer(k + d + 1, n) * pochhammer(-N * k - n, n)
        if any(pochhammer(b, n) == 0 for b in denom) or rhs_den == 0:
            continue
        break
    lhs = hyp_terminating(numer, denom, 1, n)
    rhs = Scalar.coerce(pochhammer(d + 1, n) * pochhammer(-N * k + k - n, n) / rhs_den)
    _expect(lhs == rhs, f"5F4 sum {lhs} != {rhs} at N={N}, m={m}, n={n}, kappa={format_rational(k)}")
    return f"N={N} m={m} n={n} kappa={format_rational(k)}"


def _val1n_cases(config):
    b = config.label_bound(5)
    out = [("val1n", "omega", (m, n)) for m in range(b + 1) for n in range(m + 1)]
    out += [("val1n", "p", (i, j)) for i in range(b + 1) for j in range(b + 1 - i)]
    out += [("val1n", "dougall", (i,)) for i in range(config.count(20))]
    return out


# -- n2: the two-variable case -------------------------------------------------

def _n2_ctx(config):
    return DunklContext(2, config.kappa)


def _n2_proportional(config, m, n):
    ctx = _n2_ctx(config)
    k = Scalar.coerce(ctx.k)
    num = pochhammer(2 * k + m - n + 1, n) * pochhammer(k + 1, n)
    den = pochhammer(k + m - n + 1, n) * factorial(n)
    f = ctx.coerce(f_poly(m, n))
    _expect_equal(omega(m, n, ctx), f.scale(num / den), f"omega_({m},{n}) vs f_({m},{n})")
    return ""


def _n2_eigen(config, m, n):
    ctx = _n2_ctx(config)
    k = Scalar.coerce(ctx.k)
    f = ctx.coerce(f_poly(m, n))
    _expect_equal(cherednik(1, f, ctx), f.scale(k + m + 1), f"D_1 x_1 f_({m},{n})")
    _expect_equal(cherednik(2, f, ctx), f.scale(n + 1), f"(D_2 x_2 - kappa (1,2)) f_({m},{n})")
    at = evaluate(f, [1, 1])
    want = Scalar.coerce(pochhammer(2 * k + 1, m - n)) / factorial(m - n)
    _expect(at == want, f"f_({m},{n})(1,1) = {at}, expected {want}")
    return ""


def _n2_restrict(config, m, n):
    ctx = config.ctx
    native = omega(m, n, _n2_ctx(config))
    _expect_equal(restrict_to_2(omega(m, n, ctx)), native, f"restricted omega_({m},{n})")
    return f"from N={ctx.N}"


def _n2_cases(config):
    b = config.label_bound(6)
    out = []
    for m in range(b + 1):
        for n in range(m + 1):
            out.append(("n2", "proportional", (m, n)))
            out.append(("n2", "eigen", (m, n)))
            if config.N > 2:
                out.append(("n2", "restrict", (m, n)))
    return out


# -- krawtchouk ----------------------------------------------------------------

def _kraw_props(config, n):
    for m in range(n + 1):
        _expect(krawtchouk(m, 0, n) == 1, f"K_{m}(0;{n}) != 1")
    for l in range(n + 1):
        # (1-s)^l (1+s)^(n-l), coefficient of s^m
        for m in range(n + 1):
            c = sum(binomial(l, r) * (-1) ** r * binomial(n - l, m - r) for r in range(m + 1))
            _expect(c == binomial(n, m) * krawtchouk(m, l, n), f"generating function, n={n} l={l} m={m}")
    for m in range(n + 1):
        for l in range(n + 1):
            s = sum(binomial(n, t) * krawtchouk(m, t, n) * krawtchouk(l, t, n) for t in range(n + 1))
            want = Fraction(1, binomial(n, m)) if m == l else 0
            _expect(Fraction(s, 2 ** n) == want, f"orthogonality, n={n} m={m} l={l}")
            h = hyp_terminating([-l, -m], [-n], 2, n)
            _expect(h == Scalar.coerce(krawtchouk(m, l, n)), f"2F1 form, n={n} m={m} l={l}")
            _expect(krawtchouk(m, l, n) == krawtchouk(l, m, n), f"symmetry, n={n} m={m} l={l}")
            sign = -1 if m % 2 else 1
            _expect(krawtchouk(m, n - l, n) == sign * krawtchouk(m, l, n), f"parity, n={n} m={m} t={l}")
    return ""


def _prop_even(config, n, i):
    kappa = Fraction(-(n - 2 * i + 1), 2)
    c = omega_q_coeffs(n - i, i, kappa)
    _expect(all(isinstance(v, Fraction) for v in c), "coefficients not rational")
    bad = [l for l in range(n - 2 * i + 1, n + 1) if c[l]]
    _expect(not bad, f"q-coefficients nonzero at l = {bad}")
    return "c = [" + ", ".join(format_rational(v) for v in c) + "]"


def _prop_odd(config, n, i):
    kappa = Fraction(-(n - 2 * i), 2)
    c = omega_q_coeffs(n - i, i, kappa, symmetrize=True)
    _expect(all(isinstance(v, Fraction) for v in c), "coefficients not rational")
    bad = [l for l in range(n + 1) if c[l] and (l > n - 2 * i - 1 or l % 2)]
    _expect(not bad, f"q-coefficients nonzero at l = {bad}")
    return "c = [" + ", ".join(format_rational(v) for v in c) + "]"


def _ab_closed_forms(config, l, n):
    kappa = Fraction(-(2 * l + 1), 2)
    for kind in ("A", "B"):
        closed = ab_closed(kind, n, l)
        # compare well past the closed form's degree: the series must stop there
        series = ab_series(kind, n, kappa, closed.truncation + 3)
        padded = closed.coeffs + (Scalar.coerce(0),) * 3
        _expect(series.coeffs == padded, f"{kind}_{n} at kappa = {format_rational(kappa)}")
        if kind == "A" and n % 2:
            _expect(series.is_zero(), f"A_{n} is not zero")
    return ""


def _kraw_cases(config):
    out = [("krawtchouk", "properties", (n,)) for n in range(1, 11)]
    out += [("krawtchouk", "prop-even", (n, i)) for n in range(2, 11, 2) for i in range(1, n // 2 + 1)]
    out += [("krawtchouk", "prop-odd", (n, i)) for n in range(1, 12, 2) for i in range((n + 1) // 2)]
    out += [("krawtchouk", "ab-closed", (l, n)) for l in range(4) for n in range(2 * l + 1)]
    return out


# -- qexpand: the p <-> q change of basis --------------------------------------

def _q_kappas(config):
    if config.kappa is not None:
        return [config.kappa]
    rng = random.Random(f"{config.seed}-qexpand-kappa")
    out = []
    while len(out) < 3:
        k = _sample_kappa(rng)
        if k not in out:
            out.append(k)
    return out


def _qexpand(config, idx):
    rng = _rng(config, "qexpand", "roundtrip", (idx,))
    n = rng.randint(1, config.degree)
    c = [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(n + 1)]
    d = p_to_q(c)
    for kappa in _q_kappas(config):
        ctx = DunklContext(config.N, kappa)
        lhs = Polynomial.zero(ctx.N)
        rhs = Polynomial.zero(ctx.N)
        for i in range(n + 1):
            lhs = lhs + p_poly(n - i, i, ctx).scale(c[i])
            rhs = rhs + q_poly(n - i, i, ctx).scale(d[i])
        _expect_equal(rhs, lhs, f"q-expansion at kappa = {format_rational(kappa)}, degree {n}")
    return f"degree {n}"


def _qexpand_omega(config, m, n):
    ctx = config.ctx
    d = omega_q_coeffs(m, n, ctx.k)
    total = Polynomial.zero(ctx.N)
    for l, v in enumerate(d):
        total = total + q_poly(m + n - l, l, ctx).scale(v)
    _expect_equal(total, omega(m, n, ctx), f"omega_({m},{n}) from its q-coefficients")
    return ""


def _qexpand_cases(config):
    out = [("qexpand", "roundtrip", (i,)) for i in range(config.count(20))]
    b = min(config.label_bound(3), 3)
    out += [("qexpand", "omega", (m, n)) for m in range(b + 1) for n in range(m + 1)]
    return out


# -- q2z: vanishing of q_mn at half-integer kappa ------------------------------

def _q2z(config, l, m, n):
    ctx = DunklContext(config.N, Fraction(-(2 * l + 1), 2))
    _expect(q_poly(m, n, ctx).is_zero(), f"q_({m},{n}) != 0 at kappa = -{l}-1/2")
    return f"l={l}"


def _q2z_cases(config):
    N = config.N
    l_max = config.l_max if config.l_max is not None else (1 if N <= 3 else 0)
    out = []
    for l in range(l_max + 1):
        top = N * (2 * l + 1)
        for n in range(2 * l + 1):
            for m in range(max(top - 1 - n, 0), top - n + 1):
                out.append(("q2z", "vanish", (l, m, n)))
    return out


# -- families of singular polynomials ------------------------------------------

def _check_certificate(cert, rng):
    f = cert.polynomial
    ctx = DunklContext(cert.N, cert.kappa)
    _expect(cert.verdict.singular, "not singular", f=f)
    _expect(cert.passed, f"certificate checks failed: {json.dumps(cert.to_json()['checks'])}", f=f)
    # the whole S_N orbit is singular
    for _ in range(10):
        imgs = list(range(1, cert.N + 1))
        rng.shuffle(imgs)
        w = Permutation(tuple(imgs))
        _expect(is_singular(permute(w, f), ctx).singular, f"image under {imgs} not singular", f=f)
    # kappa is among the singular values and matches the isotype
    jmax = abs(cert.kappa.numerator)
    _expect(cert.kappa in singular_values(cert.N, jmax), "kappa outside the singular values")
    if cert.N <= 5:
        r = module_rank(f, ctx)
        _expect(r.euler_eigen == 0, f"Euler-Dunkl eigenvalue {r.euler_eigen}")
        d = f.degree()
        for tau in r.isotype_candidates:
            _expect(d + cert.kappa * mu(tau) == 0, f"deg + kappa mu({tau}) != 0")
    return f"N={cert.N} kappa={format_rational(cert.kappa)} label={cert.label} rank={cert.extras.get('rank')}"


def _fam_n0(config, n, N):
    return _check_certificate(family_n0(n, N), _rng(config, "families", "n0", (n, N)))


def _fam_nn(config, n, N):
    return _check_certificate(family_nn(n, N), _rng(config, "families", "nn", (n, N)))


def _fam_half(config, l, m):
    cert = family_half(l, m)
    detail = _check_certificate(cert, _rng(config, "families", "half", (l, m)))
    ctx = DunklContext(cert.N, cert.kappa)
    a, b = cert.label
    f = cert.polynomial
    _expect(omega(a - 1, b, ctx).is_zero(), f"omega_({a - 1},{b}) != 0")
    N, k = cert.N, cert.kappa
    shapes = [(N - 2, 2), (N - 1, 1), (N,)]
    for tau in (Partition(t) for t in shapes if t[0] >= t[-1]):
        _expect(f.degree() + k * mu(tau) != 0, f"isotype {tau} not excluded")
    if (l, m) == (0, 1):
        a3 = ctx.coerce(alternating(3, 1))
        _expect(f.is_proportional(a3) is not None, "not a multiple of a_3", f=f)
    return detail


def _fam_alt(config, N, l):
    a = alternating(N, 2 * l + 1)
    v = is_singular(a, DunklContext(N, Fraction(-(2 * l + 1), 2)))
    _expect(v.singular, f"a_{N}^{2 * l + 1} not singular at kappa = -{l}-1/2")
    w = is_singular(a, DunklContext(N, 1))
    _expect(not w.singular and sorted(w.residuals) == list(range(1, N + 1)), "residuals missing at kappa = 1")
    return ""


def _fam_reject(config, kind, a, b):
    want = DivisibilityError if kind == "n0" else GcdError
    build = family_n0 if kind == "n0" else family_nn
    try:
        build(a, b)
    except want:
        return f"{want.__name__}"
    raise _Fail(f"family {kind} ({a}, {b}) was not rejected")


def _fam_pole(config):
    try:
        omega(1, 1, DunklContext(3, -1))
    except PoleError:
        return "PoleError"
    raise _Fail("omega_(1,1) at kappa = -1 did not raise")


def _families_cases(config):
    out = [("families", "n0", c) for c in N0_CASES]
    out += [("families", "nn", c) for c in NN_CASES]
    out += [("families", "half", c) for c in HALF_CASES]
    out += [("families", "alternating", c) for c in ALT_CASES]
    out += [("families", "reject", c) for c in REJECT_CASES]
    out += [("families", "pole", ())]
    return out


CHECKS = {
    ("commute", "commute"): _commute,
    ("commute", "product"): _product_rule,
    ("commute", "euler"): _euler,
    ("commute", "homogeneous"): _homogeneous,
    ("commute", "alternating"): _alternating_identity,
    ("recurrences", "D1"): _recurrence_d1,
    ("recurrences", "D2"): _recurrence_d2,
    ("recurrences", "boundary"): _boundary,
    ("dwmn", "D1"): _thm_d1,
    ("dwmn", "D1-diagonal"): _thm_d1,
    ("dwmn", "D2"): _thm_d2,
    ("dwmn", "eigen"): _eigen,
    ("dwmn", "symmetry"): _symmetry,
    ("dwmn", "nonvanishing"): _nonvanishing,
    ("val1n", "omega"): _val1n,
    ("val1n", "p"): _p_values,
    ("val1n", "dougall"): _dougall,
    ("n2", "proportional"): _n2_proportional,
    ("n2", "eigen"): _n2_eigen,
    ("n2", "restrict"): _n2_restrict,
    ("krawtchouk", "properties"): _kraw_props,
    ("krawtchouk", "prop-even"): _prop_even,
    ("krawtchouk", "prop-odd"): _prop_odd,
    ("krawtchouk", "ab-closed"): _ab_closed_forms,
    ("qexpand", "roundtrip"): _qexpand,
    ("qexpand", "omega"): _qexpand_omega,
    ("q2z", "vanish"): _q2z,
    ("families", "n0"): _fam_n0,
    ("families", "nn"): _fam_nn,
    ("families", "half"): _fam_half,
    ("families", "alternating"): _fam_alt,
    ("families", "reject"): _fam_reject,
    ("families", "pole"): _fam_pole,
}

_CASES = {
    "commute": _commute_cases,
    "recurrences": _recurrence_cases,
    "dwmn": _dwmn_cases,
    "val1n": _val1n_cases,
    "n2": _n2_cases,
    "krawtchouk": _kraw_cases,
    "qexpand": _qexpand_cases,
    "q2z": _q2z_cases,
    "families": _families_cases,
}


def cases(suite, config):
    if suite == "all":
        return [c for s in SUITES for c in _CASES[s](config)]
    if suite not in _CASES:
        raise ValueError(f"unknown suite {suite!r}")
    return _CASES[suite](config)


def _witness_json(witness):
    out = {}
    for name, v in sorted(witness.items()):
        if isinstance(v, Polynomial):
            out[name] = to_json(v)
        elif v is not None:
            out[name] = v
    return out


def run_case(case, config):
    suite, check, params = case
    fn = CHECKS[(suite, check)]
    try:
        detail = fn(config, *params)
    except _Fail as e:
        cx = {"case": "/".join([suite, check] + [str(p) for p in params]), "reason": e.detail}
        cx.update(_witness_json(e.witness))
        return Outcome(suite, check, params, "fail", e.detail, cx)
    except PoleError as e:
        return Outcome(suite, check, params, "skip", f"pole: {e}")
    except ZeroDivisionError:
        return Outcome(suite, check, params, "skip", "identity has a pole at this kappa")
    except SingpolyError as e:
        cx = {"case": "/".join([suite, check] + [str(p) for p in params]), "reason": str(e)}
        return Outcome(suite, check, params, "fail", f"{type(e).__name__}: {e}", cx)
    if detail is None:
        return Outcome(suite, check, params, "skip", "not applicable at this kappa")
    return Outcome(suite, check, params, "pass", detail)


def _run_one(args):
    return run_case(*args)


@dataclass
class Report:
    suite: str
    config: RunConfig
    outcomes: list

    @property
    def passed(self):
        return all(o.status != "fail" for o in self.outcomes)

    @property
    def first_failure(self):
        return next((o for o in self.outcomes if o.status == "fail"), None)

    def counts(self):
        c = {"pass": 0, "fail": 0, "skip": 0}
        for o in self.outcomes:
            c[o.status] += 1
        return c

    def to_text(self):
        lines = [f"verify {self.suite}: {self.config.describe()}"]
        for o in self.outcomes:
            tail = f"  {o.detail}" if o.detail else ""
            lines.append(f"{o.status.upper():4} {o.name}{tail}")
        c = self.counts()
        lines.append(f"{c['pass']} passed, {c['fail']} failed, {c['skip']} skipped")
        bad = self.first_failure
        if bad is not None:
            lines.append("first counterexample:")
            lines.append(json.dumps(bad.counterexample, sort_keys=True))
        return "\n".join(lines) + "\n"

    def to_json(self):
        cfg = asdict(self.config)
        cfg["kappa"] = "generic" if self.config.kappa is None else format_rational(self.config.kappa)
        cfg["max_degree"] = self.config.degree
        for k in ("out", "jobs"):
            cfg.pop(k)
        bad = self.first_failure
        return {
            "suite": self.suite,
            "config": cfg,
            "passed": self.passed,
            "counts": self.counts(),
            "cases": [
                {"case": o.name, "status": o.status, "detail": o.detail} for o in self.outcomes
            ],
            "counterexample": None if bad is None else bad.counterexample,
        }


def run_suite(suite, config):
    """Run every case of ``suite``; outcomes come back sorted by case key."""
    todo = sorted(set(cases(suite, config)))
    if config.jobs > 1 and len(todo) > 1:
        serial = replace(config, jobs=1)
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            outcomes = list(pool.map(_run_one, [(c, serial) for c in todo], chunksize=1))
    else:
        outcomes = [run_case(c, config) for c in todo]
    outcomes.sort(key=lambda o: o.key)
    return Report(suite, config, outcomes)
