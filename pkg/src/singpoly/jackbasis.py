"""The basic polynomials p_mn and the Jack polynomials omega_mn built from them; also the N = 2 family f_mn."""
from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache
from math import factorial

from singpoly.errors import OrderError, PoleError
from singpoly.field import KAPPA, Scalar, pochhammer
from singpoly.polyring import Permutation, Polynomial, permute, restrict_vars

__all__ = [
    "SeriesFactor",
    "p_poly",
    "omega",
    "omega_p_coeffs",
    "omega_at_ones",
    "f_poly",
    "restrict_to_2",
]


class SeriesFactor:
    """A power series in one formal variable, truncated at ``degree``.

    ``coeffs[k]`` is the polynomial multiplying the k-th power; it is
    homogeneous of degree k in x.
    """

    __slots__ = ("degree", "coeffs")

    def __init__(self, coeffs):
        self.coeffs = tuple(coeffs)
        self.degree = len(self.coeffs) - 1

    def __getitem__(self, k):
        return self.coeffs[k]

    def __mul__(self, other):
        d = min(self.degree, other.degree)
        out = []
        for k in range(d + 1):
            acc = self.coeffs[0] * other.coeffs[k]
            for r in range(1, k + 1):
                acc = acc + self.coeffs[r] * other.coeffs[k - r]
            out.append(acc)
        return SeriesFactor(out)

    @classmethod
    def geometric(cls, nvars, i, degree):
        """(1 - s x_i)^{-1}."""
        return cls(Polynomial.variable(nvars, i) ** k for k in range(degree + 1))

    @classmethod
    def negative_binomial(cls, nvars, i, a, degree):
        """(1 - s x_i)^{-a} = sum_k (a)_k / k! (s x_i)^k."""
        coeffs = []
        exps = [0] * nvars
        for k in range(degree + 1):
            exps[i - 1] = k
            c = Scalar.coerce(pochhammer(a, k)) / factorial(k)
            coeffs.append(Polynomial.monomial(nvars, exps, c))
        return cls(coeffs)


_lock = threading.Lock()
_f_series = {}


def _first_factor(ctx, degree):
    """Truncation of (1 - s x_1)^{-1} prod_i (1 - s x_i)^{-kappa}, cached per context."""
    key = (ctx.N, ctx.kappa)
    with _lock:
        have = _f_series.get(key)
    if have is not None and have.degree >= degree:
        return have
    degree = max(degree, 4 if have is None else 2 * have.degree)
    N = ctx.N
    ser = SeriesFactor.geometric(N, 1, degree)
    for i in range(1, N + 1):
        ser = ser * SeriesFactor.negative_binomial(N, i, ctx.k, degree)
    with _lock:
        cur = _f_series.get(key)
        if cur is None or cur.degree < ser.degree:
            _f_series[key] = ser
    return ser


@lru_cache(maxsize=4096)
def p_poly(m, n, ctx):
    """Coefficient of s^m t^n in the product generating function.

    Computed as [s^m]F * [t^n]G where G is F with x_1 and x_2 exchanged.
    """
    if m < 0 or n < 0:
        raise ValueError("p_mn needs m, n >= 0")
    ser = _first_factor(ctx, max(m, n))
    fm = ser[m]
    gn = permute(Permutation.transposition(1, 2, ctx.N), ser[n])
    return fm * gn


def _check_poles(m, n, ctx):
    # (kappa + m - n + 1)_j for j <= n vanishes iff kappa in {-(m-n+1), ..., -m}
    if ctx.kappa is None or n == 0:
        return
    k = ctx.kappa
    if k.denominator == 1 and -m <= k <= -(m - n + 1):
        raise PoleError(f"omega_({m},{n}) is undefined at kappa = {k}")


def omega_p_coeffs(m, n, kappa):
    """Coefficients of omega_mn in the p basis: {(i, j): coefficient}.

    ``kappa`` is a Scalar (generic) or a rational value.  The coefficients do
    not depend on N.
    """
    if m < n:
        return {(j, i): c for (i, j), c in omega_p_coeffs(n, m, kappa).items()}
    out = {(m, n): Scalar.coerce(1) if isinstance(kappa, Scalar) else Fraction(1)}
    d = m - n
    for j in range(1, n + 1):
        den = pochhammer(kappa + d + 1, j) * factorial(j)
        if not den:
            raise PoleError(f"omega_({m},{n}) is undefined at kappa = {kappa}")
        c = pochhammer(-kappa, j) * pochhammer(d + 1, j - 1) / den
        for key, w in (((m + j, n - j), d + j), ((n - j, m + j), j)):
            out[key] = out.get(key, 0) + c * w
    return out


@lru_cache(maxsize=4096)
def omega(m, n, ctx):
    """The nonsymmetric Jack polynomial labelled (m, n, 0, ..., 0)."""
    if m < 0 or n < 0:
        raise ValueError("omega_mn needs m, n >= 0")
    if m < n:
        return permute(Permutation.transposition(1, 2, ctx.N), omega(n, m, ctx))
    _check_poles(m, n, ctx)
    out = Polynomial.zero(ctx.N)
    for (i, j), c in sorted(omega_p_coeffs(m, n, ctx.k).items()):
        out = out + p_poly(i, j, ctx).scale(c)
    return out


def omega_at_ones(m, n, ctx):
    """Closed-form value of omega_mn at (1, ..., 1)."""
    if m < n:
        m, n = n, m
    _check_poles(m, n, ctx)
    k = ctx.k
    N = ctx.N
    num = pochhammer(N * k + 1, m) * pochhammer((N - 1) * k + 1, n)
    den = factorial(m - n) * factorial(n) * pochhammer(k + m - n + 1, n)
    return Scalar.coerce(num) / Scalar.coerce(den)


def f_poly(m, n, kappa=None):
    """The two-variable polynomial f_mn (m >= n), generic kappa unless given."""
    if m < n:
        raise OrderError(f"f_mn needs m >= n, got ({m}, {n})")
    k = KAPPA if kappa is None else Fraction(kappa)
    d = m - n
    terms = {}
    for j in range(d + 1):
        c = Scalar.coerce(pochhammer(k + 1, d - j) * pochhammer(k, j)) / (factorial(d - j) * factorial(j))
        terms[(n + d - j, n + j)] = c
    return Polynomial(2, terms)


def restrict_to_2(f):
    """Set x_i = 0 for i > 2."""
    return restrict_vars(f, 2)


def p_at_ones(i, j, ctx):
    """(N kappa + 1)_i (N kappa + 1)_j / (i! j!), the value of p_ij at (1, ..., 1)."""
    k = ctx.k
    return Scalar.coerce(pochhammer(ctx.N * k + 1, i) * pochhammer(ctx.N * k + 1, j)) / (
        factorial(i) * factorial(j)
    )

