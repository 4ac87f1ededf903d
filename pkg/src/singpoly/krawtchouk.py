"""Symmetric Krawtchouk polynomials and the q basis; the A_n / B_n series."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from singpoly.errors import RangeError
from singpoly.field import Scalar, binomial, pochhammer
from singpoly.jackbasis import omega_p_coeffs, p_poly
from singpoly.polyring import Polynomial

__all__ = [
    "krawtchouk",
    "q_coeff",
    "q_poly",
    "p_to_q",
    "omega_q_coeffs",
    "UnivariateSeries",
    "ab_series",
    "ab_closed",
]


@lru_cache(maxsize=65536)
def krawtchouk(m, t, n):
    """K_m(t; n) for the binomial distribution with parameter 1/2."""
    if n < 1:
        raise RangeError(f"Krawtchouk size must be positive, got {n}")
    if m < 0 or m > n:
        raise RangeError(f"degree {m} outside 0..{n}")
    t = Fraction(t)
    total = Fraction(0)
    for j in range(m + 1):
        term = pochhammer(t - n, m - j) * pochhammer(-t, j) / (factorial(m - j) * factorial(j))
        total += -term if (m - j) % 2 else term
    return total / binomial(n, m)


@lru_cache(maxsize=None)
def q_coeff(i, j, m, n):
    """[u^m v^n] (u+v)^i (u-v)^j, zero unless i + j = m + n."""
    if i + j != m + n:
        return 0
    # u^(m-r) from (u+v)^i, u^r from (u-v)^j which carries (-v)^(j-r)
    return sum(
        binomial(i, m - r) * binomial(j, r) * (-1) ** (j - r)
        for r in range(max(0, m - i), min(j, m) + 1)
    )


@lru_cache(maxsize=2048)
def q_poly(m, n, ctx):
    """q_mn, the image of the p basis under (s, t) -> (u + v, u - v)."""
    out = Polynomial.zero(ctx.N)
    d = m + n
    for i in range(d + 1):
        c = q_coeff(i, d - i, m, n)
        if c:
            out = out + p_poly(i, d - i, ctx).scale(c)
    return out


def p_to_q(c):
    """Rewrite sum_i c_i p_{n-i,i} as sum_i d_i q_{n-i,i}; returns d."""
    c = list(c)
    n = len(c) - 1
    if n < 0:
        return []
    if n == 0:
        return c
    out = []
    scale = Fraction(1, 2 ** n)
    for i in range(n + 1):
        acc = 0
        for j in range(n + 1):
            if c[j]:
                acc = acc + c[j] * (binomial(n, j) * krawtchouk(i, j, n))
        out.append(acc * scale)
    return out


def omega_q_coeffs(m, n, kappa, symmetrize=False):
    """q-basis coefficients of omega_mn (or omega_mn + omega_nm), index l -> q_{d-l,l}."""
    d = m + n
    coeffs = omega_p_coeffs(m, n, kappa)
    c = [coeffs.get((d - j, j), 0) for j in range(d + 1)]
    if symmetrize:
        c = [c[j] + c[d - j] for j in range(d + 1)]
    return p_to_q(c)


@dataclass(frozen=True)
class UnivariateSeries:
    """Power series in u: ``coeffs[k]`` multiplies u^k, exact through ``truncation``."""

    coeffs: tuple
    truncation: int

    def __post_init__(self):
        c = tuple(Scalar.coerce(v) for v in self.coeffs)
        if len(c) > self.truncation + 1:
            raise ValueError("more coefficients than the truncation allows")
        c = c + (Scalar.coerce(0),) * (self.truncation + 1 - len(c))
        object.__setattr__(self, "coeffs", c)

    def __getitem__(self, k):
        return self.coeffs[k] if k <= self.truncation else None

    def is_zero(self):
        return not any(self.coeffs)

    def degree(self):
        nz = [k for k, c in enumerate(self.coeffs) if c]
        return nz[-1] if nz else -1

    def truncate(self, t):
        return UnivariateSeries(self.coeffs[: t + 1], t)

    def specialize(self, kappa0):
        return UnivariateSeries(tuple(c.specialize(kappa0) for c in self.coeffs), self.truncation)


def ab_series(kind, n, ctx, truncation):
    """u-series of the v^n coefficient of (1-(u+v))^{-a} (1-(u-v))^{-kappa}.

    a = kappa for kind "A" and kappa + 1 for kind "B".
    """
    kind = kind.upper()
    if kind not in ("A", "B"):
        raise ValueError(f"kind must be 'A' or 'B', got {kind!r}")
    k = ctx.k if hasattr(ctx, "k") else ctx
    a = k + 1 if kind == "B" else k
    b = k

    @lru_cache(maxsize=None)
    def nb(x, e):
        return pochhammer(x, e) / factorial(e)

    top = truncation + n
    na = [nb(a, e) for e in range(top + 1)]
    nbb = [nb(b, e) for e in range(top + 1)]
    coeffs = []
    for d in range(truncation + 1):
        acc = 0
        for r1 in range(n + 1):
            r2 = n - r1
            sign = -1 if r2 % 2 else 1
            for e1 in range(d + 1):
                e2 = d - e1
                k1, k2 = e1 + r1, e2 + r2
                acc = acc + na[k1] * nbb[k2] * (binomial(k1, r1) * binomial(k2, r2) * sign)
        coeffs.append(acc)
    return UnivariateSeries(tuple(coeffs), truncation)


def ab_closed(kind, n, l):
    """Closed polynomial form of A_n or B_n at kappa = -l - 1/2, valid for n <= 2l."""
    kind = kind.upper()
    if kind not in ("A", "B"):
        raise ValueError(f"kind must be 'A' or 'B', got {kind!r}")
    if n < 0 or n > 2 * l:
        raise RangeError(f"closed form needs 0 <= n <= 2l, got n={n}, l={l}")
    half = Fraction(1, 2)
    j = n // 2
    if kind == "A":
        e = 2 * l + 1 - n
        if n % 2:
            return UnivariateSeries((), e)
        c = pochhammer(-l - half, j) / factorial(j)
    else:
        e = 2 * l - n
        c = pochhammer(-l + half, j) / factorial(j)
    # c * (1 - u)^e
    return UnivariateSeries(tuple(c * binomial(e, r) * (-1) ** r for r in range(e + 1)), e)
