"""Singular polynomials: verification, certificates, families and module ranks."""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, gcd
from typing import Optional

from singpoly.dunkl import DunklContext, Partition, dunkl, euler_dunkl, mu, partitions
from singpoly.errors import DivisibilityError, DomainError, GcdError, ParseError
from singpoly.field import Scalar, binomial, format_rational, parse_rational, pochhammer
from singpoly.jackbasis import omega, p_poly
from singpoly.polyring import Permutation, Polynomial, evaluate, from_json, permute, to_json

__all__ = [
    "Verdict",
    "Certificate",
    "ModuleRank",
    "is_singular",
    "singular_values",
    "family_n0",
    "family_nn",
    "family_half",
    "module_rank",
    "verify_certificate",
]


@dataclass
class Verdict:
    singular: bool
    residuals: dict
    degree: int
    nonzero: bool
    degenerate: bool = False

    def dunkl_zero(self, N):
        return [i not in self.residuals for i in range(1, N + 1)]


def is_singular(f, ctx):
    """Apply every D_i at a specialized kappa and report the nonzero images."""
    if ctx.generic:
        raise ValueError("is_singular needs a specialized kappa")
    f = ctx.coerce(f)
    residuals = {}
    for i in range(1, ctx.N + 1):
        r = dunkl(i, f, ctx)
        if not r.is_zero():
            residuals[i] = r
    nonzero = not f.is_zero()
    return Verdict(
        singular=nonzero and not residuals,
        residuals=residuals,
        degree=max(f.degree(), 0),
        nonzero=nonzero,
        degenerate=nonzero and f.degree() == 0,
    )


def singular_values(N, j_max):
    """{-j/n : 2 <= n <= N, 1 <= j <= j_max, n does not divide j}."""
    return {Fraction(-j, n) for n in range(2, N + 1) for j in range(1, j_max + 1) if j % n}


# -- module rank ---------------------------------------------------------------

@dataclass
class ModuleRank:
    rank: int
    euler_eigen: Optional[object]
    isotype_candidates: list = field(default_factory=list)


def _rank_int_rows(rows):
    """Rank over Q of sparse integer rows given as dicts."""
    pivots = {}  # column -> reduced row
    rank = 0
    for row in rows:
        row = dict(row)
        while row:
            col = max(row)
            piv = pivots.get(col)
            if piv is None:
                g = gcd(*row.values())
                pivots[col] = {k: v // g for k, v in row.items()}
                rank += 1
                break
            a, b = piv[col], row[col]
            new = {}
            for k in set(row) | set(piv):
                v = a * row.get(k, 0) - b * piv.get(k, 0)
                if v:
                    new[k] = v
            if new:
                g = gcd(*new.values())
                if g > 1:
                    new = {k: v // g for k, v in new.items()}
            row = new
    return rank


def _rank_scalar_rows(rows):
    pivots = {}
    rank = 0
    for row in rows:
        row = {k: v for k, v in row.items() if v}
        while row:
            col = max(row)
            piv = pivots.get(col)
            if piv is None:
                lead = row[col]
                pivots[col] = {k: v / lead for k, v in row.items()}
                rank += 1
                break
            b = row[col]
            new = {}
            for k in set(row) | set(piv):
                v = row.get(k, 0) - b * piv.get(k, 0)
                if v:
                    new[k] = v
            row = new
    return rank


def module_rank(f, ctx, allow_large=False):
    """Dimension of span{w f : w in S_N} plus the Euler-Dunkl eigenvalue data."""
    f = ctx.coerce(f)
    if f.is_zero():
        raise DomainError("module_rank needs a nonzero polynomial")
    N = ctx.N
    if N > 5 and not allow_large:
        raise DomainError(f"module_rank enumerates N! permutations; refusing N = {N} > 5")
    seen = set()
    images = []
    for w in Permutation.all(N):
        g = permute(w, f)
        key = frozenset(g._num.items())
        if key not in seen:
            seen.add(key)
            images.append(g)
    if f.has_kappa() or len(f._den) > 1:
        rank = _rank_scalar_rows([dict(g.terms()) for g in images])
    else:
        rank = _rank_int_rows([g._num for g in images])

    eigen = None
    candidates = []
    e = euler_dunkl(f, ctx)
    c = e.is_proportional(f)
    if c is not None:
        eigen = c.to_rational() if not ctx.generic else c
        degs = f.degrees()
        if len(degs) == 1:
            d = degs[0]
            for parts in partitions(N):
                val = Scalar.coerce(d) + Scalar.coerce(ctx.k) * mu(Partition(parts))
                if val == Scalar.coerce(eigen):
                    candidates.append(Partition(parts))
    return ModuleRank(rank=rank, euler_eigen=eigen, isotype_candidates=candidates)


# -- certificates -------------------------------------------------------------

@dataclass
class Certificate:
    family: str
    params: list
    N: int
    kappa: Fraction
    label: tuple
    polynomial: Polynomial
    verdict: Verdict
    extras: dict

    @property
    def passed(self):
        required = ["euler_match"]
        if self.family == "half":
            required.append("antisymmetric_12")
        required += [k for k in ("witness_nonzero", "nonvanishing_criterion") if k in self.extras]
        ok = self.verdict.singular and self.verdict.nonzero and all(self.extras.get(k) for k in required)
        if self.extras.get("rank_expected") is not None:
            ok = ok and self.extras.get("rank") == self.extras["rank_expected"]
        return bool(ok)

    def to_json(self):
        poly = to_json(self.polynomial)
        text = json.dumps(poly, sort_keys=True)
        return {
            "family": self.family,
            "params": list(self.params),
            "N": self.N,
            "kappa": format_rational(self.kappa),
            "label": list(self.label),
            "degree": self.verdict.degree,
            "checks": {
                "dunkl_zero": self.verdict.dunkl_zero(self.N),
                "nonzero": self.verdict.nonzero,
                "antisymmetric_12": bool(self.extras.get("antisymmetric_12")),
                "euler_match": bool(self.extras.get("euler_match")),
                "rank": self.extras.get("rank"),
            },
            "passed": self.passed,
            "hash": "sha256:" + hashlib.sha256(text.encode()).hexdigest(),
            "polynomial": poly,
        }


def _antisymmetric_12(f):
    return (f + permute(Permutation.transposition(1, 2, f.nvars), f)).is_zero()


def _euler_match(f, ctx, tau):
    expected = Scalar.coerce(f.degree()) + Scalar.coerce(ctx.k) * mu(tau)
    return euler_dunkl(f, ctx) == f.scale(expected)


def _certify(family, params, ctx, label, f, tau, rank_expected=None, extras=None):
    verdict = is_singular(f, ctx)
    ex = dict(extras or {})
    ex["antisymmetric_12"] = _antisymmetric_12(f)
    ex["euler_match"] = _euler_match(f, ctx, tau)
    ex["rank"] = module_rank(f, ctx).rank if ctx.N <= 5 and not f.is_zero() else None
    ex["rank_expected"] = rank_expected if ex["rank"] is not None else None
    return Certificate(family, list(params), ctx.N, ctx.kappa, tuple(label), f, verdict, ex)


def family_n0(n, N):
    """omega_{n,0} at kappa = -n/N, singular when N does not divide n."""
    if N < 2 or n < 1:
        raise DomainError(f"family n0 needs N >= 2 and n >= 1, got n={n}, N={N}")
    if n % N == 0:
        raise DivisibilityError(f"N = {N} divides n = {n}")
    ctx = DunklContext(N, Fraction(-n, N))
    f = omega(n, 0, ctx)
    e1 = [1] + [0] * (N - 1)
    witness = evaluate(p_poly(n, 0, ctx), e1)
    expected = Scalar.coerce(pochhammer(ctx.kappa + 1, n) / factorial(n))
    extras = {"witness_nonzero": bool(witness) and witness == expected}
    return _certify("n0", [n, N], ctx, (n, 0), f, Partition((N - 1, 1)), N - 1, extras)


def family_nn(n, N):
    """omega_{nn} at kappa = -n/(N-1), singular when gcd(N-1, n) < (N-1)/2."""
    if N < 4 or n < 1:
        raise DomainError(f"family nn needs N >= 4 and n >= 1, got n={n}, N={N}")
    if 2 * gcd(N - 1, n) >= N - 1:
        raise GcdError(f"gcd({N - 1}, {n}) = {gcd(N - 1, n)} is not < {Fraction(N - 1, 2)}")
    ctx = DunklContext(N, Fraction(-n, N - 1))
    f = omega(n, n, ctx)
    rank = N * (N - 3) // 2
    return _certify("nn", [n, N], ctx, (n, n), f, Partition((N - 2, 2)), rank)


def half_family_params(l, m):
    """(N, kappa, a, b) for the half-integer family."""
    N = 2 * m + 1
    return N, Fraction(-(2 * l + 1), 2), (2 * l + 1) * (m + 1), (2 * l + 1) * m


def family_half(l, m):
    """omega_{(2l+1)(m+1),(2l+1)m} for N = 2m+1 at kappa = -l - 1/2."""
    if l < 0 or m < 1:
        raise DomainError(f"family half needs l >= 0 and m >= 1, got l={l}, m={m}")
    N, kappa, a, b = half_family_params(l, m)
    ctx = DunklContext(N, kappa)
    f = omega(a, b, ctx)
    # nonvanishing criterion: 2 kappa avoids -(a-b+1), ..., -a
    criterion = not (a - b + 1 <= -2 * kappa <= a)
    extras = {"nonvanishing_criterion": criterion}
    tau = Partition((N - 2, 1, 1))
    return _certify("half", [l, m], ctx, (a, b), f, tau, binomial(N - 1, 2), extras)


_FAMILY_TAU = {
    "n0": lambda N: Partition((N - 1, 1)),
    "nn": lambda N: Partition((N - 2, 2)),
    "half": lambda N: Partition((N - 2, 1, 1)),
}


def verify_certificate(data):
    """Re-check a certificate from its serialized polynomial alone.

    Returns a dict of recomputed checks plus ``"consistent"``: whether they
    agree with the recorded ones and the content hash matches.
    """
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as e:
            raise ParseError(f"invalid certificate JSON: {e.msg}", e.pos) from None
    try:
        N = int(data["N"])
        kappa = parse_rational(data["kappa"])
        poly_obj = data["polynomial"]
        family = data["family"]
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"malformed certificate: {e}") from None
    f = from_json(poly_obj)
    ctx = DunklContext(N, kappa)
    v = is_singular(f, ctx)
    checks = {
        "dunkl_zero": v.dunkl_zero(N),
        "nonzero": v.nonzero,
        "antisymmetric_12": _antisymmetric_12(f),
        "euler_match": _euler_match(f, ctx, _FAMILY_TAU[family](N)) if family in _FAMILY_TAU else None,
        "rank": module_rank(f, ctx).rank if N <= 5 and v.nonzero else None,
    }
    text = json.dumps(to_json(f), sort_keys=True)
    digest = "sha256:" + hashlib.sha256(text.encode()).hexdigest()
    recorded = data.get("checks", {})
    consistent = digest == data.get("hash", digest) and all(
        recorded.get(k) == checks[k] for k in checks if k in recorded
    )
    return {"checks": checks, "singular": v.singular, "consistent": consistent}
