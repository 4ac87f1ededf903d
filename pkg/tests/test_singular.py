import json
import random
from fractions import Fraction
from math import comb

import pytest

from singpoly.dunkl import DunklContext, Partition, alternating
from singpoly.errors import DivisibilityError, DomainError, GcdError, ParseError
from singpoly.polyring import Permutation, Polynomial, permute, random_polynomial
from singpoly.singular import (
    family_half,
    family_n0,
    family_nn,
    is_singular,
    module_rank,
    singular_values,
    verify_certificate,
)

HALF = Fraction(1, 2)
CHECK_KEYS = {"dunkl_zero", "nonzero", "antisymmetric_12", "euler_match", "rank"}
TOP_KEYS = {"family", "params", "N", "kappa", "label", "degree", "checks", "polynomial"}


def dense_rank(polys):
    """Rank over Q by plain Gaussian elimination on a dense Fraction matrix."""
    cols = sorted({e for f in polys for e in f.terms()})
    rows = [[f.coefficient(e).to_rational() for e in cols] for f in polys]
    rank = 0
    for c in range(len(cols)):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][c]:
                t = rows[r][c] / rows[rank][c]
                rows[r] = [a - t * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def test_is_singular_examples():
    a = alternating(3)
    assert is_singular(a, DunklContext(3, -HALF)).singular
    v = is_singular(a, DunklContext(3, 1))
    assert not v.singular and sorted(v.residuals) == [1, 2, 3]
    assert v.dunkl_zero(3) == [False, False, False]
    c = is_singular(Polynomial.constant(3, 1), DunklContext(3, 2))
    assert c.singular and c.degenerate
    z = is_singular(Polynomial.zero(3), DunklContext(3, 2))
    assert not z.singular and not z.nonzero
    with pytest.raises(ValueError):
        is_singular(a, DunklContext(3))


def test_singular_values_examples():
    assert singular_values(2, 3) == {Fraction(-1, 2), Fraction(-3, 2)}
    assert singular_values(3, 2) == {Fraction(-1, 2), Fraction(-1, 3), Fraction(-2, 3)}
    assert all(v.denominator > 1 for v in singular_values(6, 20))


def test_family_n0_examples():
    cert = family_n0(1, 2)
    x1, x2 = Polynomial.variable(2, 1), Polynomial.variable(2, 2)
    assert cert.polynomial == (x1 - x2).scale(HALF)
    assert cert.kappa == -HALF and cert.passed
    assert family_n0(2, 3).verdict.singular
    assert family_n0(2, 3).kappa == Fraction(-2, 3)
    with pytest.raises(DivisibilityError):
        family_n0(3, 3)
    with pytest.raises(DomainError):
        family_n0(0, 3)


@pytest.mark.parametrize("n,N", [(1, 4), (1, 5), (3, 5)])
def test_family_nn(n, N):
    cert = family_nn(n, N)
    assert cert.passed
    assert cert.extras["rank"] == N * (N - 3) // 2
    assert cert.kappa == Fraction(-n, N - 1)


def test_family_nn_rejections():
    with pytest.raises(GcdError):
        family_nn(2, 5)
    with pytest.raises(DomainError):
        family_nn(1, 3)


@pytest.mark.parametrize("l,m", [(0, 1), (1, 1), (0, 2)])
def test_family_half(l, m):
    cert = family_half(l, m)
    N = 2 * m + 1
    assert cert.passed
    assert cert.verdict.singular
    assert cert.extras["antisymmetric_12"]
    assert cert.extras["rank"] == comb(N - 1, 2)
    assert cert.kappa == -l - HALF


def test_family_half_small_is_alternating():
    f = family_half(0, 1).polynomial
    assert f.is_proportional(alternating(3)) is not None


def test_certificate_schema():
    data = family_half(0, 1).to_json()
    assert TOP_KEYS <= set(data)
    assert set(data["checks"]) == CHECK_KEYS
    assert data["kappa"] == "-1/2"
    assert data["label"] == [2, 1] and data["degree"] == 3
    assert data["checks"]["dunkl_zero"] == [True] * 3
    assert data["hash"].startswith("sha256:")
    json.dumps(data)


@pytest.mark.parametrize("build", [lambda: family_n0(2, 3), lambda: family_nn(1, 4), lambda: family_half(0, 2)])
def test_verify_certificate_roundtrip(build):
    data = build().to_json()
    result = verify_certificate(json.dumps(data))
    assert result["consistent"] and result["singular"]
    assert result["checks"] == data["checks"]


def test_verify_certificate_detects_tampering():
    data = family_n0(2, 3).to_json()
    bad = json.loads(json.dumps(data))
    bad["polynomial"]["terms"][0]["coef"] = "7/1"
    result = verify_certificate(bad)
    assert not result["consistent"] and not result["singular"]

    wrong_kappa = dict(data, kappa="-1/3")
    assert not verify_certificate(wrong_kappa)["consistent"]

    lying = json.loads(json.dumps(data))
    lying["checks"]["rank"] = 99
    lying.pop("hash")
    assert not verify_certificate(lying)["consistent"]


def test_verify_certificate_parse_errors():
    with pytest.raises(ParseError):
        verify_certificate("{not json")
    with pytest.raises(ParseError):
        verify_certificate({"N": 3})


def test_module_rank_examples():
    ctx = DunklContext(3, -HALF)
    r = module_rank(alternating(3), ctx)
    assert r.rank == 1
    assert r.euler_eigen == 0
    assert Partition((1, 1, 1)) in r.isotype_candidates
    for N in (2, 3, 4):
        s = sum((Polynomial.variable(N, i) for i in range(2, N + 1)), Polynomial.variable(N, 1))
        assert module_rank(s, DunklContext(N, 1)).rank == 1
    with pytest.raises(DomainError):
        module_rank(Polynomial.zero(3), ctx)
    with pytest.raises(DomainError):
        module_rank(Polynomial.variable(6, 1), DunklContext(6, 1))


def test_module_rank_matches_dense_elimination():
    rng = random.Random(3)
    for _ in range(15):
        N = rng.randint(2, 4)
        f = random_polynomial(rng, N, 3)
        if f.is_zero():
            continue
        images = [permute(w, f) for w in Permutation.all(N)]
        assert module_rank(f, DunklContext(N, 1)).rank == dense_rank(images)


def test_module_rank_generic_kappa():
    ctx = DunklContext(3)
    f = Polynomial.variable(3, 1).scale(ctx.k) + Polynomial.variable(3, 2)
    assert module_rank(f, ctx).rank == 3


def test_necessity_of_kappa_formula():
    # degree + kappa * mu(tau) = 0 for every candidate isotype of a certified polynomial
    for cert in (family_n0(3, 4), family_nn(1, 5), family_half(1, 1)):
        ctx = DunklContext(cert.N, cert.kappa)
        r = module_rank(cert.polynomial, ctx)
        assert r.euler_eigen == 0
        assert r.isotype_candidates


def test_singularity_is_group_invariant():
    rng = random.Random(0)
    cert = family_half(0, 2)
    ctx = DunklContext(cert.N, cert.kappa)
    for _ in range(10):
        images = list(range(1, cert.N + 1))
        rng.shuffle(images)
        assert is_singular(permute(Permutation(tuple(images)), cert.polynomial), ctx).singular
