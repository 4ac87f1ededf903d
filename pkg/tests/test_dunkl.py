from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import polynomials
from singpoly.dunkl import (
    DunklContext,
    Partition,
    alternating,
    cherednik,
    dunkl,
    euler_dunkl,
    mu,
    partitions,
)
from singpoly.errors import DimensionMismatch, EvenPowerError, InvalidPartition
from singpoly.field import KAPPA
from singpoly.polyring import Polynomial, divided_difference, partial, permute, transpose
from singpoly.polyring import Permutation


def xs(N):
    return [Polynomial.variable(N, i) for i in range(1, N + 1)]


@pytest.mark.parametrize("N", [2, 3, 5])
def test_dunkl_examples(N):
    ctx = DunklContext(N)
    x = xs(N)
    assert dunkl(1, Polynomial.constant(N, 1), ctx).is_zero()
    assert dunkl(1, x[0], ctx) == Polynomial.constant(N, 1 + (N - 1) * KAPPA)
    assert dunkl(1, sum(x[1:], x[0]), ctx) == Polynomial.constant(N, 1)


def test_dunkl_matches_expansion():
    # spelled out: derivative plus kappa times the divided differences
    N = 3
    ctx = DunklContext(N)
    x = xs(N)
    f = x[0] ** 3 * x[1] - x[2] ** 2 * x[0] + 5
    want = partial(f, 2) + (divided_difference(f, 2, 1) + divided_difference(f, 2, 3)).scale(KAPPA)
    assert dunkl(2, f, ctx) == want


def test_dunkl_specialized_matches_generic():
    x = xs(4)
    f = x[0] ** 2 * x[3] + x[1] * x[2] * x[3] - 2 * x[2] ** 3
    k0 = Fraction(-2, 3)
    gen = dunkl(3, f, DunklContext(4))
    assert gen.specialize(k0) == dunkl(3, f, DunklContext(4, k0))


def test_dunkl_errors():
    ctx = DunklContext(3)
    with pytest.raises(IndexError):
        dunkl(4, xs(3)[0], ctx)
    with pytest.raises(DimensionMismatch):
        dunkl(1, xs(2)[0], ctx)


def test_context():
    assert DunklContext.parse(3, "generic").generic
    ctx = DunklContext.parse(3, "-1/2")
    assert ctx.kappa == Fraction(-1, 2) and ctx.label == "-1/2"
    with pytest.raises(ValueError):
        DunklContext(1)


def test_euler_dunkl_examples():
    N = 4
    ctx = DunklContext(N)
    x = xs(N)
    assert euler_dunkl(Polynomial.constant(N, 1), ctx).is_zero()
    s = sum(x[1:], x[0])
    assert euler_dunkl(s, ctx) == s
    a = alternating(N)
    assert euler_dunkl(a, ctx) == a.scale(N * (N - 1) // 2 + KAPPA * N * (N - 1))


@pytest.mark.parametrize("N", [3, 4, 5, 6])
def test_mu_values(N):
    assert mu(Partition((N - 1, 1))) == N
    assert mu(Partition((N - 2, 1, 1))) == 2 * N
    assert mu(Partition((N,))) == 0
    assert mu(Partition((1,) * N)) == N * (N - 1)
    if N >= 4:
        assert mu(Partition((N - 2, 2))) == 2 * N - 2


def test_mu_matches_class_sum_on_alternating():
    # sum_{i<j} (1 - (i,j)) a_N = N(N-1) a_N
    N = 4
    a = alternating(N)
    total = Polynomial.zero(N)
    for i in range(1, N + 1):
        for j in range(i + 1, N + 1):
            total = total + a - transpose(a, i, j)
    assert total == a.scale(mu(Partition((1,) * N)))


def test_partitions():
    assert list(partitions(4)) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    with pytest.raises(InvalidPartition):
        Partition((1, 2))
    with pytest.raises(InvalidPartition):
        Partition((2, 0))


def test_cherednik_examples():
    N = 3
    ctx = DunklContext(N)
    one = Polynomial.constant(N, 1)
    assert cherednik(1, one, ctx) == one.scale(1 + (N - 1) * KAPPA)
    with pytest.raises(IndexError):
        cherednik(0, one, ctx)


def test_alternating_examples():
    x = xs(2)
    assert alternating(2) == x[0] - x[1]
    a = alternating(4)
    for i, j in [(1, 2), (2, 4), (1, 3)]:
        assert transpose(a, i, j) == -a
    assert alternating(3, 3).degrees() == [9]
    with pytest.raises(EvenPowerError):
        alternating(3, 2)


@pytest.mark.parametrize("N,l", [(3, 0), (3, 1), (4, 0)])
def test_alternating_is_singular_at_half_integers(N, l):
    ctx = DunklContext(N, Fraction(-(2 * l + 1), 2))
    a = alternating(N, 2 * l + 1)
    for i in range(1, N + 1):
        assert dunkl(i, a, ctx).is_zero()


@pytest.mark.parametrize("N,l", [(3, 0), (3, 1), (4, 0)])
def test_alternating_identity(N, l):
    ctx = DunklContext(N)
    a = alternating(N, 2 * l + 1)
    for i in range(1, N + 1):
        assert dunkl(i, a, ctx) == partial(a, i).scale((2 * l + 1 + 2 * KAPPA) / (2 * l + 1))


@given(polynomials(nvars=4, max_degree=4), st.integers(1, 4), st.integers(1, 4))
def test_commutativity(f, i, j):
    ctx = DunklContext(4)
    assert dunkl(i, dunkl(j, f, ctx), ctx) == dunkl(j, dunkl(i, f, ctx), ctx)


@given(polynomials(nvars=3, max_degree=2), polynomials(nvars=3, max_degree=2), st.integers(1, 3))
def test_product_rule(f, g, i):
    ctx = DunklContext(3)
    rhs = f * dunkl(i, g, ctx) + partial(f, i) * g
    for j in range(1, 4):
        if j != i:
            rhs = rhs + (divided_difference(f, i, j) * transpose(g, i, j)).scale(KAPPA)
    assert dunkl(i, f * g, ctx) == rhs


@given(polynomials(nvars=4, max_degree=4, with_kappa=True))
def test_euler_decomposition(f):
    ctx = DunklContext(4)
    rhs = Polynomial.zero(4)
    for i in range(1, 5):
        rhs = rhs + partial(f, i).times_variable(i)
        for j in range(i + 1, 5):
            rhs = rhs + (f - transpose(f, i, j)).scale(KAPPA)
    assert euler_dunkl(f, ctx) == rhs


@given(polynomials(nvars=3, max_degree=4), st.permutations([1, 2, 3]), st.integers(1, 3))
def test_equivariance(f, images, i):
    # w D_i w^{-1} = D_{w(i)}
    ctx = DunklContext(3)
    w = Permutation(tuple(images))
    assert permute(w, dunkl(i, f, ctx)) == dunkl(w(i), permute(w, f), ctx)
