from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from conftest import rationals, scalars
from singpoly.errors import DegenerateParameterError, ParseError, PoleError
from singpoly.field import (
    KAPPA,
    Scalar,
    binomial,
    format_rational,
    hyp_terminating,
    kp_divexact,
    kp_gcd,
    kp_mul,
    parse_rational,
    pochhammer,
    specialize,
)


def value(s, k0):
    """Evaluate a Scalar at kappa = k0 with plain Fractions (None at a pole)."""
    num = sum(Fraction(c) * k0 ** i for i, c in enumerate(s.num))
    den = sum(Fraction(c) * k0 ** i for i, c in enumerate(s.den))
    return None if den == 0 else num / den


def test_pochhammer_examples():
    assert pochhammer(KAPPA, 0) == 1
    assert pochhammer(Fraction(7, 3), 0) == 1
    assert pochhammer(2, 3) == 24
    assert pochhammer(KAPPA, 2) == KAPPA * KAPPA + KAPPA


def test_pochhammer_keeps_fraction_type():
    assert isinstance(pochhammer(Fraction(1, 2), 0), Fraction)
    assert pochhammer(Fraction(-1, 2), 2) == Fraction(-1, 4)


def test_binomial_examples():
    assert binomial(5, 0) == 1
    assert binomial(4, 2) == 6
    assert binomial(3, 5) == 0
    assert binomial(3, -1) == 0


def test_specialize_examples():
    assert specialize(KAPPA * KAPPA + KAPPA, Fraction(1, 2)) == Fraction(3, 4)
    with pytest.raises(PoleError):
        specialize(1 / (KAPPA + 1), -1)
    assert specialize(Scalar.coerce(7), Fraction(5, 9)) == 7


def test_hyp_terminating_examples():
    assert hyp_terminating([], [], 5, 0) == 1
    assert hyp_terminating([-1, -1], [-2], 2, 1) == 0


def test_hyp_terminating_dougall_instance():
    N, m, n, k = 3, 2, 1, Fraction(1, 3)
    d = m - n
    numer = [-n, -k, N * k + 1 + m, d, Fraction(d, 2) + 1]
    denom = [m + 1, k + d + 1, -N * k - n, Fraction(d, 2)]
    closed = pochhammer(d + 1, n) * pochhammer(-N * k + k - n, n) / (
        pochhammer(k + d + 1, n) * pochhammer(-N * k - n, n)
    )
    assert hyp_terminating(numer, denom, 1, n) == closed


@pytest.mark.parametrize("n", range(6))
def test_hyp_terminating_chu_vandermonde(n):
    # 2F1(-n, b; c; 1) = (c - b)_n / (c)_n
    b, c = Fraction(2, 7), Fraction(9, 5)
    assert hyp_terminating([-n, b], [c], 1, n) == pochhammer(c - b, n) / pochhammer(c, n)


def test_hyp_terminating_generic_kappa():
    # same identity with b = kappa
    c = Fraction(5, 2)
    got = hyp_terminating([-3, KAPPA], [c], 1, 3)
    assert got == pochhammer(c - KAPPA, 3) / pochhammer(c, 3)


def test_hyp_terminating_degenerate():
    with pytest.raises(DegenerateParameterError):
        hyp_terminating([-3], [-1], 1, 3)


def test_parse_and_format():
    assert parse_rational("-3/6") == Fraction(-1, 2)
    assert parse_rational(" 4 ") == 4
    assert format_rational(Fraction(-1, 2)) == "-1/2"
    assert format_rational(3) == "3/1"
    for bad in ("", "1/0", "a/2", "1//2", "1.5"):
        with pytest.raises(ParseError):
            parse_rational(bad)


def test_scalar_canonical_form():
    s = Scalar([2, 2], [4, 4])  # (2+2k)/(4+4k) = 1/2
    assert s.is_constant() and s.to_rational() == Fraction(1, 2)
    t = Scalar([1], [-1, -1])
    assert t.den[-1] > 0
    assert Scalar([0, 1], [1]) == KAPPA
    assert hash(Scalar([3, 3], [6])) == hash(Scalar([1, 1], [2]))


def test_scalar_json_roundtrip():
    s = (KAPPA + 1) / (2 * KAPPA - 3)
    assert Scalar.from_json(s.to_json()) == s


def test_scalar_str():
    assert str(Scalar.coerce(Fraction(-2, 3))) == "-2/3"
    assert str(KAPPA * 3 + 1) == "3*kappa + 1"


@given(scalars(), scalars(), scalars())
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0
    if a:
        assert a * a.inverse() == 1


@given(scalars(), scalars(), rationals)
def test_specialization_is_a_homomorphism(a, b, k0):
    va, vb = value(a, k0), value(b, k0)
    assume(va is not None and vb is not None)
    assert value(a + b, k0) == va + vb
    assert value(a * b, k0) == va * vb


@given(st.lists(st.integers(-4, 4), min_size=1, max_size=4), st.lists(st.integers(-4, 4), min_size=1, max_size=4))
def test_kp_gcd_divides(a, b):
    # kpolys carry no trailing zeros
    a, b = tuple(a), tuple(b)
    while a and not a[-1]:
        a = a[:-1]
    while b and not b[-1]:
        b = b[:-1]
    assume(a and b)
    g = kp_gcd(a, b)
    for x in (a, b):
        q = kp_divexact(x, g)
        assert Scalar(kp_mul(q, g)) == Scalar(x)


@given(scalars(), st.integers(0, 5))
def test_pochhammer_reversal(a, n):
    # (a - n)_n = (-1)^n (1 - a)_n
    assert pochhammer(a - n, n) == (-1) ** n * pochhammer(1 - a, n)


@given(scalars(), st.integers(0, 5), st.integers(0, 5))
def test_pochhammer_splitting(a, m, n):
    assume(n <= m)
    assert pochhammer(a, m) == pochhammer(a, m - n) * pochhammer(a + m - n, n)
