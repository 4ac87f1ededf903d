"""Exact scalars: rationals and the rational function field Q(kappa).

Rationals are :class:`fractions.Fraction`.  Elements of Q(kappa) are
:class:`Scalar` values, stored as a reduced pair of integer-coefficient
polynomials in kappa (coefficient tuples in ascending degree).
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational as _RationalABC

from singpoly.errors import DegenerateParameterError, ParseError, PoleError

Rational = Fraction

__all__ = [
    "Rational",
    "Scalar",
    "KAPPA",
    "pochhammer",
    "binomial",
    "specialize",
    "hyp_terminating",
    "parse_rational",
    "format_rational",
]


# -- integer polynomials in kappa ------------------------------------------
# A kpoly is a tuple of ints, ascending degree, no trailing zeros; () is zero.

def _trim(c):
    c = list(c)
    while c and not c[-1]:
        c.pop()
    return tuple(c)


def kp_add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, v in enumerate(b):
        out[i] += v
    return _trim(out)


def kp_neg(a):
    return tuple(-v for v in a)


def kp_sub(a, b):
    return kp_add(a, kp_neg(b))


def kp_scale(a, k):
    if not k:
        return ()
    return tuple(v * k for v in a)


def kp_mul(a, b):
    if not a or not b:
        return ()
    if len(a) == 1:
        return kp_scale(b, a[0])
    if len(b) == 1:
        return kp_scale(a, b[0])
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def kp_content(a):
    return math.gcd(*a) if a else 0


def kp_primitive(a):
    """Primitive part with positive leading coefficient."""
    if not a:
        return ()
    g = kp_content(a)
    if a[-1] < 0:
        g = -g
    return tuple(v // g for v in a)


def _kp_prem(a, b):
    # pseudo-remainder of a by b in Z[kappa]
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(r) - 1 >= db and r:
        lead = r[-1]
        shift = len(r) - 1 - db
        r = [v * lb for v in r]
        for i, v in enumerate(b):
            r[i + shift] -= lead * v
        r = list(_trim(r))
    return tuple(r)


def kp_gcd(a, b):
    """Primitive gcd over Q[kappa], positive leading coefficient."""
    if not a:
        return kp_primitive(b)
    if not b:
        return kp_primitive(a)
    if len(a) == 1 or len(b) == 1:
        return (1,)
    a, b = kp_primitive(a), kp_primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _kp_prem(a, b)
        a, b = b, kp_primitive(r)
        if len(b) == 1:
            return (1,)
    return a


def kp_divexact(a, b):
    """Exact quotient a/b in Z[kappa]; raises ArithmeticError if inexact."""
    if not a:
        return ()
    if len(b) == 1:
        d = b[0]
        if any(v % d for v in a):
            raise ArithmeticError("inexact polynomial division")
        return tuple(v // d for v in a)
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    q = [0] * (len(a) - db) if len(a) > db else []
    while len(r) - 1 >= db and r:
        lead = r[-1]
        if lead % lb:
            raise ArithmeticError("inexact polynomial division")
        c = lead // lb
        shift = len(r) - 1 - db
        q[shift] = c
        for i, v in enumerate(b):
            r[i + shift] -= c * v
        r = list(_trim(r))
    if r:
        raise ArithmeticError("inexact polynomial division")
    return _trim(q)


def kp_lcm(a, b):
    g = kp_gcd(a, b)
    return kp_mul(kp_divexact(a, g), b)


def kp_eval(a, x):
    acc = 0
    for v in reversed(a):
        acc = acc * x + v
    return acc


def kp_from_rationals(coeffs):
    """Clear denominators: returns (int kpoly, positive int multiplier)."""
    coeffs = [Fraction(c) for c in coeffs]
    m = math.lcm(*(c.denominator for c in coeffs)) if coeffs else 1
    return _trim(int(c * m) for c in coeffs), m


# -- rationals ---------------------------------------------------------------

def parse_rational(text):
    """Parse ``"p/q"`` or ``"p"`` into a Fraction."""
    if isinstance(text, bool):
        raise ParseError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, Fraction):
        return text
    if not isinstance(text, str):
        raise ParseError(f"not a rational: {text!r}")
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ParseError(f"not a rational: {text!r}", 0) from None
    if q == 0:
        raise ParseError(f"zero denominator in {text!r}", len(num) + 1)
    return Fraction(p, q)


def format_rational(x):
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


# -- Scalar ------------------------------------------------------------------

def _reduce(num, den):
    if not den:
        raise ZeroDivisionError("zero denominator in Scalar")
    if not num:
        return (), (1,)
    if len(den) > 1:
        g = kp_gcd(num, den)
        if len(g) > 1:
            num = kp_divexact(num, g)
            den = kp_divexact(den, g)
    c = math.gcd(kp_content(num), kp_content(den))
    if den[-1] < 0:
        c = -c
    if c != 1:
        num = tuple(v // c for v in num)
        den = tuple(v // c for v in den)
    return num, den


class Scalar:
    """An element of Q(kappa) in canonical reduced form.

    ``Scalar(num, den)`` accepts coefficient sequences (ascending powers of
    kappa) of ints or Fractions; ``Scalar(3)`` and ``Scalar(Fraction(1, 2))``
    embed rationals.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=(), den=(1,)):
        if isinstance(num, (int, Fraction)):
            num = (num,)
        if isinstance(den, (int, Fraction)):
            den = (den,)
        n, mn = kp_from_rationals(num)
        d, md = kp_from_rationals(den)
        # num/mn / (den/md) = num*md / (den*mn)
        self.num, self.den = _reduce(kp_scale(n, md), kp_scale(d, mn))
        self._hash = None

    @classmethod
    def _raw(cls, num, den):
        obj = cls.__new__(cls)
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    @classmethod
    def _from_kp(cls, num, den):
        return cls._raw(*_reduce(num, den))

    @classmethod
    def coerce(cls, x):
        if isinstance(x, Scalar):
            return x
        if isinstance(x, int):
            return cls._raw(_trim((x,)), (1,))
        if isinstance(x, _RationalABC):
            x = Fraction(x)
            return cls._raw(_trim((x.numerator,)), (x.denominator,))
        raise TypeError(f"cannot coerce {type(x).__name__} to Scalar")

    @classmethod
    def kappa(cls):
        return cls._raw((0, 1), (1,))

    # structure
    def is_zero(self):
        return not self.num

    def is_constant(self):
        return len(self.num) <= 1 and len(self.den) == 1

    def is_polynomial(self):
        return len(self.den) == 1

    def to_rational(self):
        if not self.is_constant():
            raise ValueError(f"{self} depends on kappa")
        return Fraction(self.num[0] if self.num else 0, self.den[0])

    def specialize(self, kappa0):
        kappa0 = Fraction(kappa0)
        d = kp_eval(self.den, kappa0)
        if d == 0:
            raise PoleError(f"denominator of {self} vanishes at kappa = {kappa0}")
        return Fraction(kp_eval(self.num, kappa0)) / d

    # arithmetic
    def __add__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        a, b = self, other
        if len(a.den) == 1 and len(b.den) == 1:
            da, db = a.den[0], b.den[0]
            if da == db:
                return Scalar._from_kp(kp_add(a.num, b.num), a.den)
            return Scalar._from_kp(kp_add(kp_scale(a.num, db), kp_scale(b.num, da)), (da * db,))
        if a.den == b.den:
            return Scalar._from_kp(kp_add(a.num, b.num), a.den)
        g = kp_gcd(a.den, b.den)
        ca = kp_divexact(b.den, g)
        cb = kp_divexact(a.den, g)
        num = kp_add(kp_mul(a.num, ca), kp_mul(b.num, cb))
        return Scalar._from_kp(num, kp_mul(a.den, ca))

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(kp_neg(self.num), self.den)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        a, b = self, other
        if not a.num or not b.num:
            return Scalar._raw((), (1,))
        if len(a.den) == 1 and len(b.den) == 1:
            return Scalar._from_kp(kp_mul(a.num, b.num), (a.den[0] * b.den[0],))
        # cross-cancel before multiplying
        g1 = kp_gcd(a.num, b.den)
        g2 = kp_gcd(b.num, a.den)
        num = kp_mul(kp_divexact(a.num, g1), kp_divexact(b.num, g2))
        den = kp_mul(kp_divexact(a.den, g2), kp_divexact(b.den, g1))
        return Scalar._from_kp(num, den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("Scalar division by zero")
        return Scalar._from_kp(self.den, self.num)

    def __truediv__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Scalar.coerce(other) * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        out = Scalar._raw((1,), (1,))
        for _ in range(abs(k)):
            out = out * base
        return out

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.to_rational())
            else:
                self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self):
        return bool(self.num)

    def __repr__(self):
        return f"Scalar({list(self.num)}, {list(self.den)})"

    def __str__(self):
        n = _kp_str(self.num)
        if self.den == (1,):
            return n
        d = _kp_str(self.den)
        if _kp_nterms(self.num) > 1:
            n = f"({n})"
        if len(self.den) > 1:
            d = f"({d})"
        return f"{n}/{d}"

    # serialization
    def to_json(self):
        return {"num": list(self.num) or [0], "den": list(self.den)}

    @classmethod
    def from_json(cls, obj):
        try:
            num = [int(v) for v in obj["num"]]
            den = [int(v) for v in obj["den"]]
        except (KeyError, TypeError, ValueError):
            raise ParseError(f"malformed Scalar: {obj!r}") from None
        if not _trim(den):
            raise ParseError("Scalar denominator is zero")
        return cls(num, den)


def _kp_nterms(a):
    return sum(1 for v in a if v)


def _kp_str(a, var="kappa"):
    if not a:
        return "0"
    parts = []
    for k in range(len(a) - 1, -1, -1):
        c = a[k]
        if not c:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            mon = var if k == 1 else f"{var}^{k}"
            body = mon if mag == 1 else f"{mag}*{mon}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


KAPPA = Scalar.kappa()


# -- special values ----------------------------------------------------------

def pochhammer(a, n):
    """Rising factorial (a)_n = a (a+1) ... (a+n-1).

    Works for ints, Fractions and Scalars; the result has the type of ``a``
    (ints stay ints).
    """
    if n < 0:
        raise ValueError("pochhammer length must be nonnegative")
    out = a * 0 + 1
    for i in range(n):
        out = (a + i) * out
    return out


def binomial(n, k):
    if k < 0 or k > n or n < 0:
        return 0
    return math.comb(n, k)


def specialize(s, kappa0):
    """Evaluate a Scalar (or rational) at kappa = kappa0."""
    if isinstance(s, Scalar):
        return s.specialize(kappa0)
    return Fraction(s)


def _is_zero(x):
    return not x


def hyp_terminating(numer, denom, z, k_max):
    """Sum_{j=0}^{k_max} prod (a_i)_j / prod (b_i)_j * z^j / j!.

    Raises DegenerateParameterError if a lower parameter produces a zero
    denominator at a step whose upper-parameter term is nonzero.
    """
    term = Fraction(1)
    total = Fraction(1)
    for j in range(1, k_max + 1):
        up = 1
        for a in numer:
            up = (a + (j - 1)) * up
        if _is_zero(up):
            break
        down = 1
        for b in denom:
            down = (b + (j - 1)) * down
        if _is_zero(down):
            raise DegenerateParameterError(
                f"lower parameter Pochhammer vanishes at j = {j}"
            )
        term = term * up * z / (down * j)
        total = total + term
    return Scalar.coerce(total)
