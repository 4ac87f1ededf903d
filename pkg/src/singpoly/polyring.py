"""Sparse multivariate polynomials over Q(kappa) with the S_N action.

A :class:`Polynomial` is stored as an integer numerator plus a common
denominator in Z[kappa].  The numerator is a dict from packed keys to ints,
where a key carries the exponents of x_1..x_N and, in its lowest field, the
power of kappa.  Polynomials whose coefficients are plain rationals simply
never use that field.

Variable indices in the public API are 1-based.
"""
from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations

from singpoly import kernels
from singpoly.errors import DimensionMismatch, ParseError
from singpoly.field import (
    Scalar,
    format_rational,
    kp_divexact,
    kp_eval,
    kp_gcd,
    kp_mul,
    parse_rational,
)

__all__ = [
    "Layout",
    "Permutation",
    "Polynomial",
    "permute",
    "divided_difference",
    "partial",
    "evaluate",
    "serialize",
    "parse",
    "to_json",
    "from_json",
    "random_polynomial",
]


class Layout:
    """Bit layout of packed monomial keys for a given number of variables."""

    __slots__ = ("nvars", "width", "mask", "fits_word", "_shifts", "kern")

    def __init__(self, nvars):
        w = 62 // (nvars + 1)
        if w >= 8:
            self.fits_word = True
        else:
            w = 16
            self.fits_word = False
        self.nvars = nvars
        self.width = w
        self.mask = (1 << w) - 1
        # x_1 in the most significant field so that key order is lex order
        self._shifts = tuple(w * (nvars - i + 1) for i in range(1, nvars + 1))
        self.kern = kernels.for_layout(self)

    def shift(self, i):
        return self._shifts[i - 1]

    def unit(self, i):
        return 1 << self._shifts[i - 1]

    def pack(self, exps, kdeg=0):
        key = 0
        for e in exps:
            if e < 0 or e > self.mask:
                raise OverflowError(f"exponent {e} outside 0..{self.mask}")
            key = (key << self.width) | e
        return (key << self.width) | kdeg

    def unpack(self, key):
        m = self.mask
        return tuple((key >> s) & m for s in self._shifts), key & m

    def xdegree(self, key):
        m = self.mask
        return sum((key >> s) & m for s in self._shifts)

    def bounds(self, num):
        return self.kern.bounds(num, self._shifts, self.mask)

    def check_room(self, num, extra_x=0, extra_k=0, bounds=None):
        if not num or not (extra_x or extra_k):
            return
        bx, bk = bounds or self.bounds(num)
        if bk + extra_k > self.mask:
            raise OverflowError("kappa degree exceeds key layout")
        if bx + extra_x > self.mask:
            raise OverflowError("degree exceeds key layout")


@lru_cache(maxsize=None)
def layout(nvars):
    return Layout(nvars)


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1..N}; ``images[i-1]`` is w(i)."""

    images: tuple

    def __post_init__(self):
        imgs = tuple(int(v) for v in self.images)
        if sorted(imgs) != list(range(1, len(imgs) + 1)):
            raise ValueError(f"not a permutation of 1..{len(imgs)}: {imgs}")
        object.__setattr__(self, "images", imgs)

    @property
    def n(self):
        return len(self.images)

    def __call__(self, i):
        return self.images[i - 1]

    def __mul__(self, other):
        # (v*w)(j) = v(w(j))
        if self.n != other.n:
            raise DimensionMismatch("permutations of different degree")
        return Permutation(tuple(self(other(j)) for j in range(1, self.n + 1)))

    def inverse(self):
        inv = [0] * self.n
        for j, wj in enumerate(self.images, 1):
            inv[wj - 1] = j
        return Permutation(tuple(inv))

    def is_identity(self):
        return all(v == j for j, v in enumerate(self.images, 1))

    @classmethod
    def identity(cls, n):
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, i, j, n):
        if not (1 <= i <= n and 1 <= j <= n) or i == j:
            raise IndexError(f"invalid transposition ({i},{j}) for N={n}")
        imgs = list(range(1, n + 1))
        imgs[i - 1], imgs[j - 1] = j, i
        return cls(tuple(imgs))

    @classmethod
    def all(cls, n):
        return [cls(p) for p in permutations(range(1, n + 1))]


def _kp_as_dict(kp):
    return {e: c for e, c in enumerate(kp) if c}


def _normalize(num, den):
    """Divide out the integer content shared by numerator and denominator."""
    if not num:
        return {}, (1,)
    g = math.gcd(math.gcd(*num.values()), *den)
    if den[-1] < 0:
        g = -g
    if g != 1:
        num = {k: v // g for k, v in num.items()}
        den = tuple(v // g for v in den)
    return num, den


class Polynomial:
    """Immutable sparse polynomial in x_1..x_N with coefficients in Q(kappa)."""

    __slots__ = ("nvars", "_lay", "_num", "_den", "_terms", "_hash", "_bounds")

    def __init__(self, nvars, terms=None):
        if nvars < 1:
            raise ValueError("nvars must be positive")
        lay = layout(nvars)
        num, den = {}, (1,)
        if terms:
            items = []
            for exps, c in dict(terms).items():
                exps = tuple(int(e) for e in exps)
                if len(exps) != nvars:
                    raise DimensionMismatch(f"exponent {exps} has length != {nvars}")
                s = Scalar.coerce(c)
                if s:
                    items.append((exps, s))
            den = (1,)
            for _, s in items:
                if s.den != den:
                    g = kp_gcd(den, s.den)
                    den = kp_mul(den, kp_divexact(s.den, g))
            for exps, s in items:
                factor = kp_divexact(den, s.den)
                base = lay.pack(exps)
                for e, c in enumerate(kp_mul(s.num, factor)):
                    if c:
                        if e > lay.mask:
                            raise OverflowError("kappa degree exceeds key layout")
                        k = base + e
                        v = num.get(k, 0) + c
                        if v:
                            num[k] = v
                        else:
                            num.pop(k, None)
            num, den = _normalize(num, den)
        self.nvars = nvars
        self._lay = lay
        self._num = num
        self._den = den
        self._terms = None
        self._hash = None
        self._bounds = None

    @classmethod
    def _make(cls, nvars, num, den, normalize=True):
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj._lay = layout(nvars)
        if normalize:
            num, den = _normalize(num, den)
        obj._num = num
        obj._den = den
        obj._terms = None
        obj._hash = None
        obj._bounds = None
        return obj

    # constructors
    @classmethod
    def zero(cls, nvars):
        return cls._make(nvars, {}, (1,), False)

    @classmethod
    def constant(cls, nvars, c=1):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, nvars, exps, c=1):
        return cls(nvars, {tuple(exps): c})

    @classmethod
    def variable(cls, nvars, i):
        if not 1 <= i <= nvars:
            raise IndexError(f"variable index {i} outside 1..{nvars}")
        exps = [0] * nvars
        exps[i - 1] = 1
        return cls(nvars, {tuple(exps): 1})

    # structure
    @property
    def layout(self):
        return self._lay

    def is_zero(self):
        return not self._num

    def __bool__(self):
        return bool(self._num)

    def has_kappa(self):
        return self._degree_bounds()[1] > 0

    def kappa_degree(self):
        return self._degree_bounds()[1]

    def degree(self):
        """Total degree in x; -1 for the zero polynomial."""
        if not self._num:
            return -1
        return self._degree_bounds()[0]

    def degrees(self):
        return sorted({self._lay.xdegree(k) for k in self._num})

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    def __len__(self):
        return len(self.terms())

    def terms(self):
        """Mapping of exponent tuples to reduced Scalar coefficients."""
        if self._terms is None:
            lay = self._lay
            m = lay.mask
            groups = {}
            for k, c in self._num.items():
                e = k & m
                groups.setdefault(k - e, {})[e] = c
            out = {}
            for xk in sorted(groups, reverse=True):
                g = groups[xk]
                kp = tuple(g.get(e, 0) for e in range(max(g) + 1))
                out[lay.unpack(xk)[0]] = Scalar._from_kp(kp, self._den)
            self._terms = out
        return self._terms

    def coefficient(self, exps):
        return self.terms().get(tuple(exps), Scalar.coerce(0))

    def leading_exponent(self):
        t = self.terms()
        return next(iter(t)) if t else None

    # arithmetic
    def _check_same(self, other):
        if self.nvars != other.nvars:
            raise DimensionMismatch(f"nvars {self.nvars} != {other.nvars}")

    def _combine(self, other, sign):
        kern = self._lay.kern
        d1, d2 = self._den, other._den
        if d1 == d2:
            return Polynomial._make(self.nvars, kern.add_scaled(self._num, other._num, 1, sign), d1)
        if len(d1) == 1 and len(d2) == 1:
            a, b = d1[0], d2[0]
            g = math.gcd(a, b)
            num = kern.add_scaled(self._num, other._num, b // g, sign * (a // g))
            return Polynomial._make(self.nvars, num, (a * (b // g),))
        g = kp_gcd(d1, d2)
        c1 = kp_divexact(d2, g)
        c2 = kp_divexact(d1, g)
        n1 = self._mul_kp(self, c1)
        n2 = self._mul_kp(other, c2)
        return Polynomial._make(self.nvars, kern.add_scaled(n1, n2, 1, sign), kp_mul(d1, c1))

    def _degree_bounds(self):
        if self._bounds is None:
            self._bounds = self._lay.bounds(self._num)
        return self._bounds

    @staticmethod
    def _mul_kp(f, kp):
        """Numerator of f times the kappa polynomial kp."""
        lay = f._lay
        if len(kp) == 1:
            return lay.kern.scale(f._num, kp[0])
        lay.check_room(f._num, extra_k=len(kp) - 1, bounds=f._degree_bounds())
        return lay.kern.mul(f._num, _kp_as_dict(kp))

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            try:
                other = Polynomial.constant(self.nvars, other)
            except TypeError:
                return NotImplemented
        self._check_same(other)
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            try:
                other = Polynomial.constant(self.nvars, other)
            except TypeError:
                return NotImplemented
        self._check_same(other)
        return self._combine(other, -1)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Polynomial._make(self.nvars, self._lay.kern.scale(self._num, -1), self._den, False)

    def __pos__(self):
        return self

    def scale(self, c):
        """Multiply by a rational or a Scalar."""
        s = Scalar.coerce(c)
        if not s:
            return Polynomial.zero(self.nvars)
        s_num, den0 = s.num, self._den
        if len(den0) > 1 and len(s_num) > 1:
            # cancel kappa factors the scalar numerator shares with our denominator
            g = kp_gcd(s_num, den0)
            if len(g) > 1:
                s_num = kp_divexact(s_num, g)
                den0 = kp_divexact(den0, g)
        num = self._mul_kp(self, s_num)
        return Polynomial._make(self.nvars, num, kp_mul(den0, s.den))

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            self._check_same(other)
            lay = self._lay
            if other._num and self._num:
                ox, ok = other._degree_bounds()
                lay.check_room(self._num, ox, ok, self._degree_bounds())
            num = lay.kern.mul(self._num, other._num)
            return Polynomial._make(self.nvars, num, kp_mul(self._den, other._den))
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, Polynomial):
            return NotImplemented
        return self.scale(Scalar.coerce(other).inverse())

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = Polynomial.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def times_monomial(self, exps, kdeg=0):
        """Multiply by x^exps * kappa^kdeg."""
        lay = self._lay
        lay.check_room(self._num, extra_x=sum(exps), extra_k=kdeg)
        return Polynomial._make(self.nvars, lay.kern.shift(self._num, lay.pack(exps, kdeg)), self._den, False)

    def times_variable(self, i):
        lay = self._lay
        lay.check_room(self._num, extra_x=1)
        return Polynomial._make(self.nvars, lay.kern.shift(self._num, lay.unit(i)), self._den, False)

    def times_kappa(self):
        lay = self._lay
        lay.check_room(self._num, extra_k=1)
        return Polynomial._make(self.nvars, lay.kern.shift(self._num, 1), self._den, False)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            if self.nvars != other.nvars:
                return False
            if self._den == other._den:
                return self._num == other._num
            return (self - other).is_zero()
        try:
            return (self - other).is_zero()
        except (TypeError, DimensionMismatch):
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, tuple(self.terms().items())))
        return self._hash

    def is_proportional(self, other):
        """Return the scalar c with self == c*other, or None."""
        self._check_same(other)
        if other.is_zero():
            return Scalar.coerce(0) if self.is_zero() else None
        lead = other.leading_exponent()
        c = self.coefficient(lead) / other.coefficient(lead)
        return c if self == other.scale(c) else None

    def specialize(self, kappa0):
        """Substitute the rational kappa0 for kappa."""
        kappa0 = Fraction(kappa0)
        if not self.has_kappa() and len(self._den) == 1:
            return self
        dval = Fraction(kp_eval(self._den, kappa0))
        if dval == 0:
            from singpoly.errors import PoleError

            raise PoleError(f"polynomial denominator vanishes at kappa = {kappa0}")
        lay = self._lay
        p, q = kappa0.numerator, kappa0.denominator
        top = self.kappa_degree()
        num = lay.kern.specialize(self._num, p, q, top, lay.mask)
        num = lay.kern.scale(num, dval.denominator)
        return Polynomial._make(self.nvars, num, (dval.numerator * q ** top,))

    def __repr__(self):
        return f"Polynomial({self.nvars}, {serialize(self)})"

    def __str__(self):
        t = self.terms()
        if not t:
            return "0"
        parts = []
        for exps, c in t.items():
            mon = "*".join(
                f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(exps, 1) if e
            )
            cs = str(c)
            if c.is_constant():
                if mon and cs in ("1", "-1"):
                    body = ("-" if cs == "-1" else "") + mon
                else:
                    body = f"{cs}*{mon}" if mon else cs
            else:
                body = f"({cs})*{mon}" if mon else f"({cs})"
            parts.append(body)
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


# -- operations --------------------------------------------------------------

def _check_index(i, n):
    if not isinstance(i, int) or not 1 <= i <= n:
        raise IndexError(f"index {i} outside 1..{n}")


def permute(w, f):
    """The S_N action: x^alpha -> x^{w alpha}, exponent at j moves to w(j)."""
    if w.n != f.nvars:
        raise DimensionMismatch(f"permutation of {w.n} letters on {f.nvars} variables")
    lay = f.layout
    moved = [(lay.shift(j), lay.shift(w(j))) for j in range(1, w.n + 1) if w(j) != j]
    if not moved:
        return f
    src, dst = zip(*moved)
    return Polynomial._make(f.nvars, lay.kern.permute(f._num, src, dst, lay.mask), f._den, False)


def transpose(f, i, j):
    return permute(Permutation.transposition(i, j, f.nvars), f)


def divided_difference(f, i, j):
    """(f - (i,j) f) / (x_i - x_j), by the closed monomial rule."""
    _check_index(i, f.nvars)
    _check_index(j, f.nvars)
    if i == j:
        raise IndexError("divided difference needs i != j")
    lay = f.layout
    num = lay.kern.divided_difference(f._num, lay.shift(i), lay.shift(j), lay.mask)
    return Polynomial._make(f.nvars, num, f._den)


def partial(f, i):
    _check_index(i, f.nvars)
    lay = f.layout
    return Polynomial._make(f.nvars, lay.kern.partial(f._num, lay.shift(i), lay.mask), f._den)


def evaluate(f, point):
    """Substitute rational values for x_1..x_N; the result may carry kappa."""
    point = [parse_rational(v) if isinstance(v, str) else Fraction(v) for v in point]
    if len(point) != f.nvars:
        raise DimensionMismatch(f"point of length {len(point)} for {f.nvars} variables")
    lay = f.layout
    acc = {}
    for k, c in f._num.items():
        exps, e = lay.unpack(k)
        v = Fraction(c)
        for x, a in zip(point, exps):
            if a:
                v *= x ** a
                if not v:
                    break
        if v:
            acc[e] = acc.get(e, 0) + v
    if not acc:
        return Scalar.coerce(0)
    kp = [acc.get(e, 0) for e in range(max(acc) + 1)]
    return Scalar(kp, 1) / Scalar._raw(f._den, (1,))


def restrict_vars(f, keep):
    """Set x_i = 0 for i > keep and drop those variables."""
    if keep > f.nvars or keep < 1:
        raise DimensionMismatch(f"cannot restrict {f.nvars} variables to {keep}")
    out = {}
    for exps, c in f.terms().items():
        if not any(exps[keep:]):
            out[exps[:keep]] = c
    return Polynomial(keep, out)


# -- serialization -----------------------------------------------------------

def _coef_json(c):
    if c.is_constant():
        return format_rational(c.to_rational())
    return c.to_json()


def to_json(f):
    return {
        "nvars": f.nvars,
        "terms": [{"exp": list(exps), "coef": _coef_json(c)} for exps, c in f.terms().items()],
    }


def serialize(f):
    return json.dumps(to_json(f))


def _parse_coef(obj, where):
    if isinstance(obj, dict):
        try:
            return Scalar.from_json(obj)
        except ParseError as e:
            raise ParseError(f"{where}: {e}") from None
    if isinstance(obj, bool):
        raise ParseError(f"{where}: boolean coefficient")
    if isinstance(obj, (int, str)):
        try:
            return Scalar.coerce(parse_rational(obj))
        except ParseError as e:
            raise ParseError(f"{where}: {e}") from None
    raise ParseError(f"{where}: unsupported coefficient {obj!r}")


def from_json(obj):
    if not isinstance(obj, dict) or "nvars" not in obj or "terms" not in obj:
        raise ParseError("expected an object with 'nvars' and 'terms'", "$")
    n = obj["nvars"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ParseError(f"invalid nvars {n!r}", "$.nvars")
    if not isinstance(obj["terms"], list):
        raise ParseError("'terms' must be a list", "$.terms")
    terms = {}
    lay = layout(n)
    for idx, t in enumerate(obj["terms"]):
        where = f"$.terms[{idx}]"
        if not isinstance(t, dict) or "exp" not in t or "coef" not in t:
            raise ParseError("term needs 'exp' and 'coef'", where)
        exps = t["exp"]
        if (
            not isinstance(exps, list)
            or len(exps) != n
            or not all(isinstance(e, int) and not isinstance(e, bool) and 0 <= e <= lay.mask for e in exps)
        ):
            raise ParseError(f"bad exponent vector {exps!r}", where + ".exp")
        c = _parse_coef(t["coef"], where + ".coef")
        key = tuple(exps)
        terms[key] = terms.get(key, 0) + c
    return Polynomial(n, terms)


def parse(text):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg}", e.pos) from None
    return from_json(obj)


# -- sampling ----------------------------------------------------------------

def random_polynomial(rng: random.Random, nvars, max_degree, nterms=None, coef_range=3, degree=None):
    """Sparse polynomial with integer coefficients in [-coef_range, coef_range].

    If ``degree`` is given every term has exactly that degree.
    """
    if nterms is None:
        nterms = rng.randint(1, 6)
    terms = {}
    for _ in range(nterms):
        d = degree if degree is not None else rng.randint(0, max_degree)
        exps = [0] * nvars
        for _ in range(d):
            exps[rng.randrange(nvars)] += 1
        c = 0
        while c == 0:
            c = rng.randint(-coef_range, coef_range)
        terms[tuple(exps)] = c
    return Polynomial(nvars, terms)
