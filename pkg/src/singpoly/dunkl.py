"""Dunkl operators of the symmetric group and related operators."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from singpoly.errors import DimensionMismatch, EvenPowerError, InvalidPartition
from singpoly.field import KAPPA, binomial, format_rational, parse_rational
from singpoly.polyring import Permutation, Polynomial, permute

__all__ = [
    "DunklContext",
    "Partition",
    "partitions",
    "dunkl",
    "euler_dunkl",
    "mu",
    "cherednik",
    "alternating",
]


@dataclass(frozen=True)
class DunklContext:
    """Number of variables N and the kappa mode.

    ``kappa=None`` computes with kappa as a formal symbol; a rational value
    specializes every computation to that value.
    """

    N: int
    kappa: Optional[Fraction] = None

    def __post_init__(self):
        if self.N < 2:
            raise ValueError("DunklContext needs N >= 2")
        if self.kappa is not None:
            k = self.kappa
            if isinstance(k, str):
                k = parse_rational(k)
            object.__setattr__(self, "kappa", Fraction(k))

    @classmethod
    def parse(cls, N, text):
        if text is None or str(text).strip().lower() == "generic":
            return cls(N)
        return cls(N, parse_rational(text))

    @property
    def generic(self):
        return self.kappa is None

    @property
    def k(self):
        """kappa as a field element: the Scalar symbol or the rational value."""
        return KAPPA if self.kappa is None else self.kappa

    @property
    def label(self):
        return "generic" if self.kappa is None else format_rational(self.kappa)

    def with_N(self, N):
        return DunklContext(N, self.kappa)

    def coerce(self, f):
        if f.nvars != self.N:
            raise DimensionMismatch(f"polynomial in {f.nvars} variables, context N={self.N}")
        if self.kappa is not None:
            return f.specialize(self.kappa)
        return f


@dataclass(frozen=True)
class Partition:
    parts: tuple

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if not parts or any(p <= 0 for p in parts) or any(a < b for a, b in zip(parts, parts[1:])):
            raise InvalidPartition(f"not a partition: {self.parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def n(self):
        return sum(self.parts)

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"


def partitions(n, max_part=None):
    """All partitions of n, in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def _combine_kappa(ctx, f, plain, kpart):
    """plain + kappa*kpart, both carrying f's denominator."""
    lay = f.layout
    kern = lay.kern
    if ctx.kappa is None:
        lay.check_room(kpart, extra_k=1)
        num = kern.add_scaled(plain, kern.shift(kpart, 1), 1, 1)
        return Polynomial._make(f.nvars, num, f._den)
    p, q = ctx.kappa.numerator, ctx.kappa.denominator
    num = kern.add_scaled(plain, kpart, q, p)
    return Polynomial._make(f.nvars, num, tuple(v * q for v in f._den))


def dunkl(i, f, ctx):
    """D_i f = df/dx_i + kappa * sum_{j != i} (f - (i,j) f) / (x_i - x_j)."""
    f = ctx.coerce(f)
    N = ctx.N
    if not isinstance(i, int) or not 1 <= i <= N:
        raise IndexError(f"Dunkl index {i} outside 1..{N}")
    lay = f.layout
    others = tuple(lay.shift(j) for j in range(1, N + 1) if j != i)
    p, s = lay.kern.dunkl_parts(f._num, lay.shift(i), others, lay.mask)
    return _combine_kappa(ctx, f, p, s)


def euler_dunkl(f, ctx):
    """sum_i x_i D_i f."""
    f = ctx.coerce(f)
    out = Polynomial.zero(ctx.N)
    for i in range(1, ctx.N + 1):
        out = out + dunkl(i, f, ctx).times_variable(i)
    return out


def mu(tau):
    """Eigenvalue of sum_{i<j} (1 - (i,j)) on the isotype labelled by tau."""
    if not isinstance(tau, Partition):
        tau = Partition(tuple(tau))
    N = tau.n
    s = sum(t * (t + 1 - 2 * j) for j, t in enumerate(tau.parts, 1))
    return binomial(N, 2) - s // 2


def cherednik(i, f, ctx):
    """D_i x_i f - kappa * sum_{j<i} (i,j) f."""
    f = ctx.coerce(f)
    N = ctx.N
    if not isinstance(i, int) or not 1 <= i <= N:
        raise IndexError(f"index {i} outside 1..{N}")
    out = dunkl(i, f.times_variable(i), ctx)
    if i > 1:
        swaps = Polynomial.zero(N)
        for j in range(1, i):
            swaps = swaps + permute(Permutation.transposition(i, j, N), f)
        out = out - swaps.scale(ctx.k)
    return out


def alternating(N, power=1):
    """a_N^power with a_N = prod_{i<j} (x_i - x_j); power must be odd."""
    if N < 2:
        raise ValueError("alternating polynomial needs N >= 2")
    if power < 1 or power % 2 == 0:
        raise EvenPowerError(f"power must be a positive odd integer, got {power}")
    a = Polynomial.constant(N, 1)
    for i in range(1, N + 1):
        for j in range(i + 1, N + 1):
            a = a * (Polynomial.variable(N, i) - Polynomial.variable(N, j))
    return a ** power
