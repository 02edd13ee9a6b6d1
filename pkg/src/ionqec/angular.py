"""Exact angular-momentum algebra: Wigner 3j/6j symbols and surd arithmetic.

All quantum numbers are carried as ``HalfInteger`` (twice the value stored as
an int) so that half-integer spins are represented without floating point.
Symbols are evaluated with the Racah single-sum formulas in exact rational
arithmetic; the result is a signed square root of a rational, which is kept
exact so that downstream geometric coefficients come out as exact fractions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, total_ordering


@total_ordering
@dataclass(frozen=True)
class HalfInteger:
    """An integer or half-integer stored exactly as twice its value."""

    twice: int

    @staticmethod
    def of(value) -> "HalfInteger":
        """Build from an int, Fraction or float that is a multiple of 1/2."""
        if isinstance(value, HalfInteger):
            return value
        twice = Fraction(value) * 2
        if twice.denominator != 1:
            raise ValueError(f"{value} is not a multiple of 1/2")
        return HalfInteger(int(twice))

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def as_fraction(self) -> Fraction:
        return Fraction(self.twice, 2)

    def __float__(self) -> float:
        return self.twice / 2.0

    def __add__(self, other) -> "HalfInteger":
        return HalfInteger(self.twice + HalfInteger.of(other).twice)

    def __sub__(self, other) -> "HalfInteger":
        return HalfInteger(self.twice - HalfInteger.of(other).twice)

    def __neg__(self) -> "HalfInteger":
        return HalfInteger(-self.twice)

    def __lt__(self, other) -> bool:
        return self.twice < HalfInteger.of(other).twice

    def __repr__(self) -> str:
        if self.is_integer:
            return str(self.twice // 2)
        return f"{self.twice}/2"


def _factor_smooth(n: int) -> dict:
    """Prime factorization by trial division (inputs are factorial-smooth)."""
    factors: dict = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def _split_square(n: int) -> tuple[int, int]:
    """Return (s, r) with n = s^2 * r and r squarefree."""
    s, r = 1, 1
    for p, e in _factor_smooth(n).items():
        s *= p ** (e // 2)
        if e % 2:
            r *= p
    return s, r


class Surd:
    """Exact sum of terms q*sqrt(n) with q rational and n squarefree positive.

    Closed under addition and multiplication, which is enough for the
    Kramers-Heisenberg amplitude sums.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {n: q for n, q in (terms or {}).items() if q != 0}

    @staticmethod
    def from_rational(q) -> "Surd":
        return Surd({1: Fraction(q)})

    @staticmethod
    def sqrt_of(q) -> "Surd":
        """Exact square root of a non-negative rational."""
        q = Fraction(q)
        if q < 0:
            raise ValueError("sqrt of negative rational")
        if q == 0:
            return Surd()
        # sqrt(a/b) = sqrt(a*b)/b
        s, r = _split_square(q.numerator * q.denominator)
        return Surd({r: Fraction(s, q.denominator)})

    def __add__(self, other: "Surd") -> "Surd":
        out = dict(self.terms)
        for n, q in other.terms.items():
            out[n] = out.get(n, Fraction(0)) + q
        return Surd(out)

    def __sub__(self, other: "Surd") -> "Surd":
        return self + (-other)

    def __neg__(self) -> "Surd":
        return Surd({n: -q for n, q in self.terms.items()})

    def __mul__(self, other) -> "Surd":
        if isinstance(other, (int, Fraction)):
            return Surd({n: q * other for n, q in self.terms.items()})
        out: dict = {}
        for n1, q1 in self.terms.items():
            for n2, q2 in other.terms.items():
                s, r = _split_square(n1 * n2)
                out[r] = out.get(r, Fraction(0)) + q1 * q2 * s
        return Surd(out)

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Surd.from_rational(other)
        return self.terms == other.terms

    def as_rational(self) -> Fraction:
        """The exact value, provided it is rational."""
        extra = [n for n in self.terms if n != 1]
        if extra:
            raise ValueError(f"value is irrational: {self}")
        return self.terms.get(1, Fraction(0))

    def __float__(self) -> float:
        return float(sum(float(q) * math.sqrt(n) for n, q in self.terms.items()))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(
            f"{q}" if n == 1 else f"{q}*sqrt({n})" for n, q in sorted(self.terms.items())
        )


@dataclass(frozen=True)
class SymbolValue:
    """A Wigner symbol value: sign * sqrt(radicand) kept exactly."""

    sign: int
    radicand: Fraction

    @property
    def value(self) -> float:
        return self.sign * math.sqrt(self.radicand)

    def as_surd(self) -> Surd:
        return Surd.sqrt_of(self.radicand) * self.sign

    @staticmethod
    def zero() -> "SymbolValue":
        return SymbolValue(0, Fraction(0))


_ZERO = SymbolValue.zero()


def _triangle_ok(a: int, b: int, c: int) -> bool:
    """Triangle rule on twice-values, including integer-perimeter parity."""
    return abs(a - b) <= c <= a + b and (a + b + c) % 2 == 0


def _fact(n2: int) -> int:
    """Factorial of a twice-value that must be an even non-negative int."""
    if n2 < 0 or n2 % 2:
        raise ValueError("non-integer or negative factorial argument")
    return math.factorial(n2 // 2)


def _triangle_coeff(a: int, b: int, c: int) -> Fraction:
    """Delta(abc)^2 on twice-values."""
    return Fraction(
        _fact(a + b - c) * _fact(a - b + c) * _fact(-a + b + c),
        _fact(a + b + c + 2),
    )


def _check_jm(j: HalfInteger, m: HalfInteger) -> None:
    if j.twice < 0:
        raise ValueError(f"negative angular momentum j={j}")
    if (j.twice - m.twice) % 2 != 0:
        raise ValueError(f"parity mismatch between j={j} and m={m}")
    if abs(m.twice) > j.twice:
        raise ValueError(f"|m|={m} exceeds j={j}")


@lru_cache(maxsize=200_000)
def _wigner_3j_twice(j1: int, j2: int, j3: int, m1: int, m2: int, m3: int) -> SymbolValue:
    if m1 + m2 + m3 != 0 or not _triangle_ok(j1, j2, j3):
        return _ZERO
    # Racah sum over a single integer index k (all arguments twice-values).
    kmin = max(0, j2 - j3 - m1, j1 - j3 + m2)
    kmax = min(j1 + j2 - j3, j1 - m1, j2 + m2)
    if kmin > kmax:
        return _ZERO
    total = Fraction(0)
    for k2 in range(kmin, kmax + 1, 2):
        denom = (
            _fact(k2)
            * _fact(j1 + j2 - j3 - k2)
            * _fact(j1 - m1 - k2)
            * _fact(j2 + m2 - k2)
            * _fact(j3 - j2 + m1 + k2)
            * _fact(j3 - j1 - m2 + k2)
        )
        total += Fraction((-1) ** (k2 // 2), denom)
    if total == 0:
        return _ZERO
    pref = _triangle_coeff(j1, j2, j3) * (
        _fact(j1 + m1) * _fact(j1 - m1)
        * _fact(j2 + m2) * _fact(j2 - m2)
        * _fact(j3 + m3) * _fact(j3 - m3)
    )
    phase = -1 if ((j1 - j2 - m3) // 2) % 2 else 1
    sign = phase * (1 if total > 0 else -1)
    return SymbolValue(sign, pref * total * total)


def wigner_3j(j1, j2, j3, m1, m2, m3) -> SymbolValue:
    """Wigner 3j symbol, exact.

    Returns zero for violated selection rules; raises on invalid (j, m)
    pairs (negative j, |m| > j, or mismatched integer/half-integer parity).
    """
    js = [HalfInteger.of(j) for j in (j1, j2, j3)]
    ms = [HalfInteger.of(m) for m in (m1, m2, m3)]
    for j, m in zip(js, ms):
        _check_jm(j, m)
    return _wigner_3j_twice(*(j.twice for j in js), *(m.twice for m in ms))


@lru_cache(maxsize=200_000)
def _wigner_6j_twice(j1: int, j2: int, j3: int, j4: int, j5: int, j6: int) -> SymbolValue:
    triads = ((j1, j2, j3), (j1, j5, j6), (j4, j2, j6), (j4, j5, j3))
    if not all(_triangle_ok(*t) for t in triads):
        return _ZERO
    a1 = j1 + j2 + j3
    a2 = j1 + j5 + j6
    a3 = j4 + j2 + j6
    a4 = j4 + j5 + j3
    b1 = j1 + j2 + j4 + j5
    b2 = j2 + j3 + j5 + j6
    b3 = j3 + j1 + j6 + j4
    kmin = max(a1, a2, a3, a4)
    kmax = min(b1, b2, b3)
    total = Fraction(0)
    for k2 in range(kmin, kmax + 1, 2):
        num = _fact(k2 + 2)
        denom = (
            _fact(k2 - a1) * _fact(k2 - a2) * _fact(k2 - a3) * _fact(k2 - a4)
            * _fact(b1 - k2) * _fact(b2 - k2) * _fact(b3 - k2)
        )
        total += Fraction((-1) ** (k2 // 2) * num, denom)
    if total == 0:
        return _ZERO
    pref = Fraction(1)
    for t in triads:
        pref *= _triangle_coeff(*t)
    sign = 1 if total > 0 else -1
    return SymbolValue(sign, pref * total * total)


def wigner_6j(j1, j2, j3, j4, j5, j6) -> SymbolValue:
    """Wigner 6j symbol {j1 j2 j3; j4 j5 j6}, exact."""
    js = [HalfInteger.of(j) for j in (j1, j2, j3, j4, j5, j6)]
    for j in js:
        if j.twice < 0:
            raise ValueError(f"negative angular momentum {j}")
    perims = (
        js[0].twice + js[1].twice + js[2].twice,
        js[0].twice + js[4].twice + js[5].twice,
        js[3].twice + js[1].twice + js[5].twice,
        js[3].twice + js[4].twice + js[2].twice,
    )
    # A triad with half-integer perimeter can never satisfy the triangle
    # rule; reject it as inconsistent rather than silently returning 0.
    if any(p % 2 for p in perims):
        raise ValueError("parity-inconsistent 6j triads")
    return _wigner_6j_twice(*(j.twice for j in js))


class ComplexSurd:
    """Complex number with exact Surd real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: Surd | None = None, im: Surd | None = None):
        self.re = re if re is not None else Surd()
        self.im = im if im is not None else Surd()

    @staticmethod
    def from_surd(s: Surd) -> "ComplexSurd":
        return ComplexSurd(s, Surd())

    def __add__(self, other: "ComplexSurd") -> "ComplexSurd":
        return ComplexSurd(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "ComplexSurd") -> "ComplexSurd":
        return ComplexSurd(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "ComplexSurd":
        return ComplexSurd(-self.re, -self.im)

    def __mul__(self, other) -> "ComplexSurd":
        if isinstance(other, (int, Fraction, Surd)):
            return ComplexSurd(self.re * other, self.im * other)
        return ComplexSurd(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def abs2(self) -> Surd:
        return self.re * self.re + self.im * self.im

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self) -> str:
        return f"({self.re}) + ({self.im})i"
