"""Exact arithmetic on numbers a + b*sqrt(c) with rational a, b and a
square-free radicand c.

Operands with different nonzero radicands cannot be combined exactly; such
operations fall back to 50-digit Decimal values.
"""

from __future__ import annotations

import decimal
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

PRECISION = 50


def _ctx() -> decimal.Context:
    return decimal.Context(prec=PRECISION)


def square_free_split(m: int) -> tuple[int, int]:
    """Return (s, f) with m == s*s*f and f square-free."""
    if m < 0:
        raise ValueError("negative radicand")
    if m == 0:
        return 0, 1
    s, f = 1, 1
    d = 2
    while d * d <= m:
        e = 0
        while m % d == 0:
            m //= d
            e += 1
        s *= d ** (e // 2)
        if e % 2:
            f *= d
        d += 1
    return s, f * m


def _rational_sqrt(r: Fraction) -> Fraction | None:
    if r < 0:
        return None
    a, b = isqrt(r.numerator), isqrt(r.denominator)
    if a * a == r.numerator and b * b == r.denominator:
        return Fraction(a, b)
    return None


@dataclass(frozen=True)
class AlgebraicValue:
    a: Fraction
    b: Fraction = Fraction(0)
    c: int = 1

    def __post_init__(self):
        a, b, c = Fraction(self.a), Fraction(self.b), int(self.c)
        if c < 0:
            raise ValueError("radicand must be nonnegative")
        s, f = square_free_split(c)
        b *= s
        c = f
        if c == 1:
            a, b = a + b, Fraction(0)
        if b == 0:
            c = 1
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    @classmethod
    def of(cls, x) -> AlgebraicValue:
        if isinstance(x, AlgebraicValue):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(Fraction(x))
        raise TypeError(f"cannot convert {type(x).__name__} exactly")

    @classmethod
    def sqrt_of(cls, x) -> AlgebraicValue:
        """sqrt of a nonnegative rational, as 0 + b*sqrt(c)."""
        r = Fraction(x)
        if r < 0:
            raise ValueError("square root of a negative number")
        # sqrt(p/q) = sqrt(p*q)/q
        return cls(Fraction(0), Fraction(1, r.denominator), r.numerator * r.denominator)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def _compatible(self, other: AlgebraicValue) -> bool:
        return self.is_rational or other.is_rational or self.c == other.c

    def __add__(self, other):
        if isinstance(other, decimal.Decimal):
            return _ctx().add(self.to_decimal(), other)
        other = AlgebraicValue.of(other)
        if not self._compatible(other):
            return _ctx().add(self.to_decimal(), other.to_decimal())
        c = self.c if not self.is_rational else other.c
        return AlgebraicValue(self.a + other.a, self.b + other.b, c)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraicValue(-self.a, -self.b, self.c)

    def __sub__(self, other):
        return self + (-AlgebraicValue.of(other) if not isinstance(other, decimal.Decimal) else -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, decimal.Decimal):
            return _ctx().multiply(self.to_decimal(), other)
        other = AlgebraicValue.of(other)
        if not self._compatible(other):
            return _ctx().multiply(self.to_decimal(), other.to_decimal())
        c = self.c if not self.is_rational else other.c
        return AlgebraicValue(self.a * other.a + self.b * other.b * c,
                              self.a * other.b + self.b * other.a, c)

    __rmul__ = __mul__

    def square(self) -> AlgebraicValue:
        return self * self

    def sign(self) -> int:
        """Exact sign, without floating point."""
        if self.b == 0:
            return (self.a > 0) - (self.a < 0)
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a^2 with b^2 c
        diff = self.a * self.a - self.b * self.b * self.c
        return sa if diff > 0 else (0 if diff == 0 else sb)

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def sqrt(self) -> AlgebraicValue:
        """Exact square root when it lies in the same quadratic field.

        Rationals map to b*sqrt(c). For a + b*sqrt(c) with b != 0 this looks
        for x + y*sqrt(c) with x^2 + c*y^2 = a and 2xy = b, which exists
        exactly when a^2 - b^2 c is a rational square.
        """
        if self.sign() < 0:
            raise ValueError("square root of a negative number")
        if self.is_rational:
            return AlgebraicValue.sqrt_of(self.a)
        disc = _rational_sqrt(self.a * self.a - self.b * self.b * self.c)
        if disc is not None:
            for x2 in ((self.a + disc) / 2, (self.a - disc) / 2):
                x = _rational_sqrt(x2)
                if x:
                    cand = AlgebraicValue(x, self.b / (2 * x), self.c)
                    if cand.sign() >= 0 and cand.square() == self:
                        return cand
        raise ValueError(f"sqrt({self}) does not denest over Q(sqrt({self.c}))")

    def to_decimal(self) -> decimal.Decimal:
        ctx = _ctx()
        a = ctx.divide(decimal.Decimal(self.a.numerator), decimal.Decimal(self.a.denominator))
        if self.is_rational:
            return a
        b = ctx.divide(decimal.Decimal(self.b.numerator), decimal.Decimal(self.b.denominator))
        return ctx.add(a, ctx.multiply(b, ctx.sqrt(decimal.Decimal(self.c))))

    def __float__(self) -> float:
        return float(self.to_decimal())

    def __str__(self) -> str:
        def frac(x: Fraction) -> str:
            return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

        if self.is_rational:
            return frac(self.a)
        mag = abs(self.b)
        surd = f"sqrt({self.c})" if mag == 1 else f"{frac(mag)}*sqrt({self.c})"
        if self.a == 0:
            return surd if self.b > 0 else f"-{surd}"
        return f"{frac(self.a)}{'+' if self.b > 0 else '-'}{surd}"
