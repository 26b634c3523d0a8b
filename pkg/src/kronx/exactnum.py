"""Exact scalar arithmetic and combinatorial primitives.

Everything downstream (index formulas, ladder coefficients, coupling
matrices) reduces to the handful of functions here: ceiling/floor
quotients, Pochhammer symbols, binomials, a terminating 3F2 sum, and a
signed-square-root scalar that stays exact under multiplication.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rational = Union[int, Fraction]


class ClosureError(ArithmeticError):
    """An exact operation left the representable set (e.g. sqrt(2)+sqrt(3))."""


class DomainError(ValueError):
    """An evaluation hit a pole or an index outside its defined range."""


def ceil_ratio(p: int, n: int) -> int:
    """Ceiling of p/n for positive integers, the index workhorse."""
    if n <= 0:
        raise ValueError("denominator must be a positive integer")
    if p <= 0:
        raise ValueError("numerator must be a positive integer")
    return -((-p) // n)


def floor_ratio(p: int, n: int) -> int:
    """Floor of p/n for p >= 0, n >= 1."""
    if n <= 0:
        raise ValueError("denominator must be a positive integer")
    if p < 0:
        raise ValueError("numerator must be nonnegative")
    return p // n


def pochhammer(x: Rational, n: int, direction: str = "rising") -> Rational:
    """Rising x(x+1)...(x+n-1) or falling x(x-1)...(x-n+1) factorial."""
    if n < 0:
        raise ValueError("pochhammer length must be nonnegative")
    if direction == "rising":
        step = 1
    elif direction == "falling":
        step = -1
    else:
        raise ValueError("direction must be 'rising' or 'falling'")
    out: Rational = 1
    for s in range(n):
        out = out * (x + step * s)
    return out


def binomial(n: int, m: int) -> int:
    """n choose m, with 0 for m outside [0, n]. Total by convention."""
    if n < 0 or m < 0 or m > n:
        return 0
    return math.comb(n, m)


def hyp3f2_terminating(r: int, b: int, c: int, d: int, e: int) -> Fraction:
    """Terminating 3F2(-r, -b, c; d, -e; 1) as an exact finite sum.

    The -r upper parameter cuts the series after r+1 terms.  Terms whose
    numerator vanishes are skipped outright, so lower-parameter zeros only
    matter when they sit under a live term; those raise DomainError.
    """
    if r < 0:
        raise ValueError("r must be nonnegative")
    total = Fraction(0)
    for s in range(r + 1):
        num = (
            pochhammer(-r, s)
            * pochhammer(-b, s)
            * pochhammer(c, s)
        )
        if num == 0:
            continue
        den = pochhammer(d, s) * pochhammer(-e, s) * math.factorial(s)
        if den == 0:
            raise DomainError(
                f"3F2 lower parameter vanishes at term s={s} "
                f"(d={d}, e={e})"
            )
        total += Fraction(num) / den
    return total


def _exact_sqrt(q: Fraction) -> Fraction | None:
    """Square root of q when q is the square of a rational, else None."""
    if q < 0:
        return None
    rn = math.isqrt(q.numerator)
    rd = math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True)
class SqrtRational:
    """Exact scalar sign * sqrt(radicand) with a nonnegative rational radicand.

    Closed under multiplication.  Addition works whenever the two radicands
    differ by the square of a rational (so n*sqrt(x) folds back into a single
    radicand, e.g. sqrt(8)+sqrt(2) = 3*sqrt(2) = sqrt(18)); anything else
    raises ClosureError and the caller must drop to floating point.

    The radicand is kept exactly as produced: sqrt(2)*sqrt(2) has radicand 4,
    not the integer 2.  Field equality is still value equality, since the
    square of the value recovers the radicand.
    """

    sign: int
    radicand: Fraction

    def __post_init__(self) -> None:
        if not isinstance(self.radicand, Fraction):
            object.__setattr__(self, "radicand", Fraction(self.radicand))
        if self.sign not in (-1, 0, 1):
            raise ValueError("sign must be -1, 0 or +1")
        if self.radicand < 0:
            raise ValueError("radicand must be nonnegative")
        if (self.sign == 0) != (self.radicand == 0):
            raise ValueError("sign is 0 exactly when the radicand is 0")

    @classmethod
    def from_rational(cls, q: Rational) -> "SqrtRational":
        q = Fraction(q)
        if q == 0:
            return cls(0, Fraction(0))
        return cls(1 if q > 0 else -1, q * q)

    @classmethod
    def sqrt(cls, q: Rational) -> "SqrtRational":
        """Principal square root of a nonnegative rational."""
        q = Fraction(q)
        if q < 0:
            raise ValueError("radicand must be nonnegative")
        return cls(0 if q == 0 else 1, q)

    def to_float(self) -> float:
        return self.sign * math.sqrt(self.radicand)

    def as_rational(self) -> Fraction | None:
        """The exact rational value, when the radicand is a perfect square."""
        root = _exact_sqrt(self.radicand)
        if root is None:
            return None
        return self.sign * root

    @staticmethod
    def _coerce(other: object) -> "SqrtRational | None":
        if isinstance(other, SqrtRational):
            return other
        if isinstance(other, (int, Fraction)):
            return SqrtRational.from_rational(other)
        return None

    def __bool__(self) -> bool:
        return self.sign != 0

    def __neg__(self) -> "SqrtRational":
        return SqrtRational(-self.sign, self.radicand)

    def __mul__(self, other: object):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return SqrtRational(self.sign * o.sign, self.radicand * o.radicand)

    __rmul__ = __mul__

    def __add__(self, other: object):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.sign == 0:
            return self
        if self.sign == 0:
            return o
        root = _exact_sqrt(self.radicand / o.radicand)
        if root is None:
            raise ClosureError(
                f"cannot add sqrt({self.radicand}) and sqrt({o.radicand}) "
                "within signed-square-root scalars"
            )
        coeff = self.sign * root + o.sign
        if coeff == 0:
            return SqrtRational(0, Fraction(0))
        return SqrtRational(
            1 if coeff > 0 else -1, coeff * coeff * o.radicand
        )

    __radd__ = __add__

    def __sub__(self, other: object):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __truediv__(self, other: object):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.sign == 0:
            raise ZeroDivisionError("division by zero square root")
        return SqrtRational(self.sign * o.sign, self.radicand / o.radicand)

    def __rtruediv__(self, other: object):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __eq__(self, other: object) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.sign == o.sign and self.radicand == o.radicand

    def __hash__(self) -> int:
        # Perfect squares must hash like their rational value so that
        # SqrtRational(1, 4) == 2 stays consistent in sets and dicts.
        root = self.as_rational()
        if root is not None:
            return hash(root)
        return hash((self.sign, self.radicand))

    def __str__(self) -> str:
        if self.sign == 0:
            return "0"
        prefix = "-" if self.sign < 0 else ""
        return f"{prefix}sqrt({self.radicand})"


def sqrtq_mul(a: SqrtRational, b: SqrtRational) -> SqrtRational:
    return a * b


def sqrtq_add_like(a: SqrtRational, b: SqrtRational) -> SqrtRational:
    """Sum of two square-root scalars with compatible radicands."""
    return a + b


def complex_float(re: float, im: float = 0.0) -> complex:
    """Validated complex scalar: both components must be finite."""
    if not (math.isfinite(re) and math.isfinite(im)):
        raise ValueError("complex components must be finite")
    return complex(re, im)


# --- scalar tower -----------------------------------------------------------
#
# Coefficients in operator sums are int, Fraction, SqrtRational, float or
# complex.  The helpers below centralize mixed-type arithmetic: exact kinds
# stay exact, any float/complex participant drags the result to complex.

Scalar = Union[int, Fraction, SqrtRational, float, complex]


def scalar_is_exact(c: Scalar) -> bool:
    return isinstance(c, (int, Fraction, SqrtRational))


def scalar_is_zero(c: Scalar) -> bool:
    if isinstance(c, SqrtRational):
        return c.sign == 0
    return c == 0


def scalar_to_complex(c: Scalar) -> complex:
    if isinstance(c, SqrtRational):
        return complex(c.to_float())
    if isinstance(c, Fraction):
        return complex(float(c))
    return complex(c)


def scalar_to_float(c: Scalar) -> float:
    z = scalar_to_complex(c)
    if abs(z.imag) > 1e-12 * max(1.0, abs(z.real)):
        raise ValueError(f"scalar {c!r} has a nonreal value")
    return z.real


def scalar_mul(a: Scalar, b: Scalar) -> Scalar:
    if isinstance(a, (float, complex)) or isinstance(b, (float, complex)):
        return scalar_to_complex(a) * scalar_to_complex(b)
    if isinstance(a, SqrtRational) or isinstance(b, SqrtRational):
        if not isinstance(a, SqrtRational):
            a = SqrtRational.from_rational(a)
        if not isinstance(b, SqrtRational):
            b = SqrtRational.from_rational(b)
        return a * b
    return a * b


def scalar_add(a: Scalar, b: Scalar) -> Scalar:
    """Exact when both sides are exact; raises ClosureError if the square
    roots cannot combine. Callers that can tolerate floats must convert."""
    if isinstance(a, (float, complex)) or isinstance(b, (float, complex)):
        return scalar_to_complex(a) + scalar_to_complex(b)
    if isinstance(a, SqrtRational) or isinstance(b, SqrtRational):
        if not isinstance(a, SqrtRational):
            a = SqrtRational.from_rational(a)
        if not isinstance(b, SqrtRational):
            b = SqrtRational.from_rational(b)
        return a + b
    return a + b


def scalar_neg(a: Scalar) -> Scalar:
    return -a


def scalar_conj(a: Scalar) -> Scalar:
    if isinstance(a, complex):
        return a.conjugate()
    return a
