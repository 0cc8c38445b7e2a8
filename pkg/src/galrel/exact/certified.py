"""
Midpoint-radius balls over mpmath numbers.

A Certified value stands for every number within ``radius`` of ``value``.
Each operation widens the radius by the propagated input error plus one
rounding unit of the working precision.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Union

import mpmath
from mpmath import mp

Number = Union[int, Fraction, "Certified"]


def _eps() -> Any:
    return mpmath.ldexp(mp.mpf(1), 2 - mp.prec)


def _rounding(value: Any) -> Any:
    if not value:
        return mp.mpf(0)
    return abs(value) * _eps() + mpmath.ldexp(mp.mpf(1), -10 * mp.prec)


def to_mpf(q: Union[int, Fraction]) -> Any:
    """Nearest mpf to an exact rational at the working precision."""
    q = Fraction(q)
    return mp.mpf(q.numerator) / q.denominator


@dataclass(frozen=True)
class Certified:
    """Real or complex ball: all numbers within ``radius`` of ``value``."""

    value: Any
    radius: Any

    @classmethod
    def exact(cls, q: Union[int, Fraction]) -> "Certified":
        q = Fraction(q)
        v = to_mpf(q)
        if q.denominator == 1 and int(v) == q.numerator:
            return cls(v, mp.mpf(0))
        return cls(v, _rounding(v))

    @classmethod
    def of(cls, value: Any, radius: Any = 0) -> "Certified":
        """Wrap an mpmath value computed by a correctly rounded routine."""
        return cls(value, mp.mpf(radius) + _rounding(value))

    @classmethod
    def pi(cls) -> "Certified":
        return cls.of(+mp.pi)

    def _lift(self, other: Number) -> "Certified":
        if isinstance(other, Certified):
            return other
        return Certified.exact(other)

    def __add__(self, other: Number) -> "Certified":
        o = self._lift(other)
        v = self.value + o.value
        return Certified(v, self.radius + o.radius + _rounding(v))

    __radd__ = __add__

    def __neg__(self) -> "Certified":
        return Certified(-self.value, self.radius)

    def __sub__(self, other: Number) -> "Certified":
        return self + (-self._lift(other))

    def __rsub__(self, other: Number) -> "Certified":
        return self._lift(other) - self

    def __mul__(self, other: Number) -> "Certified":
        o = self._lift(other)
        v = self.value * o.value
        r = (
            abs(self.value) * o.radius
            + abs(o.value) * self.radius
            + self.radius * o.radius
        )
        return Certified(v, r + _rounding(v))

    __rmul__ = __mul__

    def __truediv__(self, other: Number) -> "Certified":
        o = self._lift(other)
        denom = abs(o.value)
        if denom <= o.radius:
            raise ZeroDivisionError("Divisor ball contains zero")
        v = self.value / o.value
        r = (abs(self.value) * o.radius + denom * self.radius) / (
            denom * (denom - o.radius)
        )
        return Certified(v, r + _rounding(v))

    def __rtruediv__(self, other: Number) -> "Certified":
        return self._lift(other) / self

    def __pow__(self, k: int) -> "Certified":
        result = Certified.exact(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "Certified":
        # mpc.conjugate keeps every bit; mpmath.conj rounds to mp.prec
        value = self.value
        if isinstance(value, mpmath.mpc):
            value = value.conjugate()
        return Certified(value, self.radius)

    @property
    def real(self) -> "Certified":
        return Certified(mpmath.re(self.value), self.radius)

    def abs(self) -> "Certified":
        v = abs(self.value)
        return Certified(v, self.radius + _rounding(v))

    def abs_sq(self) -> "Certified":
        """|z|² as a real ball."""
        a = self.abs()
        return a * a

    def exp(self) -> "Certified":
        v = mpmath.exp(self.value)
        r = abs(v) * mpmath.expm1(self.radius)
        return Certified(v, r + _rounding(v))

    def log(self) -> "Certified":
        if self.value - self.radius <= 0:
            raise ValueError("log of a ball touching the non-positive axis")
        v = mpmath.log(self.value)
        return Certified(v, self.radius / (self.value - self.radius) + _rounding(v))

    def sqrt(self) -> "Certified":
        if self.value <= self.radius:
            raise ValueError("sqrt of a ball touching zero")
        v = mpmath.sqrt(self.value)
        return Certified(v, self.radius / v + _rounding(v))

    def lower(self) -> Any:
        return self.value - self.radius

    def upper(self) -> Any:
        return self.value + self.radius

    def is_positive(self) -> bool:
        return bool(self.lower() > 0)

    def contains_zero(self) -> bool:
        return bool(abs(self.value) <= self.radius)

    def within(self, tol: Any) -> bool:
        """True when every point of the ball has absolute value at most tol."""
        return bool(abs(self.value) + self.radius <= tol)

    def overlaps(self, other: "Certified", slack: Any = 0) -> bool:
        return bool(abs(self.value - other.value) <= self.radius + other.radius + slack)

    def to_dict(self, digits: int = 20) -> Dict[str, str]:
        return {
            "value": mpmath.nstr(self.value, digits),
            "radius": (
                mpmath.nstr(self.radius * 1.01, 3, min_fixed=0, max_fixed=0)
                if self.radius
                else "0"
            ),
        }

    def __float__(self) -> float:
        return float(mpmath.re(self.value))


def csum(terms: Any) -> Certified:
    """Certified sum of an iterable of balls."""
    total = Certified.exact(0)
    for term in terms:
        total = total + term
    return total
