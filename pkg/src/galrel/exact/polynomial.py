"""
Univariate polynomials with exact rational coefficients and Sturm chains.

Ring operations and Horner evaluation stay on Fraction tuples so that they
also run on mpmath and Certified arguments. Division, gcd, inversion,
composition and Sturm sequences go through ``sympy.Poly`` over QQ.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, List, Sequence, Tuple, Union

import sympy
from sympy.polys.polyerrors import NotInvertible

from galrel.errors import NotSquarefreeError

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]

_X = sympy.Symbol("x")


@dataclass(frozen=True)
class Polynomial:
    """Polynomial with Fraction coefficients in ascending degree."""

    coefficients: Tuple[Fraction, ...]

    def __post_init__(self) -> None:
        coeffs = [Fraction(c) for c in self.coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @classmethod
    def from_coefficients(cls, coeffs: Iterable[Scalar]) -> "Polynomial":
        return cls(tuple(Fraction(c) for c in coeffs))

    @classmethod
    def constant(cls, c: Scalar) -> "Polynomial":
        return cls((Fraction(c),))

    @classmethod
    def x(cls) -> "Polynomial":
        return cls((Fraction(0), Fraction(1)))

    @classmethod
    def from_roots(cls, roots: Iterable[Scalar]) -> "Polynomial":
        result = cls.constant(1)
        for r in roots:
            result = result * cls((Fraction(-r), Fraction(1)))
        return result

    @classmethod
    def from_sympy(cls, p: sympy.Poly) -> "Polynomial":
        coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(p.all_coeffs())]
        return cls(tuple(coeffs))

    def to_sympy(self, symbol: Any = None) -> sympy.Poly:
        x = symbol if symbol is not None else _X
        coeffs = [sympy.Rational(c.numerator, c.denominator) for c in self.coefficients]
        return sympy.Poly(list(reversed(coeffs)) or [0], x, domain=sympy.QQ)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading(self) -> Fraction:
        return self.coefficients[-1] if self.coefficients else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coefficients

    def is_monic(self) -> bool:
        return self.leading == 1

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coefficients)

    def __getitem__(self, i: int) -> Fraction:
        return self.coefficients[i] if 0 <= i < len(self.coefficients) else Fraction(0)

    def __add__(self, other: Union["Polynomial", Scalar]) -> "Polynomial":
        o = other if isinstance(other, Polynomial) else Polynomial.constant(other)
        n = max(len(self.coefficients), len(o.coefficients))
        return Polynomial(tuple(self[i] + o[i] for i in range(n)))

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple(-c for c in self.coefficients))

    def __sub__(self, other: Union["Polynomial", Scalar]) -> "Polynomial":
        o = other if isinstance(other, Polynomial) else Polynomial.constant(other)
        return self + (-o)

    def __mul__(self, other: Union["Polynomial", Scalar]) -> "Polynomial":
        if not isinstance(other, Polynomial):
            c = Fraction(other)
            return Polynomial(tuple(c * a for a in self.coefficients))
        if self.is_zero() or other.is_zero():
            return Polynomial(())
        out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a:
                for j, b in enumerate(other.coefficients):
                    out[i + j] += a * b
        return Polynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        result = Polynomial.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def divmod(self, other: "Polynomial") -> Tuple["Polynomial", "Polynomial"]:
        """Euclidean division: self = q·other + r with deg r < deg other."""
        if other.is_zero():
            raise ZeroDivisionError("Polynomial division by zero")
        q, r = self.to_sympy().div(other.to_sympy())
        return Polynomial.from_sympy(q), Polynomial.from_sympy(r)

    def __mod__(self, other: "Polynomial") -> "Polynomial":
        return self.divmod(other)[1]

    def __floordiv__(self, other: "Polynomial") -> "Polynomial":
        return self.divmod(other)[0]

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        return self * (1 / self.leading)

    def derivative(self) -> "Polynomial":
        return Polynomial.from_sympy(self.to_sympy().diff())

    def gcd(self, other: "Polynomial") -> "Polynomial":
        """Monic greatest common divisor."""
        return Polynomial.from_sympy(self.to_sympy().gcd(other.to_sympy())).monic()

    def invert_mod(self, modulus: "Polynomial") -> "Polynomial":
        """s with s·self ≡ 1 mod ``modulus``.

        Raises:
            ZeroDivisionError: self and modulus share a factor
        """
        try:
            inv = self.to_sympy().invert(modulus.to_sympy())
        except NotInvertible as e:
            raise ZeroDivisionError(f"{self} is not invertible mod {modulus}") from e
        return Polynomial.from_sympy(inv)

    def is_squarefree(self) -> bool:
        return bool(self.to_sympy().is_sqf)

    def squarefree_part(self) -> "Polynomial":
        return Polynomial.from_sympy(self.to_sympy().sqf_part()).monic()

    def compose(self, inner: "Polynomial") -> "Polynomial":
        return Polynomial.from_sympy(self.to_sympy().compose(inner.to_sympy()))

    def __call__(self, x: Any) -> Any:
        """Horner evaluation; works for Fraction, mpmath and Certified arguments."""
        acc: Any = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def sign_at_infinity(self, positive: bool = True) -> int:
        if self.is_zero():
            return 0
        s = 1 if self.leading > 0 else -1
        if not positive and self.degree % 2 == 1:
            s = -s
        return s

    def discriminant(self) -> Fraction:
        d = sympy.Rational(self.to_sympy().discriminant())
        return Fraction(int(d.p), int(d.q))

    def __str__(self) -> str:
        terms = [
            f"{c}*x^{i}" if i else str(c)
            for i, c in enumerate(self.coefficients)
            if c
        ]
        return " + ".join(reversed(terms)) or "0"


def sturm_chain(f: Polynomial) -> List[Polynomial]:
    """Sturm sequence of a squarefree f, up to positive and negative scaling."""
    return [Polynomial.from_sympy(p) for p in f.to_sympy().sturm()]


def sign_changes(values: Sequence[Any]) -> int:
    """Count sign changes in a sequence, ignoring zeros."""
    nonzero = [v for v in values if v != 0]
    return sum(1 for a, b in zip(nonzero, nonzero[1:]) if (a > 0) != (b > 0))


def sturm_real_root_count(f: Polynomial) -> int:
    """Exact number of distinct real roots of a squarefree polynomial.

    Raises:
        NotSquarefreeError: f has a repeated factor
    """
    if f.is_zero():
        raise NotSquarefreeError("Zero polynomial has no Sturm chain")
    if not f.is_squarefree():
        raise NotSquarefreeError(f"Polynomial {f} is not squarefree")
    if f.degree == 0:
        return 0
    chain = sturm_chain(f)
    at_minus = sign_changes([p.sign_at_infinity(positive=False) for p in chain])
    at_plus = sign_changes([p.sign_at_infinity(positive=True) for p in chain])
    count = at_minus - at_plus
    logger.debug("Sturm count for %s: %d", f, count)
    return count


def sturm_count_in_interval(f: Polynomial, a: Fraction, b: Fraction) -> int:
    """Distinct real roots of squarefree f in the half-open interval (a, b]."""
    chain = sturm_chain(f)
    return sign_changes([p(a) for p in chain]) - sign_changes([p(b) for p in chain])
