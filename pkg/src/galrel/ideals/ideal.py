"""
Fractional ideals as Hermite normal forms over the integral basis.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import TYPE_CHECKING, List, Sequence, Tuple, Union

from galrel.errors import InputError, MathError
from galrel.exact.matrices import (
    hnf,
    identity,
    integer_solutions_lattice,
    inverse,
    mat_mul,
    solve_rational,
    transpose,
)
from galrel.fields.number_field import FieldElement, NumberField

if TYPE_CHECKING:
    from galrel.fields.automorphisms import Automorphism
    from galrel.fields.subfields import SubfieldData

logger = logging.getLogger(__name__)

Rows = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class Ideal:
    """The fractional ideal (1/denominator)·span_ℤ(rows).

    ``rows`` is the square row HNF of an integral ideal in integral-basis
    coordinates; the pair is normalised so that the gcd of all entries and
    the denominator is 1.
    """

    owner: NumberField = field(repr=False, compare=False, hash=False)
    rows: Rows
    denominator: int = 1

    # -- construction ------------------------------------------------

    @classmethod
    def from_lattice(
        cls, owner: NumberField, rows: Sequence[Sequence[int]], denominator: int = 1
    ) -> "Ideal":
        h = hnf(rows)
        if len(h) != owner.degree:
            raise MathError("Ideal lattice does not have full rank")
        g = reduce(gcd, (x for row in h for x in row), denominator)
        return cls(
            owner,
            tuple(tuple(x // g for x in row) for row in h),
            denominator // g,
        )

    @classmethod
    def unit(cls, owner: NumberField) -> "Ideal":
        return cls(owner, tuple(tuple(r) for r in identity(owner.degree)))

    @classmethod
    def from_elements(
        cls, owner: NumberField, elements: Sequence[Union[FieldElement, Sequence[int]]]
    ) -> "Ideal":
        """Ideal generated by field elements (or integral-basis coordinates)."""
        coords = []
        for e in elements:
            if isinstance(e, FieldElement):
                coords.append(list(e.to_basis()))
            else:
                coords.append([Fraction(x) for x in e])
        if not coords or all(not any(c) for c in coords):
            raise InputError("The zero ideal is not invertible", "generators")
        d = reduce(
            lambda a, b: a * b // gcd(a, b),
            (x.denominator for row in coords for x in row),
            1,
        )
        rows: List[List[int]] = []
        for c in coords:
            a = [int(x * d) for x in c]
            if any(a):
                rows.extend(owner.multiplication_matrix_basis(a))
        return cls.from_lattice(owner, rows, d)

    @classmethod
    def principal(cls, x: FieldElement) -> "Ideal":
        return cls.from_elements(x.owner, [x])

    # -- invariants --------------------------------------------------

    @property
    def is_integral(self) -> bool:
        return self.denominator == 1

    @property
    def norm(self) -> Fraction:
        det = 1
        for i, row in enumerate(self.rows):
            det *= row[i]
        return Fraction(abs(det), self.denominator ** self.owner.degree)

    def basis(self) -> List[FieldElement]:
        return [
            self.owner.from_basis([Fraction(x, self.denominator) for x in row])
            for row in self.rows
        ]

    def __contains__(self, x: FieldElement) -> bool:
        target = [c * self.denominator for c in x.to_basis()]
        y = solve_rational(transpose([list(r) for r in self.rows]), target)
        return y is not None and all(c.denominator == 1 for c in y)

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(b in self for b in other.basis())

    # -- arithmetic --------------------------------------------------

    def __mul__(self, other: Union["Ideal", FieldElement]) -> "Ideal":
        if isinstance(other, FieldElement):
            other = Ideal.principal(other)
        if other.owner is not self.owner:
            raise InputError("Ideals belong to different fields")
        products: List[List[int]] = []
        for a in self.rows:
            for b in other.rows:
                products.append(self.owner.mul_basis(a, b))
        return Ideal.from_lattice(
            self.owner, products, self.denominator * other.denominator
        )

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Ideal":
        if k < 0:
            return self.inverse() ** (-k)
        result = Ideal.unit(self.owner)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scaled_inverse(self) -> "Ideal":
        """B̃ = N(B)·B⁻¹ for an integral ideal B; again an integral ideal."""
        if not self.is_integral:
            raise InputError("scaled_inverse needs an integral ideal")
        n = int(self.norm)
        blocks = [self.owner.multiplication_matrix_basis(list(r)) for r in self.rows]
        t = [
            [Fraction(x, n) for block in blocks for x in block[i]]
            for i in range(self.owner.degree)
        ]
        return Ideal.from_lattice(self.owner, integer_solutions_lattice(t))

    def inverse(self) -> "Ideal":
        integral = Ideal(self.owner, self.rows)
        tilde = integral.scaled_inverse()
        n = int(integral.norm)
        scaled = [[x * self.denominator for x in row] for row in tilde.rows]
        return Ideal.from_lattice(self.owner, scaled, n)

    def __truediv__(self, other: "Ideal") -> "Ideal":
        return self * other.inverse()

    def apply(self, sigma: "Automorphism") -> "Ideal":
        """σ(A)."""
        m = sigma.basis_matrix()
        return Ideal.from_lattice(
            self.owner, mat_mul([list(r) for r in self.rows], m), self.denominator
        )

    def valuation(self, prime: "Ideal") -> int:
        """v_P(A) for a prime ideal P."""
        if self.is_integral:
            k = 0
            power = prime
            while power.contains_ideal(self):
                k += 1
                power = power * prime
            return k
        numerator = Ideal(self.owner, self.rows)
        denom = Ideal.from_elements(
            self.owner, [self.owner.rational(self.denominator)]
        )
        return numerator.valuation(prime) - denom.valuation(prime)

    def __str__(self) -> str:
        body = ", ".join(str(list(r)) for r in self.rows)
        suffix = f"/{self.denominator}" if self.denominator != 1 else ""
        return f"[{body}]{suffix}"


def extend_ideal(sub: "SubfieldData", ideal: Ideal) -> Ideal:
    """A·O_L for an ideal A of L^H."""
    if ideal.owner is not sub.field:
        raise InputError("Ideal does not belong to the subfield")
    return Ideal.from_elements(sub.ambient, [sub.include(b) for b in ideal.basis()])


def contract_ideal(sub: "SubfieldData", ideal: Ideal) -> Ideal:
    """C ∩ O_{L^H} for an integral ideal C of L."""
    if not ideal.is_integral:
        raise InputError("contract_ideal needs an integral ideal")
    inclusion = [[Fraction(x) for x in row] for row in sub.inclusion_matrix]
    t = mat_mul(inclusion, inverse([list(r) for r in ideal.rows]))
    return Ideal.from_lattice(sub.field, integer_solutions_lattice(t))


def relative_norm_ideal(sub: "SubfieldData", ideal: Ideal) -> Ideal:
    """N_{L/L^H}(A): the contraction of ∏_{h∈H} h(A)."""
    product = Ideal.unit(sub.ambient)
    integral = Ideal(sub.ambient, ideal.rows)
    for h in sub.subgroup:
        product = product * integral.apply(h)
    result = contract_ideal(sub, product)
    if ideal.denominator != 1:
        d = Fraction(ideal.denominator) ** len(sub.subgroup)
        result = Ideal.from_lattice(
            sub.field, [list(r) for r in result.rows], int(d)
        )
    return result

