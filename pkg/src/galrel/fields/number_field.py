"""
Number fields ℚ[x]/(f) with a verified integral basis and exact arithmetic.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import TYPE_CHECKING, Dict, List, Optional, Sequence, Tuple, Union

from galrel.config.settings import app_settings
from galrel.errors import InputError, NotRingClosedError, UnsupportedError
from galrel.exact.matrices import determinant, inverse, vec_mat
from galrel.exact.polynomial import Polynomial, sturm_real_root_count

if TYPE_CHECKING:
    from galrel.fields.places import Place

logger = logging.getLogger(__name__)

Coords = Tuple[Fraction, ...]
Scalar = Union[int, Fraction]


class NumberField:
    """Number field with minimal polynomial, integral basis and discriminant.

    Elements are stored in power-basis coordinates; ``basis`` holds the
    power-basis coordinates of the integral basis as rows.
    """

    def __init__(
        self,
        poly: Polynomial,
        basis: Sequence[Sequence[Scalar]],
        name: str = "K",
    ) -> None:
        self.poly = poly
        self.name = name
        self.degree = poly.degree
        self.basis: Tuple[Coords, ...] = tuple(
            tuple(Fraction(x) for x in row) for row in basis
        )
        self.basis_inverse = inverse(self.basis)
        self._power_sums = _power_sums(poly, 2 * self.degree)
        self._reductions = _power_reductions(poly)
        self._structure: Optional[Tuple[Tuple[Tuple[int, ...], ...], ...]] = None
        self._discriminant: Optional[int] = None
        self._signature: Optional[Tuple[int, int]] = None
        self._places: Dict[int, List["Place"]] = {}

    def __repr__(self) -> str:
        return f"NumberField({self.name}, {self.poly})"

    # -- elements ----------------------------------------------------

    def element(self, coords: Sequence[Scalar]) -> "FieldElement":
        c = [Fraction(x) for x in coords] + [Fraction(0)] * (self.degree - len(coords))
        return FieldElement(self, tuple(c[: self.degree]))

    def from_polynomial(self, p: Polynomial) -> "FieldElement":
        if p.degree >= len(self._reductions):
            r = p % self.poly
            return self.element([r[i] for i in range(self.degree)])
        out = [Fraction(0)] * self.degree
        for c, row in zip(p.coefficients, self._reductions):
            if c:
                for i, t in enumerate(row):
                    if t:
                        out[i] += c * t
        return FieldElement(self, tuple(out))

    def from_basis(self, coords: Sequence[Scalar]) -> "FieldElement":
        """Element with the given coordinates in the integral basis."""
        return self.element(vec_mat([Fraction(x) for x in coords], self.basis))

    def rational(self, q: Scalar) -> "FieldElement":
        return self.element([q])

    def one(self) -> "FieldElement":
        return self.rational(1)

    def zero(self) -> "FieldElement":
        return self.rational(0)

    def generator(self) -> "FieldElement":
        return self.from_polynomial(Polynomial.x())

    def basis_elements(self) -> List["FieldElement"]:
        return [self.element(row) for row in self.basis]

    def is_rational_field(self) -> bool:
        return self.degree == 1

    # -- invariants --------------------------------------------------

    def trace_of_power(self, k: int) -> Fraction:
        return self._power_sums[k]

    @property
    def structure(self) -> Tuple[Tuple[Tuple[int, ...], ...], ...]:
        """structure[i][j]: integral-basis coordinates of b_i·b_j."""
        if self._structure is None:
            elements = self.basis_elements()
            table = []
            for a in elements:
                row = []
                for b in elements:
                    coords = (a * b).to_basis()
                    if any(c.denominator != 1 for c in coords):
                        raise NotRingClosedError(
                            f"Basis of {self.name} is not closed under multiplication"
                        )
                    row.append(tuple(int(c) for c in coords))
                table.append(tuple(row))
            self._structure = tuple(table)
        return self._structure

    def trace_form(self) -> List[List[Fraction]]:
        elements = self.basis_elements()
        return [[(a * b).trace() for b in elements] for a in elements]

    @property
    def discriminant(self) -> int:
        """d_K = det(Tr(b_i b_j)), exact."""
        if self._discriminant is None:
            d = determinant(self.trace_form())
            if d.denominator != 1:
                raise NotRingClosedError(f"Non-integral discriminant for {self.name}")
            self._discriminant = int(d)
        return self._discriminant

    @property
    def signature(self) -> Tuple[int, int]:
        """(r, s): real embeddings and pairs of complex embeddings."""
        if self._signature is None:
            r = sturm_real_root_count(self.poly)
            self._signature = (r, (self.degree - r) // 2)
        return self._signature

    @property
    def unit_rank(self) -> int:
        r, s = self.signature
        return r + s - 1

    def places(self, precision_bits: Optional[int] = None) -> List["Place"]:
        """Certified infinite places, cached per precision."""
        from galrel.fields.places import compute_places

        bits = precision_bits or app_settings.precision.DEFAULT_BITS
        if bits not in self._places:
            self._places[bits] = compute_places(self, precision_bits=bits)
        return self._places[bits]

    def mul_basis(self, a: Sequence[int], b: Sequence[int]) -> List[int]:
        """Product of two elements given in integral-basis coordinates."""
        n = self.degree
        out = [0] * n
        table = self.structure
        for i in range(n):
            if a[i]:
                for j in range(n):
                    if b[j]:
                        c = a[i] * b[j]
                        for k, t in enumerate(table[i][j]):
                            if t:
                                out[k] += c * t
        return out

    def multiplication_matrix_basis(self, a: Sequence[int]) -> List[List[int]]:
        """Rows: b_i·a in integral-basis coordinates."""
        n = self.degree
        return [self.mul_basis([int(i == j) for j in range(n)], a) for i in range(n)]


@dataclass(frozen=True)
class FieldElement:
    """Element of a number field in power-basis coordinates."""

    owner: NumberField = field(repr=False, compare=False, hash=False)
    coords: Coords

    def polynomial(self) -> Polynomial:
        return Polynomial(self.coords)

    def _check(self, other: "FieldElement") -> None:
        if other.owner is not self.owner:
            raise InputError("Elements belong to different fields")

    def _lift(self, other: Union["FieldElement", Scalar]) -> "FieldElement":
        if isinstance(other, FieldElement):
            self._check(other)
            return other
        return self.owner.rational(other)

    def __add__(self, other: Union["FieldElement", Scalar]) -> "FieldElement":
        o = self._lift(other)
        coords = tuple(a + b for a, b in zip(self.coords, o.coords))
        return FieldElement(self.owner, coords)

    __radd__ = __add__

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.owner, tuple(-a for a in self.coords))

    def __sub__(self, other: Union["FieldElement", Scalar]) -> "FieldElement":
        return self + (-self._lift(other))

    def __rsub__(self, other: Union["FieldElement", Scalar]) -> "FieldElement":
        return self._lift(other) - self

    def __mul__(self, other: Union["FieldElement", Scalar]) -> "FieldElement":
        if not isinstance(other, FieldElement):
            c = Fraction(other)
            return FieldElement(self.owner, tuple(c * a for a in self.coords))
        self._check(other)
        return self.owner.from_polynomial(self.polynomial() * other.polynomial())

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "FieldElement":
        if k < 0:
            return self.inverse() ** (-k)
        result = self.owner.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other: Union["FieldElement", Scalar]) -> "FieldElement":
        return self * self._lift(other).inverse()

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_one(self) -> bool:
        return self.coords[0] == 1 and not any(self.coords[1:])

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def inverse(self) -> "FieldElement":
        """Inverse via the extended Euclidean algorithm modulo f."""
        if self.is_zero():
            raise ZeroDivisionError("Zero has no inverse")
        return self.owner.from_polynomial(
            self.polynomial().invert_mod(self.owner.poly)
        )

    def multiplication_matrix(self) -> List[List[Fraction]]:
        """Rows: θ^i·x in power-basis coordinates."""
        theta = self.owner.generator()
        rows = []
        current = self
        for _ in range(self.owner.degree):
            rows.append(list(current.coords))
            current = current * theta
        return rows

    def norm(self) -> Fraction:
        return determinant(self.multiplication_matrix())

    def trace(self) -> Fraction:
        return sum(
            (c * self.owner.trace_of_power(k) for k, c in enumerate(self.coords) if c),
            Fraction(0),
        )

    def to_basis(self) -> Coords:
        """Coordinates in the integral basis."""
        return tuple(vec_mat(list(self.coords), self.owner.basis_inverse))

    def basis_ints(self) -> Tuple[int, ...]:
        """Integral-basis coordinates; the element must be integral."""
        coords = self.to_basis()
        if any(c.denominator != 1 for c in coords):
            raise InputError(f"Element {self} is not in the ring of integers")
        return tuple(int(c) for c in coords)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.to_basis())

    def __str__(self) -> str:
        return str(self.polynomial()).replace("x", "t")


def _power_reductions(f: Polynomial) -> Tuple[Coords, ...]:
    """Power-basis coordinates of θ^k for k ≤ 2n − 2."""
    n = f.degree
    lead = f.leading
    current = [Fraction(int(i == 0)) for i in range(n)]
    rows = []
    for _ in range(2 * n - 1):
        rows.append(tuple(current))
        top = current[-1]
        current = [Fraction(0)] + current[:-1]
        if top:
            current = [c - top * f[i] / lead for i, c in enumerate(current)]
    return tuple(rows)


def _power_sums(f: Polynomial, count: int) -> List[Fraction]:
    """Tr(θ^k) for k < count by Newton's identities."""
    n = f.degree
    a = [f[i] for i in range(n)]
    sums = [Fraction(n)]
    for k in range(1, count):
        if k <= n:
            s = -k * a[n - k] - sum(
                (a[n - i] * sums[k - i] for i in range(1, k)), Fraction(0)
            )
        else:
            s = -sum((a[n - i] * sums[k - i] for i in range(1, n + 1)), Fraction(0))
        sums.append(s)
    return sums


def make_field(
    poly: Union[Polynomial, Sequence[int]],
    basis: Optional[Sequence[Sequence[Scalar]]] = None,
    name: str = "K",
) -> NumberField:
    """Builds a number field and verifies its integral basis.

    Args:
        poly: Monic integral minimal polynomial (ascending coefficients)
        basis: Integral basis as power-basis coordinate rows; when absent a
            supported family must supply it
        name: Display name

    Raises:
        InputError: poly not monic integral, or degree out of range
        UnsupportedError: no basis given and the field is in no family
        NotRingClosedError: basis does not span a ring containing ℤ[θ]
    """
    f = poly if isinstance(poly, Polynomial) else Polynomial.from_coefficients(poly)
    if f.degree < 1 or not f.is_monic() or not f.is_integral():
        raise InputError(
            f"Minimal polynomial {f} must be monic and integral", "min_poly"
        )
    if f.degree > app_settings.search.MAX_FIELD_DEGREE:
        raise UnsupportedError("Field degree too large", f"degree {f.degree}")
    if not f.is_squarefree():
        raise InputError(f"Minimal polynomial {f} has repeated roots", "min_poly")

    if basis is None:
        from galrel.fields.families import family_basis

        found = family_basis(f)
        if found is None:
            raise UnsupportedError(
                "No integral basis given and the field is in no supported family",
                str(f),
            )
        basis = found
    rows = [[Fraction(x) for x in row] for row in basis]
    if len(rows) != f.degree or any(len(row) != f.degree for row in rows):
        raise InputError("Basis must be a square matrix of the field degree", "basis")
    if determinant(rows) == 0:
        raise InputError("Basis rows are linearly dependent", "basis")

    result = NumberField(f, rows, name)
    for k in range(f.degree):
        power = result.element([int(i == k) for i in range(f.degree)])
        if not power.is_integral():
            raise NotRingClosedError(
                f"θ^{k} is not in the span of the basis of {name}"
            )
    _ = result.structure
    logger.debug("Built field %s with discriminant %d", name, result.discriminant)
    return result


def rational_field() -> NumberField:
    return make_field([-1, 1], [[1]], name="Q")
