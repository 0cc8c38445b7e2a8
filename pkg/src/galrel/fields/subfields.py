"""
Fixed fields L^H, their inclusion into L and the induced map on places.
"""

import itertools
import logging
from dataclasses import dataclass
from dataclasses import field as dataclass_field
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from galrel.config.settings import app_settings
from galrel.errors import BudgetExhaustedError, InputError, MathError
from galrel.exact.matrices import (
    hnf,
    identity,
    integer_left_kernel,
    solve_rational,
    transpose,
)
from galrel.exact.polynomial import Polynomial
from galrel.fields.automorphisms import Automorphism
from galrel.fields.number_field import FieldElement, NumberField, make_field
from galrel.fields.places import nearest_place

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PlaceLink:
    """Place w of L, the place v of L^H below it, and e = e(w|v) ∈ {1, 2}."""

    upper: int
    lower: int
    ramification: int


@dataclass
class SubfieldData:
    """L^H as a standalone field together with ι: L^H → L.

    ``generator_image`` is ι(γ) where γ is the generator of ``field``;
    ``inclusion_matrix`` has the L-integral-basis coordinates of ι(b'_i)
    for the integral basis b' of L^H as rows.
    """

    ambient: NumberField
    field: NumberField
    generator_image: FieldElement
    subgroup: Tuple[Automorphism, ...]
    inclusion_matrix: List[List[int]] = dataclass_field(default_factory=list)
    _links: Dict[int, List[PlaceLink]] = dataclass_field(
        default_factory=dict, repr=False
    )

    @property
    def degree(self) -> int:
        return self.field.degree

    def include(self, x: FieldElement) -> FieldElement:
        """ι(x) for x ∈ L^H."""
        if x.owner is not self.field:
            raise InputError("Element does not belong to the subfield")
        return _evaluate(x.polynomial(), self.generator_image)

    def restrict(self, y: FieldElement) -> FieldElement:
        """The x ∈ L^H with ι(x) = y; y must be fixed by every h ∈ H."""
        for h in self.subgroup:
            if h.apply(y) != y:
                raise MathError(f"{y} is not fixed by {h.label or h.image}")
        powers = _power_rows(self.generator_image, self.degree)
        solution = solve_rational(transpose(powers), list(y.coords))
        if solution is None:
            raise MathError(f"{y} is not in the image of the subfield")
        return self.field.element(solution)

    def relative_norm(self, y: FieldElement) -> FieldElement:
        """N_{L/L^H}(y) = ∏_{h∈H} h(y), as an element of L^H."""
        product = self.ambient.one()
        for h in self.subgroup:
            product = product * h.apply(y)
        return self.restrict(product)

    def place_links(self, precision_bits: Optional[int] = None) -> List[PlaceLink]:
        """For each place of L: the place of L^H below it and e ∈ {1, 2}."""
        bits = precision_bits or app_settings.precision.DEFAULT_BITS
        if bits not in self._links:
            lower_places = self.field.places(bits)
            links = []
            for w in self.ambient.places(bits):
                v = nearest_place(lower_places, w.embed(self.generator_image))
                e = 2 if (v.is_real and not w.is_real) else 1
                links.append(PlaceLink(w.index, v.index, e))
            self._links[bits] = links
        return self._links[bits]


def _evaluate(p: Polynomial, x: FieldElement) -> FieldElement:
    acc = x.owner.zero()
    for c in reversed(p.coefficients):
        acc = acc * x + c
    return acc


def _power_rows(gamma: FieldElement, count: int) -> List[List[Fraction]]:
    rows = []
    current = gamma.owner.one()
    for _ in range(count):
        rows.append(list(current.coords))
        current = current * gamma
    return rows


def fixed_module(
    field_: NumberField, subgroup: Sequence[Automorphism]
) -> List[List[int]]:
    """ℤ-basis (HNF rows, integral-basis coordinates) of O_L ∩ L^H."""
    n = field_.degree
    blocks = []
    for h in subgroup:
        m = h.basis_matrix()
        blocks.append([[m[i][j] - int(i == j) for j in range(n)] for i in range(n)])
    if not blocks:
        return identity(n)
    stacked = [sum((block[i] for block in blocks), []) for i in range(n)]
    return hnf(integer_left_kernel(stacked))


def _candidates(dimension: int) -> Iterator[Tuple[int, ...]]:
    """Nonzero integer vectors ordered by sup-norm, then lexicographically."""
    bound = 1
    while True:
        for c in itertools.product(range(-bound, bound + 1), repeat=dimension):
            if max(abs(x) for x in c) == bound:
                yield c
        bound += 1


def _orbit(gamma: FieldElement, group: Sequence[Automorphism]) -> List[FieldElement]:
    seen: Dict[Tuple[Fraction, ...], FieldElement] = {}
    for g in group:
        image = g.apply(gamma)
        seen.setdefault(image.coords, image)
    return list(seen.values())


def primitive_element(
    field_: NumberField,
    module: Sequence[Sequence[int]],
    group: Sequence[Automorphism],
    degree: int,
    budget: Optional[int] = None,
) -> Tuple[FieldElement, List[FieldElement]]:
    """Small γ in the span of ``module`` whose G-orbit has ``degree`` elements.

    Raises:
        BudgetExhaustedError: no candidate within the budget
    """
    limit = budget or app_settings.search.PRIMITIVE_ELEMENT_BUDGET
    basis = field_.basis_elements()
    generators = [
        sum((basis[j] * c for j, c in enumerate(row) if c), field_.zero())
        for row in module
    ]
    # single module vectors first
    ordered = itertools.chain(
        (
            tuple(int(i == k) for i in range(len(generators)))
            for k in range(len(generators))
        ),
        _candidates(len(generators)),
    )
    for tried, c in enumerate(ordered):
        if tried >= limit:
            break
        gamma = sum((g * x for g, x in zip(generators, c) if x), field_.zero())
        orbit = _orbit(gamma, group)
        if len(orbit) == degree:
            logger.debug("Primitive element %s after %d candidates", gamma, tried + 1)
            return gamma, orbit
    raise BudgetExhaustedError("No primitive element for the fixed field", limit)


def minimal_polynomial_from_orbit(orbit: Sequence[FieldElement]) -> Polynomial:
    """∏ (x − g(γ)) over the orbit; the coefficients must be rational integers."""
    owner = orbit[0].owner
    coeffs = [owner.one()]
    for root in orbit:
        shifted = [owner.zero()] + coeffs
        for i, c in enumerate(coeffs):
            shifted[i] = shifted[i] - c * root
        coeffs = shifted
    if not all(c.is_rational() for c in coeffs):
        raise MathError("Orbit polynomial has irrational coefficients")
    result = Polynomial.from_coefficients([c.coords[0] for c in coeffs])
    if not result.is_integral():
        raise MathError("Orbit polynomial is not integral")
    return result


def fixed_field(
    field_: NumberField,
    subgroup: Sequence[Automorphism],
    group: Sequence[Automorphism],
    name: Optional[str] = None,
) -> SubfieldData:
    """L^H with integral basis O_L ∩ L^H re-expressed on a primitive element.

    Args:
        field_: Galois field L
        subgroup: Automorphisms forming H (closed under composition)
        group: All automorphisms of L
        name: Display name for L^H

    Raises:
        InputError: H is not a subgroup of the given automorphisms
        BudgetExhaustedError: primitive element search failed
    """
    images = {g.image for g in group}
    sub_images = {h.image for h in subgroup}
    if not sub_images <= images or any(
        a.compose(b).image not in sub_images for a in subgroup for b in subgroup
    ):
        raise InputError("H is not a subgroup of the automorphism group", "subgroup")
    if len(group) % len(subgroup):
        raise InputError("|H| does not divide |G|", "subgroup")
    label = name or f"{field_.name}^H"

    if len(subgroup) == 1:
        n = field_.degree
        return SubfieldData(
            ambient=field_,
            field=field_,
            generator_image=field_.generator(),
            subgroup=tuple(subgroup),
            inclusion_matrix=identity(n),
        )

    degree = len(group) // len(subgroup)
    module = fixed_module(field_, subgroup)
    if len(module) != field_.degree // len(subgroup):
        raise MathError(
            f"Fixed module has rank {len(module)}, expected "
            f"{field_.degree // len(subgroup)}"
        )
    gamma, orbit = primitive_element(field_, module, group, degree)
    poly = minimal_polynomial_from_orbit(orbit)

    powers = _power_rows(gamma, degree)
    system = transpose(powers)
    basis_rows = []
    for row in module:
        beta = field_.from_basis(row)
        solution = solve_rational(system, list(beta.coords))
        if solution is None:
            raise MathError("Fixed basis element is not a polynomial in γ")
        basis_rows.append(solution)

    sub = make_field(poly, basis_rows, name=label)
    logger.info(
        "Fixed field %s: degree %d, discriminant %d", label, degree, sub.discriminant
    )
    return SubfieldData(
        ambient=field_,
        field=sub,
        generator_image=gamma,
        subgroup=tuple(subgroup),
        inclusion_matrix=[list(row) for row in module],
    )
