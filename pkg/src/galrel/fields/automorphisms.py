"""
Field automorphisms θ ↦ g(θ): from hints, or recognised from numerical roots.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import mpmath
from mpmath import mp

from galrel.errors import InputError, RecognitionError
from galrel.exact.polynomial import Polynomial
from galrel.fields.number_field import FieldElement, NumberField
from galrel.fields.places import Place, nearest_place
from galrel.groups.finite_group import FiniteGroup
from galrel.utils.retry_utils import with_precision_retry

logger = logging.getLogger(__name__)

Hint = Union[Sequence[Union[int, Fraction, str]], FieldElement]


@dataclass(frozen=True)
class Automorphism:
    """σ determined by the image of the generator θ."""

    owner: NumberField = field(repr=False, compare=False, hash=False)
    image: Tuple[Fraction, ...]
    label: str = field(default="", compare=False)

    @property
    def image_polynomial(self) -> Polynomial:
        return Polynomial(self.image)

    def apply(self, x: FieldElement) -> FieldElement:
        return self.owner.from_polynomial(x.polynomial().compose(self.image_polynomial))

    def __call__(self, x: FieldElement) -> FieldElement:
        return self.apply(x)

    def compose(self, other: "Automorphism") -> "Automorphism":
        """self ∘ other."""
        image = other.image_polynomial.compose(self.image_polynomial) % self.owner.poly
        coords = tuple(image[i] for i in range(self.owner.degree))
        return Automorphism(self.owner, coords)

    def is_identity(self) -> bool:
        generator = self.owner.generator()
        return self.owner.from_polynomial(self.image_polynomial) == generator

    def basis_matrix(self) -> List[List[int]]:
        """Rows: σ(b_i) in integral-basis coordinates."""
        return [self.apply(b).basis_ints() for b in self.owner.basis_elements()]


def verify_automorphism(sigma: Automorphism) -> None:
    """Checks f(σ(θ)) = 0 and σ(b_i b_j) = σ(b_i)σ(b_j) exactly.

    Raises:
        InputError: σ is not a field automorphism
    """
    field_ = sigma.owner
    image = field_.element(sigma.image)
    if not field_.from_polynomial(field_.poly.compose(image.polynomial())).is_zero():
        raise InputError(
            f"{image} is not a root of {field_.poly}", "automorphism_hints"
        )
    basis = field_.basis_elements()
    images = [sigma.apply(b) for b in basis]
    for i, a in enumerate(basis):
        for j in range(i, len(basis)):
            if sigma.apply(a * basis[j]) != images[i] * images[j]:
                raise InputError(
                    "Automorphism is not multiplicative", "automorphism_hints"
                )
    if any(not y.is_integral() for y in images):
        raise InputError(
            "Automorphism does not preserve the integers", "automorphism_hints"
        )


def _close(
    generators: Sequence[Automorphism], field_: NumberField
) -> List[Automorphism]:
    identity = Automorphism(field_, field_.generator().coords)
    seen = {identity.image: identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for a in frontier:
            for g in generators:
                c = a.compose(g)
                if c.image not in seen:
                    seen[c.image] = c
                    nxt.append(c)
        frontier = nxt
        if len(seen) > field_.degree:
            raise InputError("Hints generate more maps than the field degree")
    return list(seen.values())


def _sorted_labelled(auts: Sequence[Automorphism]) -> List[Automorphism]:
    identity = [a for a in auts if a.is_identity()]
    others = sorted((a for a in auts if not a.is_identity()), key=lambda a: a.image)
    ordered = identity + others
    return [
        Automorphism(a.owner, a.image, "id" if i == 0 else f"s{i}")
        for i, a in enumerate(ordered)
    ]


@with_precision_retry()
def _recognise(field_: NumberField, precision_bits: int = 128) -> List[Automorphism]:
    places = field_.places(precision_bits)
    reference = places[-1]
    n = field_.degree
    basis_values = [reference.embed(b).value for b in field_.basis_elements()]
    with mp.workprec(precision_bits):
        all_roots = []
        for place in places:
            all_roots.append(place.root.value)
            if not place.is_real:
                all_roots.append(mpmath.conj(place.root.value))
        found = []
        for alpha in all_roots:
            image = None
            for twist in (mpmath.sqrt(2), +mp.pi, mpmath.e):
                vector = [
                    mpmath.re(v) + twist * mpmath.im(v)
                    for v in [alpha] + basis_values
                ]
                relation = mpmath.pslq(
                    vector,
                    tol=mpmath.ldexp(mp.mpf(1), -(precision_bits * 3) // 4),
                    maxcoeff=10**12,
                    maxsteps=20000,
                )
                if not relation or relation[0] == 0:
                    continue
                coords = [Fraction(-c, relation[0]) for c in relation[1:]]
                candidate = field_.from_basis(coords)
                sigma = Automorphism(field_, candidate.coords)
                try:
                    verify_automorphism(sigma)
                except InputError:
                    continue
                image = sigma
                break
            if image is not None:
                found.append(image)
    unique = {a.image: a for a in found}
    if len(unique) != len(found) or n % len(unique):
        raise RecognitionError(
            "Recognised root images are inconsistent; raise the precision or "
            "supply automorphism_hints",
            precision=precision_bits,
        )
    return list(unique.values())


def automorphisms(
    field_: NumberField,
    hints: Optional[Sequence[Hint]] = None,
    precision_bits: Optional[int] = None,
) -> List[Automorphism]:
    """Automorphisms of ``field_``, identity first, each verified exactly.

    Args:
        field_: The number field
        hints: Images of θ in power-basis coordinates; may be generators
        precision_bits: Starting precision for numerical recognition

    Raises:
        InputError: a hint is not an automorphism
        RecognitionError: recognition failed at the maximum precision
    """
    if field_.degree == 1:
        return [Automorphism(field_, (Fraction(1),), "id")]
    if hints:
        gens = []
        for hint in hints:
            coords = hint.coords if isinstance(hint, FieldElement) else hint
            image = field_.element([Fraction(c) for c in coords])
            sigma = Automorphism(field_, image.coords)
            verify_automorphism(sigma)
            gens.append(sigma)
        auts = _close(gens, field_)
    else:
        auts = _recognise(field_, precision_bits=precision_bits)
    for sigma in auts:
        verify_automorphism(sigma)
    images = {a.image for a in auts}
    for a in auts:
        for b in auts:
            if a.compose(b).image not in images:
                raise RecognitionError(
                    "Automorphisms are not closed under composition; raise the "
                    "precision or supply automorphism_hints"
                )
    result = _sorted_labelled(auts)
    logger.info("Found %d automorphisms of %s", len(result), field_.name)
    return result


def galois_group(auts: Sequence[Automorphism], name: str = "G") -> FiniteGroup:
    """Cayley table of the automorphisms; table[a][b] is auts[a] ∘ auts[b]."""
    index = {a.image: i for i, a in enumerate(auts)}
    table = [[index[a.compose(b).image] for b in auts] for a in auts]
    return FiniteGroup.from_table(table, [a.label for a in auts], name)


def place_permutation(sigma: Automorphism, places: Sequence[Place]) -> List[int]:
    """perm[i] = j where the place τ_i∘σ equals τ_j."""
    theta_image = sigma.owner.element(sigma.image)
    return [nearest_place(list(places), p.embed(theta_image)).index for p in places]


def complex_conjugation(
    auts: Sequence[Automorphism], precision_bits: Optional[int] = None
) -> Optional[Automorphism]:
    """The automorphism inducing complex conjugation at every place, if any.

    Returns None when the field has a real place or no automorphism
    restricts to conjugation everywhere (the field is not CM-like).
    """
    if not auts:
        return None
    field_ = auts[0].owner
    places = field_.places(precision_bits)
    if any(p.is_real for p in places):
        return None
    with mp.workprec(places[0].precision):
        for sigma in auts:
            theta_image = field_.element(sigma.image)
            if all(
                p.embed(theta_image).overlaps(p.root.conjugate())
                and not p.root.overlaps(p.root.conjugate())
                for p in places
            ):
                return sigma
    return None
