"""
Units of infinite order for the unit-rank-one fields galrel supports.

Real quadratic fields get their fundamental unit from the continued
fraction of √d; CM quartic fields take it from the real quadratic subfield
and decide the Hasse unit index with a bounded square search.
"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import List, Optional, Sequence

import mpmath
import sympy
from mpmath import mp
from sympy.ntheory.continued_fraction import (
    continued_fraction_convergents,
    continued_fraction_periodic,
)

from galrel.config.constants import FIELD_CACHE_SIZE
from galrel.errors import MathError, UnsupportedError
from galrel.exact.certified import Certified, csum
from galrel.exact.lattice import GramMatrix, enumerate_short_vectors
from galrel.fields.automorphisms import (
    Automorphism,
    automorphisms,
    complex_conjugation,
)
from galrel.fields.families import squarefree_part
from galrel.fields.number_field import FieldElement, NumberField
from galrel.fields.places import embedding_gram
from galrel.fields.subfields import SubfieldData, fixed_field
from galrel.fields.torsion import torsion_units

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class UnitData:
    """A unit of infinite order generating E/μ, and the regulator it gives.

    ``regulator`` uses the doubled normalisation: a complex place contributes
    2·log|τ(ε)|.
    """

    field: NumberField
    unit: Optional[FieldElement]
    regulator: Certified
    hasse_index: int = 1
    real_unit: Optional[FieldElement] = None
    real_subfield: Optional[SubfieldData] = None


def sqrt_of_discriminant(field_: NumberField) -> FieldElement:
    """√d_K inside a quadratic field: (2θ + a₁)/k with k² = disc(f)/d_K."""
    a1 = field_.poly[1]
    ratio = field_.poly.discriminant() / field_.discriminant
    k = isqrt(int(ratio))
    if k * k != ratio:
        raise MathError("disc(f)/d_K is not a square")
    return (field_.generator() * 2 + a1) / k


def _abs_log_at(x: FieldElement, place_index: int = 0) -> Certified:
    place = x.owner.places()[place_index]
    with mp.workprec(place.precision):
        return place.embed(x).abs().log()


def _cube_root(eps: FieldElement, root_d: FieldElement) -> Optional[FieldElement]:
    """η = (t + u√d)/2 with η³ = ε, if it exists."""
    places = eps.owner.places()
    with mp.workprec(places[0].precision):
        values = [mpmath.re(p.embed(eps).value) for p in places]
        roots = [mpmath.cbrt(v) if v > 0 else -mpmath.cbrt(-v) for v in values]
        t = int(mpmath.nint(roots[0] + roots[1]))
        scale = mpmath.re(places[0].embed(root_d).value)
        u = int(mpmath.nint((roots[0] - roots[1]) / scale))
    eta = (root_d * u + t) / 2
    if eta**3 == eps and eta.is_integral():
        return eta
    return None


def _normalise(eps: FieldElement) -> FieldElement:
    """±ε^{±1} with τ₀(ε) > 1."""
    place = eps.owner.places()[0]
    with mp.workprec(place.precision):
        for c in (eps, -eps, eps.inverse(), -eps.inverse()):
            v = place.embed(c).value
            if (v > 1) if place.is_real else (abs(v) > 1):
                return c
    raise MathError(f"Unit {eps} is a root of unity")


def real_quadratic_unit(field_: NumberField) -> FieldElement:
    """Fundamental unit ε > 1 (at the first place) of a real quadratic field.

    Raises:
        UnsupportedError: the field is not real quadratic
    """
    if field_.degree != 2 or field_.signature != (2, 0):
        raise UnsupportedError("Not a real quadratic field", field_.name)
    disc = field_.discriminant
    d, _ = squarefree_part(Fraction(disc))
    d = int(d)
    root_disc = sqrt_of_discriminant(field_)
    root_d = root_disc if disc == d else root_disc / 2

    periodic = continued_fraction_periodic(0, 1, d)
    head, period = periodic[:-1], periodic[-1]
    terms = itertools.chain(head, itertools.cycle(period))
    pell = None
    for convergent in continued_fraction_convergents(terms):
        p, q = int(sympy.numer(convergent)), int(sympy.denom(convergent))
        if abs(p * p - d * q * q) == 1:
            pell = root_d * q + p
            break
    if pell is None:
        raise MathError(f"No Pell solution found for d = {d}")
    eps = pell
    if d % 4 == 1:
        cube = _cube_root(pell, root_d)
        if cube is not None:
            eps = cube
    eps = _normalise(eps)
    if not abs(eps.norm()) == 1 or not eps.is_integral():
        raise MathError(f"{eps} is not a unit")
    logger.info("Fundamental unit of %s: %s", field_.name, eps)
    return eps


def _square_search(
    eps: FieldElement, roots_of_unity: Sequence[FieldElement]
) -> Optional[FieldElement]:
    """η with η² = ζ·ε for some root of unity ζ, or None.

    Any such η has Σ|τ(η)|² = Σ|τ(ε)| over the n embeddings, which bounds
    the enumeration.
    """
    field_ = eps.owner
    places = field_.places()
    bits = places[0].precision
    with mp.workprec(bits):
        bound = csum(
            p.embed(eps).abs() * p.local_degree for p in places
        ).upper()
        gram = GramMatrix.from_certified(embedding_gram(field_, precision_bits=bits))
        vectors = enumerate_short_vectors(gram, bound, half=True)
    targets = {(z * eps).coords for z in roots_of_unity}
    for v in vectors:
        eta = field_.from_basis(v)
        if (eta * eta).coords in targets:
            return eta
    return None


def cm_unit_data(
    field_: NumberField, auts: Optional[Sequence[Automorphism]] = None
) -> UnitData:
    """Unit data of a CM quartic field.

    Reg(K) = (2/Q)·Reg(K⁺), with Q = 2 exactly when some ζ·ε⁺ is a square.

    Raises:
        UnsupportedError: the field is not a CM quartic field
    """
    if field_.degree != 4 or field_.signature != (0, 2):
        raise UnsupportedError("Not a totally imaginary quartic field", field_.name)
    group = list(auts) if auts is not None else automorphisms(field_)
    conj = complex_conjugation(group)
    if conj is None:
        raise UnsupportedError(
            "No automorphism acts as complex conjugation", field_.name
        )
    identity = group[0]
    sub = fixed_field(field_, [identity, conj], group, name=f"{field_.name}+")
    real_eps = real_quadratic_unit(sub.field)
    eps = sub.include(real_eps)
    w, zeta = torsion_units(field_)
    roots: List[FieldElement] = [zeta**k for k in range(w)]
    eta = _square_search(eps, roots)
    hasse = 2 if eta is not None else 1
    unit = _normalise(eta) if eta is not None else eps
    real_reg = _abs_log_at(real_eps)
    regulator = real_reg * Fraction(2, hasse)
    logger.info(
        "%s: Hasse unit index %d, regulator %.12f", field_.name, hasse, float(regulator)
    )
    return UnitData(field_, unit, regulator, hasse, eps, sub)


@lru_cache(maxsize=FIELD_CACHE_SIZE)
def unit_data(field_: NumberField) -> UnitData:
    """Unit data for ℚ, imaginary quadratic, real quadratic and CM quartic fields.

    Raises:
        UnsupportedError: unit rank above one, or a rank-one field outside
            the supported families
    """
    rank = field_.unit_rank
    if rank == 0:
        return UnitData(field_, None, Certified.exact(1))
    if field_.signature == (2, 0):
        eps = real_quadratic_unit(field_)
        return UnitData(field_, eps, _abs_log_at(eps))
    if field_.signature == (0, 2):
        return cm_unit_data(field_)
    raise UnsupportedError(
        "unsupported unit rank", f"{field_.name} has unit rank {rank}"
    )
