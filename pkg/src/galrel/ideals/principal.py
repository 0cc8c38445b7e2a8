"""
Minkowski bound and principality testing by short-vector enumeration.
"""

import logging
from fractions import Fraction
from math import factorial
from typing import Optional

from mpmath import mp

from galrel.errors import UnsupportedError
from galrel.exact.certified import Certified
from galrel.exact.lattice import GramMatrix, enumerate_short_vectors
from galrel.fields.number_field import FieldElement, NumberField
from galrel.fields.places import embedding_gram
from galrel.ideals.ideal import Ideal
from galrel.ideals.units import UnitData, unit_data

logger = logging.getLogger(__name__)


def minkowski_bound(field_: NumberField) -> Certified:
    """(n!/nⁿ)·(4/π)^s·√|d_K|."""
    n = field_.degree
    _, s = field_.signature
    with mp.workprec(field_.places()[0].precision):
        head = Certified.exact(Fraction(factorial(n), n**n))
        four_over_pi = Certified.exact(4) / Certified.pi()
        root = Certified.exact(abs(field_.discriminant)).sqrt() if n > 1 else 1
        return head * four_over_pi**s * root


def _t2_gram(field_: NumberField) -> GramMatrix:
    if field_.signature[0] == field_.degree:
        return GramMatrix.from_exact(field_.trace_form())
    return GramMatrix.from_certified(embedding_gram(field_))


def generator_bound(field_: NumberField, norm: int, units: UnitData) -> Certified:
    """Upper bound for Σ|τ(g)|² over some generator g of an ideal of norm N.

    Rank 0: every generator has |τ(g)|² = N^{2/n}. Rank 1 with two places of
    local degree d: multiplying by the unit moves |τ₁(g)|/|τ₂(g)| into
    [E⁻¹, E] with E = |τ₁(ε)|, so Σ ≤ d·N^{1/d}·(E + 1/E).

    Raises:
        UnsupportedError: unit rank above one or unequal local degrees
    """
    n = field_.degree
    rank = field_.unit_rank
    places = field_.places()
    with mp.workprec(places[0].precision):
        size = Certified.exact(norm)
        if rank == 0:
            if n == 1:
                return size * size
            return Certified.exact(n) * Certified.of(mp.mpf(norm) ** (mp.mpf(2) / n))
        if rank > 1 or units.unit is None:
            raise UnsupportedError("unsupported unit rank", f"unit rank {rank}")
        if len(places) != 2 or places[0].local_degree != places[1].local_degree:
            raise UnsupportedError("unsupported unit rank", "mixed signature")
        d = places[0].local_degree
        e = places[0].embed(units.unit).abs()
        spread = e + Certified.exact(1) / e
        root = size if d == 1 else size.sqrt()
        return Certified.exact(d) * root * spread


def is_principal(
    ideal: Ideal, units: Optional[UnitData] = None
) -> Optional[FieldElement]:
    """A generator of ``ideal`` or None when it is not principal.

    Candidates are the lattice points of the ideal with Σ|τ(x)|² inside the
    generator bound; x generates exactly when |N(x)| = N(A).

    Raises:
        UnsupportedError: the unit group is outside the supported cases
    """
    field_ = ideal.owner
    if not ideal.is_integral:
        integral = Ideal(field_, ideal.rows)
        g = is_principal(integral, units)
        return None if g is None else g / ideal.denominator
    norm = int(ideal.norm)
    if norm == 1:
        return field_.one()
    data = units if units is not None else unit_data(field_)
    with mp.workprec(field_.places()[0].precision):
        bound = generator_bound(field_, norm, data)
        local = _t2_gram(field_).transform([list(r) for r in ideal.rows])
        if field_.degree == 1:
            vectors = [(1,)]
        else:
            vectors = enumerate_short_vectors(local, bound.upper(), half=True)
    for v in vectors:
        coords = [sum(c * r[j] for c, r in zip(v, ideal.rows)) for j in range(len(v))]
        x = field_.from_basis(coords)
        if abs(x.norm()) == norm:
            logger.debug("Ideal %s is generated by %s", ideal, x)
            return x
    return None
