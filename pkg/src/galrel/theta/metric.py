"""
Divisor-twisted Minkowski metrics.

A divisor A supported at the infinite places of K defines

    ||x||²_{K,A} = Σ_real e^{−2a_v}·τ_v(x)² + Σ_complex 2e^{−a_v}·|τ_v(x)|²

which at A = 0 is the usual T2 form with complex places counted twice.
"""

import logging
from fractions import Fraction
from typing import List, Optional, Sequence

from mpmath import mp

from galrel.arakelov.divisor import ArakelovDivisor, Coefficient, pullback
from galrel.config.constants import VARIANT_ALIASES, VARIANT_TRACE, VARIANTS
from galrel.errors import InputError
from galrel.exact.certified import Certified, csum
from galrel.exact.lattice import GramMatrix
from galrel.fields.number_field import FieldElement, NumberField
from galrel.fields.places import embedding_gram
from galrel.fields.subfields import SubfieldData

logger = logging.getLogger(__name__)

# slack when comparing coefficients above one place of L^H
INVARIANCE_SLACK = mp.mpf(2) ** -40


def infinite_divisor(
    owner: NumberField, coefficients: Sequence[Coefficient]
) -> ArakelovDivisor:
    """Σ a_v·v over the infinite places of ``owner``, in ``places()`` order."""
    return ArakelovDivisor.build(owner, None, coefficients)


def require_infinite(divisor: ArakelovDivisor) -> None:
    """Raises InputError unless the finite part of ``divisor`` is empty."""
    if not divisor.is_infinite():
        raise InputError(
            "Theta sums take divisors supported at the infinite places only",
            "divisor",
        )


def _is_exact_zero(divisor: ArakelovDivisor) -> bool:
    return all(a.value == 0 and a.radius == 0 for a in divisor.infinite)


def place_weights(
    divisor: ArakelovDivisor, precision_bits: Optional[int] = None
) -> List[Certified]:
    """e^{−2a_v} at real places and 2e^{−a_v} at complex places."""
    places = divisor.owner.places(precision_bits)
    with mp.workprec(places[0].precision):
        return [
            (a * -2).exp() if place.is_real else (-a).exp() * 2
            for place, a in zip(places, divisor.infinite)
        ]


def metric_from_divisor(
    field_: NumberField,
    divisor: Optional[ArakelovDivisor] = None,
    precision_bits: Optional[int] = None,
) -> GramMatrix:
    """Gram matrix of the integral basis of ``field_`` under ||·||_{K,A}.

    Totally real fields with A = 0 get the exact trace form.

    Raises:
        InputError: the divisor lives elsewhere or has a finite part
    """
    if divisor is None:
        divisor = ArakelovDivisor.zero(field_)
    if divisor.owner is not field_:
        raise InputError("Divisor does not live on this field", "divisor")
    require_infinite(divisor)
    bits = field_.places(precision_bits)[0].precision
    with mp.workprec(bits):
        if field_.signature[1] == 0 and _is_exact_zero(divisor):
            return GramMatrix.from_exact(field_.trace_form())
        weights = place_weights(divisor, precision_bits)
        rows = embedding_gram(field_, weights, precision_bits)
        return GramMatrix.from_certified(rows)


def twisted_norm(
    divisor: ArakelovDivisor,
    x: FieldElement,
    precision_bits: Optional[int] = None,
) -> Certified:
    """||x||²_{K,A} evaluated place by place."""
    if x.owner is not divisor.owner:
        raise InputError("Element and divisor live on different fields", "x")
    places = divisor.owner.places(precision_bits)
    weights = place_weights(divisor, precision_bits)
    with mp.workprec(places[0].precision):
        return csum(m * p.embed(x).abs_sq() for p, m in zip(places, weights))


def canonical_variant(variant: str) -> str:
    """``paper`` or ``trace``; ``pi`` is read as ``paper``.

    Raises:
        InputError: unknown variant
    """
    if variant not in VARIANTS:
        raise InputError(f"Unknown B(H) variant '{variant}'", "variant")
    return VARIANT_ALIASES.get(variant, variant)


def b_divisor(field_: NumberField, order: int, variant: str) -> ArakelovDivisor:
    """B(H) on L^H for a subgroup of order ``order``.

    ``paper`` (alias ``pi``): −log|H|/(2π) at real places and −log(|H|/2)/π
    at complex places. ``trace``: −log|H|/2 and −log|H|, the coefficients that
    turn the metric of L^H into |H| times itself. The trivial subgroup gets the
    zero divisor in both variants.

    Raises:
        InputError: unknown variant or order below 1
    """
    variant = canonical_variant(variant)
    if order < 1:
        raise InputError("Subgroup order must be positive", "order")
    if order == 1:
        return ArakelovDivisor.zero(field_)
    places = field_.places()
    with mp.workprec(places[0].precision):
        log_h = Certified.exact(order).log()
        if variant == VARIANT_TRACE:
            real, complex_ = -log_h / 2, -log_h
        else:
            pi = Certified.pi()
            real = -log_h / (pi * 2)
            complex_ = -Certified.exact(Fraction(order, 2)).log() / pi
        coefficients = [real if p.is_real else complex_ for p in places]
    logger.debug("B(H) on %s, |H| = %d, %s variant", field_.name, order, variant)
    return infinite_divisor(field_, coefficients)


def pullback_infinite(sub: SubfieldData, divisor: ArakelovDivisor) -> ArakelovDivisor:
    """H-invariant divisor on L from an infinite divisor on L^H.

    Complex places over real ones receive twice the coefficient below them.
    """
    require_infinite(divisor)
    return pullback(sub, divisor)


def descend_infinite(sub: SubfieldData, divisor: ArakelovDivisor) -> ArakelovDivisor:
    """The divisor A on L^H with D = pullback_infinite(A).

    Raises:
        InputError: D has a finite part or is not constant on the places
            above some place of L^H
    """
    require_infinite(divisor)
    if divisor.owner is not sub.ambient:
        raise InputError("Divisor does not live on the top field", "divisor")
    lower = sub.field.places()
    with mp.workprec(lower[0].precision):
        found: List[Optional[Certified]] = [None] * len(lower)
        for link in sub.place_links():
            candidate = divisor.infinite[link.upper] / link.ramification
            seen = found[link.lower]
            if seen is None:
                found[link.lower] = candidate
            elif not seen.overlaps(candidate, INVARIANCE_SLACK):
                raise InputError(
                    "Divisor is not invariant under the subgroup", "divisor"
                )
    return infinite_divisor(sub.field, [a for a in found if a is not None])

