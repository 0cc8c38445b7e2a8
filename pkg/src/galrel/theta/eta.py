"""
Certified theta sums η_A(K) = Σ_{x∈O_K} e^{−π||x||²_{K,A}}.

Vectors with q(x) > R² are not enumerated. Their contribution is bounded by
e^{−πR²/2}·Σ_x e^{−πq(x)/2}, and the half-exponent sum by a box count over
the smallest eigenvalue λ of the Gram matrix:

    Σ_x e^{−πq(x)/2} ≤ (1 + 2/(e^{πλ/2} − 1))^n
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional

import mpmath
from mpmath import mp

from galrel.arakelov.divisor import ArakelovDivisor
from galrel.config.constants import DEFAULT_ETA_TOL
from galrel.errors import CertificationError, InputError
from galrel.exact.certified import Certified, csum
from galrel.exact.lattice import GramMatrix, enumerate_short_vectors
from galrel.fields.number_field import NumberField
from galrel.theta.metric import metric_from_divisor, require_infinite

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EtaValue:
    """A theta sum with the radius it was truncated at.

    ``value`` is the certified sum over the enumerated points; the true η
    lies in ``value`` widened by ``tail_bound``.
    """

    field_name: str
    value: Certified
    tail_bound: Any
    radius_sq: Any
    points: int

    def enclosure(self) -> Certified:
        return Certified(self.value.value, self.value.radius + self.tail_bound)

    def to_dict(self) -> Dict[str, object]:
        return {
            "field": self.field_name,
            "value": self.value.to_dict(),
            "tail_bound": mpmath.nstr(self.tail_bound, 3, min_fixed=0, max_fixed=0),
            "radius_sq": mpmath.nstr(self.radius_sq, 6),
            "points": self.points,
        }


def half_theta_bound(gram: GramMatrix) -> Any:
    """(1 + 2/(e^{πλ/2} − 1))^n ≥ Σ_x e^{−πq(x)/2}."""
    lam = gram.check_positive_definite()
    return (1 + 2 / mpmath.expm1(mp.pi * lam / 2)) ** gram.dimension


def tail_bound(gram: GramMatrix, radius_sq: Any) -> Any:
    """Upper bound on Σ_{q(x) > radius_sq} e^{−πq(x)}."""
    return mpmath.exp(-mp.pi * mp.mpf(radius_sq) / 2) * half_theta_bound(gram)


def truncation_radius(gram: GramMatrix, tol: Any) -> Any:
    """Smallest R² with tail_bound(gram, R²) ≤ tol, never below 1."""
    needed = 2 * (mpmath.log(half_theta_bound(gram)) - mpmath.log(tol)) / mp.pi
    # round up so the bound survives rounding in tail_bound
    return max(needed * (1 + mpmath.ldexp(1, -20)), mp.mpf(1))


def theta_sum(
    gram: GramMatrix, tol: Any, field_name: str, precision_bits: int
) -> EtaValue:
    """1 + Σ_{x≠0} e^{−πq(x)} with tail at most ``tol``/2.

    Raises:
        InputError: tol is not positive
        CertificationError: the rounding error exceeds tol/2 at this precision
        BudgetExhaustedError: too many lattice points below the radius
    """
    if not tol > 0:
        raise InputError("Tolerance must be positive", "tol")
    with mp.workprec(precision_bits):
        tol = mp.mpf(tol)
        radius_sq = truncation_radius(gram, tol / 2)
        tail = tail_bound(gram, radius_sq)
        vectors = enumerate_short_vectors(gram, radius_sq, half=True)
        minus_pi = -Certified.pi()
        value = (
            Certified.exact(1)
            + csum((gram.evaluate(v) * minus_pi).exp() for v in vectors) * 2
        )
    if value.radius > tol / 2:
        raise CertificationError(
            f"Theta sum of {field_name} not certified to {mpmath.nstr(tol, 3)}",
            precision=precision_bits,
        )
    logger.debug(
        "η(%s) = %s from %d points, tail <= %s",
        field_name,
        mpmath.nstr(value.value, 15),
        1 + 2 * len(vectors),
        mpmath.nstr(tail, 3),
    )
    return EtaValue(field_name, value, tail, radius_sq, 1 + 2 * len(vectors))


def eta(
    field_: NumberField,
    divisor: Optional[ArakelovDivisor] = None,
    tol: Any = DEFAULT_ETA_TOL,
    precision_bits: Optional[int] = None,
) -> EtaValue:
    """η_A(K) for an infinite divisor A (zero when omitted).

    Raises:
        InputError: A has a finite part, lives on another field, or tol ≤ 0
        CertificationError: tol is below what the precision can certify
    """
    if divisor is not None:
        require_infinite(divisor)
    gram = metric_from_divisor(field_, divisor, precision_bits)
    bits = field_.places(precision_bits)[0].precision
    return theta_sum(gram, tol, field_.name, bits)
