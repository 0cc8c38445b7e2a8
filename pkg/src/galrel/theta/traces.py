"""
Traces of the twisted theta operator over the fixed fields L^H, and the η
relation Σ n_H·η_{B(H)+D^H}(L^H) evaluated along two routes.

The direct route sums η over the lattice of each L^H separately. The grouped
route enumerates O_L once, keeps the points fixed by H, and measures them
with the pulled-back metric scaled by 1/|H|, which is the metric of L^H by
the change-of-metric identity.
"""

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any, List, Optional, Tuple

import mpmath
import numpy as np
from mpmath import mp

from galrel.arakelov.divisor import ArakelovDivisor
from galrel.config.constants import DEFAULT_ETA_TOL, VARIANT_TRACE
from galrel.errors import InputError
from galrel.exact.certified import Certified, csum
from galrel.exact.lattice import GramMatrix, enumerate_short_vectors
from galrel.fields.number_field import FieldElement
from galrel.groups.finite_group import Subgroup
from galrel.groups.group_algebra import IdempotentRelation
from galrel.theta.eta import EtaValue, eta, tail_bound, theta_sum, truncation_radius
from galrel.theta.metric import (
    b_divisor,
    canonical_variant,
    descend_infinite,
    metric_from_divisor,
    place_weights,
    pullback_infinite,
    twisted_norm,
)

if TYPE_CHECKING:
    from galrel.core.extension import GaloisExtension

logger = logging.getLogger(__name__)


def _top_divisor(
    ext: "GaloisExtension", divisor: Optional[ArakelovDivisor]
) -> ArakelovDivisor:
    return divisor if divisor is not None else ArakelovDivisor.zero(ext.field)


def check_change_metric(
    ext: "GaloisExtension",
    h: Subgroup,
    divisor: Optional[ArakelovDivisor],
    x: FieldElement,
) -> Tuple[Certified, Certified]:
    """(||ι(x)||²_{L,D}, |H|·||x||²_{L^H,D^H}) for x in L^H.

    Raises:
        InputError: D is not H-invariant or x does not belong to L^H
    """
    sub = ext.subfield(h)
    if x.owner is not sub.field:
        raise InputError("Sample element must belong to the subfield", "x")
    top = _top_divisor(ext, divisor)
    below = descend_infinite(sub, top)
    left = twisted_norm(top, sub.include(x))
    with mp.workprec(ext.field.places()[0].precision):
        right = twisted_norm(below, x) * h.order
    return left, right


def trace_eta(
    ext: "GaloisExtension",
    h: Subgroup,
    divisor: Optional[ArakelovDivisor] = None,
    tol: Any = DEFAULT_ETA_TOL,
) -> EtaValue:
    """Σ_{x∈O_{L^H}} e^{−π||ι(x)||²_{L,D}}.

    The metric of L is restricted to ι(O_{L^H}) through the inclusion
    matrix, so this never builds a divisor on L^H.

    Raises:
        InputError: D is not H-invariant
    """
    sub = ext.subfield(h)
    top = _top_divisor(ext, divisor)
    descend_infinite(sub, top)
    bits = ext.field.places()[0].precision
    with mp.workprec(bits):
        gram = metric_from_divisor(ext.field, top).transform(sub.inclusion_matrix)
    return theta_sum(gram, tol, sub.field.name, bits)



@dataclass
class EtaTerm:
    subgroup: str
    field_name: str
    coefficient: int
    eta: EtaValue


@dataclass
class EtaRelationResidual:
    """Σ n_H·η over the relation, by the direct and the grouped route.

    ``diagnostic`` is Σ_{x∈O_L} e^{−π||x||²_{L,D}}·Σ_{H: x∈L^H} n_H, the sum
    the trace argument needs to vanish. It equals ``grouped`` for the trace
    variant.
    """

    relation: str
    variant: str
    residual: Certified
    terms: List[EtaTerm]
    grouped: Certified
    diagnostic: Certified
    points: int
    tol: Any

    def routes_agree(self) -> bool:
        return (self.residual - self.grouped).within(2 * self.tol)


@dataclass
class _GroupedForm:
    subgroup: Subgroup
    coefficient: int
    gram: GramMatrix
    sub_gram: GramMatrix
    matrices: List[Any]
    kappa: Any


def _fixed_by(vector: Tuple[int, ...], matrices: List[Any]) -> bool:
    v = np.array(vector, dtype=object)
    return all(list(np.dot(v, m)) == list(vector) for m in matrices)


def _scale_lower_bound(top: List[Certified], scaled: List[Certified]) -> Any:
    """min_w scaled_w/top_w, from the certified ends of both balls."""
    return min(s.lower() / t.upper() for s, t in zip(scaled, top))


def _grouped_sums(
    ext: "GaloisExtension",
    plan: List[Tuple[Subgroup, int, ArakelovDivisor, GramMatrix]],
    top: ArakelovDivisor,
    tol: Any,
) -> Tuple[Certified, Certified, int]:
    """(grouped, diagnostic, points) from one enumeration of O_L.

    Each route's truncation error is kept below tol/2.
    """
    field_ = ext.field
    bits = field_.places()[0].precision
    mass = sum(abs(n) for _, n, _, _ in plan)
    top_weights = place_weights(top)
    with mp.workprec(bits):
        tol = mp.mpf(tol)
        top_gram = metric_from_divisor(field_, top)
        radius_sq = truncation_radius(top_gram, tol / (2 * mass))
        forms: List[_GroupedForm] = []
        for h, n, pulled, sub_gram in plan:
            kappa = _scale_lower_bound(top_weights, place_weights(pulled)) / h.order
            need = truncation_radius(sub_gram, tol / (2 * mass))
            radius_sq = max(radius_sq, need / kappa)
            matrices = [
                np.array(a.basis_matrix(), dtype=object)
                for a in ext.subgroup_automorphisms(h)
            ]
            forms.append(
                _GroupedForm(
                    h, n, metric_from_divisor(field_, pulled), sub_gram, matrices, kappa
                )
            )

        grouped_tail = sum(
            abs(f.coefficient) * tail_bound(f.sub_gram, f.kappa * radius_sq)
            for f in forms
        )
        diagnostic_tail = mass * tail_bound(top_gram, radius_sq)

        minus_pi = -Certified.pi()
        origin = sum(f.coefficient for f in forms)
        grouped = [Certified.exact(origin)]
        diagnostic = [Certified.exact(origin)]
        vectors = enumerate_short_vectors(top_gram, radius_sq, half=True)
        for v in vectors:
            weight = 0
            for f in forms:
                if not _fixed_by(v, f.matrices):
                    continue
                weight += f.coefficient
                q = f.gram.evaluate(v) / f.subgroup.order
                grouped.append((q * minus_pi).exp() * (2 * f.coefficient))
            if weight:
                q = top_gram.evaluate(v)
                diagnostic.append((q * minus_pi).exp() * (2 * weight))
        grouped_sum = csum(grouped)
        diagnostic_sum = csum(diagnostic)
        grouped_sum = Certified(grouped_sum.value, grouped_sum.radius + grouped_tail)
        diagnostic_sum = Certified(
            diagnostic_sum.value, diagnostic_sum.radius + diagnostic_tail
        )
    return grouped_sum, diagnostic_sum, 1 + 2 * len(vectors)


def eta_relation_residual(
    ext: "GaloisExtension",
    rel: IdempotentRelation,
    variant: str = VARIANT_TRACE,
    tol: Any = DEFAULT_ETA_TOL,
    divisor: Optional[ArakelovDivisor] = None,
) -> EtaRelationResidual:
    """Σ n_H·η_{B(H)+D^H}(L^H) with its per-subgroup terms.

    The direct residual carries the truncation errors of all its terms in
    its radius, at most tol/2 in total.

    Raises:
        InputError: unknown variant, or D not invariant under some H in the
            support of the relation
    """
    variant = canonical_variant(variant)
    top = _top_divisor(ext, divisor)
    support = rel.terms()
    mass = sum(abs(n) for _, n in support) or 1
    terms: List[EtaTerm] = []
    plan = []
    for h, n in support:
        sub = ext.subfield(h)
        twist = descend_infinite(sub, top) + b_divisor(sub.field, h.order, variant)
        value = eta(sub.field, twist, mpmath.mpf(tol) / mass)
        terms.append(EtaTerm(h.label(), sub.field.name, n, value))
        plan.append(
            (h, n, pullback_infinite(sub, twist), metric_from_divisor(sub.field, twist))
        )

    with mp.workprec(ext.field.places()[0].precision):
        direct = csum(t.eta.enclosure() * t.coefficient for t in terms)
    if plan:
        grouped, diagnostic, points = _grouped_sums(ext, plan, top, tol)
    else:
        grouped = diagnostic = Certified.exact(0)
        points = 0
    logger.info(
        "η relation on %s (%s): direct %s, grouped %s, diagnostic %s",
        ext.name,
        variant,
        mpmath.nstr(direct.value, 12),
        mpmath.nstr(grouped.value, 12),
        mpmath.nstr(diagnostic.value, 12),
    )
    return EtaRelationResidual(
        str(rel), variant, direct, terms, grouped, diagnostic, points, tol
    )
