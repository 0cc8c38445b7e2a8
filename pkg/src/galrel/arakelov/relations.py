"""
Relations among genera, class numbers, regulators and roots of unity of
the fixed fields L^H induced by a relation Σ n_H ε_H = 0.
"""

import logging
from dataclasses import dataclass
from dataclasses import field as dataclass_field
from math import gcd
from typing import TYPE_CHECKING, Any, Dict, List, Mapping, Optional, Tuple

import mpmath
from mpmath import mp

from galrel.arakelov.regulator import RegulatorData
from galrel.config.constants import PROVENANCE_COMPUTED, PROVENANCE_FORMULA
from galrel.errors import InputError
from galrel.exact.certified import Certified, csum
from galrel.groups.finite_group import Subgroup
from galrel.groups.group_algebra import IdempotentRelation
from galrel.ideals.zeta import quadratic_l_value

if TYPE_CHECKING:
    from galrel.core.extension import GaloisExtension

logger = logging.getLogger(__name__)

HReg = Mapping[Tuple[int, ...], Tuple[int, str, RegulatorData]]


@dataclass
class RelationTerm:
    """One subgroup's contribution with the inputs it was computed from."""

    subgroup: str
    field_name: str
    coefficient: int
    values: Dict[str, Any] = dataclass_field(default_factory=dict)
    provenance: Dict[str, str] = dataclass_field(default_factory=dict)


@dataclass
class RelationResidual:
    """Σ over the relation's terms, with an optional second evaluation route."""

    check: str
    relation: str
    residual: Certified
    terms: List[RelationTerm]
    hypothesis: Optional[bool] = None
    second_route: Optional[Certified] = None

    def within(self, tol: Any) -> bool:
        if not self.residual.within(tol):
            return False
        if self.second_route is None:
            return True
        return (self.residual - self.second_route).within(tol)


def _precision(ext: "GaloisExtension") -> int:
    return ext.field.places()[0].precision


def check_genus_relation(
    ext: "GaloisExtension", rel: IdempotentRelation
) -> RelationResidual:
    """Σ n_H g_{L^H} − Σ n_H log w_{L^H}.

    ``hypothesis`` records whether gcd(|H|, w_L) = 1 for every H in the
    support of the relation.
    """
    w_top, _ = ext.torsion(ext.subgroups[0])
    terms: List[RelationTerm] = []
    with mp.workprec(_precision(ext)):
        pieces = []
        for h, n in rel.terms():
            genus = ext.genus(h)
            log_w = Certified.exact(genus.w).log()
            pieces.append((genus.value - log_w) * n)
            terms.append(
                RelationTerm(
                    h.label(),
                    genus.field_name,
                    n,
                    {"g": genus.value, "w": genus.w, "d": genus.discriminant},
                    {"g": PROVENANCE_FORMULA, "w": PROVENANCE_COMPUTED},
                )
            )
        residual = csum(pieces)
    hypothesis = all(gcd(h.order, w_top) == 1 for h, _ in rel.terms())
    logger.info(
        "Genus relation on %s: residual %s (coprimality %s)",
        ext.name,
        residual.value,
        hypothesis,
    )
    return RelationResidual("genus", str(rel), residual, terms, hypothesis)


def class_numbers_and_regulators(
    ext: "GaloisExtension", subs: List[Subgroup]
) -> Dict[Tuple[int, ...], Tuple[int, str, RegulatorData]]:
    """(h, provenance of h, Reg) for every listed subgroup, computed by ``ext``."""
    table = {}
    for h in subs:
        cl = ext.class_group(h)
        table[h.elements] = (cl.order, PROVENANCE_COMPUTED, ext.regulator(h))
    return table


def _hreg_for(
    ext: "GaloisExtension", rel: IdempotentRelation, hreg: Optional[HReg]
) -> HReg:
    support = [h for h, _ in rel.terms()]
    if hreg is None:
        return class_numbers_and_regulators(ext, support)
    missing = [h.label() for h in support if h.elements not in hreg]
    if missing:
        raise InputError(
            f"Missing class number and regulator for {', '.join(missing)}", "hreg"
        )
    return hreg


def analytic_hreg_over_w(ext: "GaloisExtension", h: Subgroup) -> Optional[Certified]:
    """log(h·Reg/w) of L^H from the residue of its Dedekind zeta function.

    Only for multiquadratic L^H, whose zeta function is ζ·∏ L(s, χ_D) over its
    quadratic subfields ℚ(√D); returns None otherwise.
    """
    order = ext.group.order
    members = set(h.elements)
    above = [
        s
        for s in ext.subgroups
        if 2 * s.order == order and members <= set(s.elements)
    ]
    common = set(range(order))
    for s in above:
        common &= set(s.elements)
    if common != members:
        return None
    field_ = ext.subfield(h).field
    bits = _precision(ext)
    r1, r2 = field_.signature
    with mp.workprec(bits):
        log_residue = csum(
            quadratic_l_value(ext.subfield(s).field.discriminant, bits).log()
            for s in above
        )
        return (
            log_residue
            + Certified.exact(abs(field_.discriminant)).log() / 2
            - Certified.exact(2).log() * r1
            - (Certified.pi() * 2).log() * r2
        )


def check_brauer_identity(
    ext: "GaloisExtension",
    rel: IdempotentRelation,
    hreg: Optional[HReg] = None,
) -> RelationResidual:
    """Σ n_H (log h + log Reg − log w) over L^H.

    When every L^H in the support is multiquadratic, the second route
    recomputes each log(h·Reg/w) from quadratic L-values at s = 1 and never
    touches class groups or units.
    """
    table = _hreg_for(ext, rel, hreg)
    terms: List[RelationTerm] = []
    with mp.workprec(_precision(ext)):
        pieces = []
        for h, n in rel.terms():
            w, _ = ext.torsion(h)
            class_number, h_source, reg = table[h.elements]
            log_reg = reg.value.log()
            pieces.append(
                (
                    Certified.exact(class_number).log()
                    + log_reg
                    - Certified.exact(w).log()
                )
                * n
            )
            terms.append(
                RelationTerm(
                    h.label(),
                    ext.subfield_name(h),
                    n,
                    {"h": class_number, "Reg": reg.value, "w": w},
                    {"h": h_source, "Reg": reg.provenance, "w": PROVENANCE_COMPUTED},
                )
            )
        residual = csum(pieces)
    analytic = [(analytic_hreg_over_w(ext, h), n) for h, n in rel.terms()]
    second = None
    if all(value is not None for value, _ in analytic):
        with mp.workprec(_precision(ext)):
            second = csum(value * n for value, n in analytic if value is not None)
    logger.info(
        "Brauer identity on %s: residual %s, class number formula route %s",
        ext.name,
        residual.value,
        "n/a" if second is None else mpmath.nstr(second.value, 15),
    )
    return RelationResidual("brauer", str(rel), residual, terms, second_route=second)


def check_residue_relation(
    ext: "GaloisExtension",
    rel: IdempotentRelation,
    hreg: Optional[HReg] = None,
) -> RelationResidual:
    """Σ n_H g_{L^H} − Σ n_H log(h_{L^H}·Reg(L^H))."""
    table = _hreg_for(ext, rel, hreg)
    terms: List[RelationTerm] = []
    with mp.workprec(_precision(ext)):
        pieces = []
        for h, n in rel.terms():
            genus = ext.genus(h)
            class_number, h_source, reg = table[h.elements]
            log_hreg = Certified.exact(class_number).log() + reg.value.log()
            pieces.append((genus.value - log_hreg) * n)
            terms.append(
                RelationTerm(
                    h.label(),
                    genus.field_name,
                    n,
                    {"g": genus.value, "h": class_number, "Reg": reg.value},
                    {"g": PROVENANCE_FORMULA, "h": h_source, "Reg": reg.provenance},
                )
            )
        residual = csum(pieces)
    logger.info("Residue relation on %s: residual %s", ext.name, residual.value)
    return RelationResidual("residue", str(rel), residual, terms)
