"""Arakelov divisors, genera, regulators and the relations among them."""

from galrel.arakelov.divisor import (
    ArakelovDivisor,
    principal_divisor,
    pullback,
    pushforward,
)
from galrel.arakelov.genus import GenusValue, arakelov_genus
from galrel.arakelov.regulator import (
    RegulatorData,
    cm_quartic_regulator,
    real_quadratic_regulator,
    regulator,
)
from galrel.arakelov.relations import (
    RelationResidual,
    check_brauer_identity,
    check_genus_relation,
    check_residue_relation,
)

__all__ = [
    "ArakelovDivisor",
    "GenusValue",
    "RegulatorData",
    "RelationResidual",
    "arakelov_genus",
    "check_brauer_identity",
    "check_genus_relation",
    "check_residue_relation",
    "cm_quartic_regulator",
    "principal_divisor",
    "pullback",
    "pushforward",
    "real_quadratic_regulator",
    "regulator",
]
