"""Ideals, prime splitting, units, class groups and their Galois action."""

from galrel.ideals.class_group import ClassGroup, class_group, lambda_table
from galrel.ideals.galois_action import (
    galois_action_on_classes,
    idempotent_trace_on_classgroup,
)
from galrel.ideals.ideal import Ideal
from galrel.ideals.primes import PrimeIdeal, factor_prime, splitting_type
from galrel.ideals.principal import is_principal, minkowski_bound
from galrel.ideals.transfer import TransferRow, transfer_check
from galrel.ideals.units import UnitData, real_quadratic_unit, unit_data
from galrel.ideals.zeta import ZetaPartial, zeta_partial

__all__ = [
    "ClassGroup",
    "Ideal",
    "PrimeIdeal",
    "TransferRow",
    "UnitData",
    "ZetaPartial",
    "class_group",
    "factor_prime",
    "galois_action_on_classes",
    "idempotent_trace_on_classgroup",
    "is_principal",
    "lambda_table",
    "minkowski_bound",
    "real_quadratic_unit",
    "splitting_type",
    "transfer_check",
    "unit_data",
    "zeta_partial",
]
