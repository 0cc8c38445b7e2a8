"""
Regulators with provenance: computed from a fundamental unit, fixed by
formula (unit rank 0) or supplied with the input.
"""

import logging
from dataclasses import dataclass
from decimal import Decimal
from typing import Dict, Optional

import mpmath
from mpmath import mp

from galrel.config.constants import (
    PROVENANCE_COMPUTED,
    PROVENANCE_FORMULA,
    PROVENANCE_SUPPLIED,
)
from galrel.errors import InputError, UnsupportedError
from galrel.exact.certified import Certified
from galrel.fields.number_field import NumberField
from galrel.ideals.units import cm_unit_data, real_quadratic_unit, unit_data

logger = logging.getLogger(__name__)

# relative agreement required between a supplied and a computed regulator
SUPPLIED_TOLERANCE = mpmath.mpf("1e-8")


@dataclass(frozen=True)
class RegulatorData:
    field_name: str
    value: Certified
    provenance: str
    cross_checked: Optional[bool] = None

    def to_dict(self) -> Dict[str, object]:
        out: Dict[str, object] = {
            "field": self.field_name,
            "value": self.value.to_dict(),
            "provenance": self.provenance,
        }
        if self.cross_checked is not None:
            out["cross_checked"] = self.cross_checked
        return out


def real_quadratic_regulator(field_: NumberField) -> RegulatorData:
    """log ε for the fundamental unit ε > 1 of a real quadratic field.

    Raises:
        UnsupportedError: the field is not real quadratic
    """
    eps = real_quadratic_unit(field_)
    place = field_.places()[0]
    with mp.workprec(place.precision):
        value = place.embed(eps).abs().log()
    return RegulatorData(field_.name, value, PROVENANCE_COMPUTED)


def cm_quartic_regulator(field_: NumberField) -> RegulatorData:
    """(2/Q)·Reg(K⁺) with the Hasse unit index Q from the square search."""
    data = cm_unit_data(field_)
    return RegulatorData(field_.name, data.regulator, PROVENANCE_COMPUTED)


def _computed(field_: NumberField) -> RegulatorData:
    if field_.unit_rank == 0:
        with mp.workprec(field_.places()[0].precision):
            return RegulatorData(field_.name, Certified.exact(1), PROVENANCE_FORMULA)
    data = unit_data(field_)
    return RegulatorData(field_.name, data.regulator, PROVENANCE_COMPUTED)


def regulator(field_: NumberField, supplied: Optional[str] = None) -> RegulatorData:
    """Reg(K) from the supported families, or the supplied decimal value.

    A supplied value is compared with the computed one whenever the field
    is supported; the comparison result is kept in ``cross_checked``.

    Raises:
        InputError: the supplied value is not a positive decimal, or it
            disagrees with the computed regulator
        UnsupportedError: nothing supplied and the unit rank is unsupported
    """
    if supplied is None:
        return _computed(field_)
    try:
        computed: Optional[RegulatorData] = _computed(field_)
    except UnsupportedError:
        computed = None
    places = field_.places()

    with mp.workprec(places[0].precision):
        try:
            value = mp.mpf(supplied)
        except (ValueError, TypeError) as e:
            raise InputError(
                f"Bad regulator '{supplied}'", "supplied_regulators"
            ) from e
        if value <= 0:
            raise InputError("Regulators are positive", "supplied_regulators")
        # half a unit in the last digit given
        exponent = Decimal(supplied).as_tuple().exponent
        if not isinstance(exponent, int):
            raise InputError(f"Bad regulator '{supplied}'", "supplied_regulators")
        given = Certified.of(value, mpmath.mpf(10) ** exponent / 2)
        agrees = None
        if computed is not None:
            gap = abs(computed.value.value - given.value)
            agrees = bool(gap <= SUPPLIED_TOLERANCE * given.value + given.radius)
            if not agrees:
                raise InputError(
                    f"Supplied regulator {supplied} disagrees with computed "
                    f"{mpmath.nstr(computed.value.value, 15)}",
                    "supplied_regulators",
                )
    logger.info("Regulator of %s supplied as %s", field_.name, supplied)
    return RegulatorData(field_.name, given, PROVENANCE_SUPPLIED, agrees)
