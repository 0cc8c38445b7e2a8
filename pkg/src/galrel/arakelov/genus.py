"""
The Arakelov genus g_K = log(w·√|d_K| / (2^r·(2π)^s)).
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Dict, Optional, Tuple

from mpmath import mp

from galrel.exact.certified import Certified
from galrel.fields.number_field import NumberField
from galrel.fields.torsion import torsion_units

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GenusValue:
    field_name: str
    value: Certified
    w: int
    discriminant: int
    signature: Tuple[int, int]

    def to_dict(self) -> Dict[str, object]:
        return {
            "field": self.field_name,
            "g": self.value.to_dict(),
            "w": self.w,
            "d": self.discriminant,
            "signature": list(self.signature),
        }


def arakelov_genus(field_: NumberField, w: Optional[int] = None) -> GenusValue:
    """g_K from the discriminant, the signature and w = |μ(K)|.

    The rational part w/2^r and a square |d_K| are handled exactly, so g_ℚ
    comes out as an exact zero.
    """
    if w is None:
        w, _ = torsion_units(field_)
    d = field_.discriminant
    r, s = field_.signature
    head = Fraction(w, 2**r)
    root = isqrt(abs(d))
    places = field_.places()
    with mp.workprec(places[0].precision):
        if root * root == abs(d):
            head *= root
            body = Certified.exact(1)
        else:
            body = Certified.exact(abs(d)).sqrt()
        if s == 0 and head == 1 and root * root == abs(d):
            value = Certified.exact(0)
        else:
            value = (body * head).log()
            if s:
                value = value - (Certified.pi() * 2).log() * s
    logger.debug("g(%s) = %s", field_.name, value.value)
    return GenusValue(field_.name, value, w, d, (r, s))
