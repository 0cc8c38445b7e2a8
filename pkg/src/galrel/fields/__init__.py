"""Number fields, their places, automorphisms, subfields and roots of unity."""

from galrel.fields.automorphisms import (
    Automorphism,
    automorphisms,
    complex_conjugation,
    galois_group,
)
from galrel.fields.number_field import (
    FieldElement,
    NumberField,
    make_field,
    rational_field,
)
from galrel.fields.places import Place, compute_places
from galrel.fields.subfields import SubfieldData, fixed_field
from galrel.fields.torsion import nu_valuation, torsion_units

__all__ = [
    "Automorphism",
    "FieldElement",
    "NumberField",
    "Place",
    "SubfieldData",
    "automorphisms",
    "complex_conjugation",
    "compute_places",
    "fixed_field",
    "galois_group",
    "make_field",
    "nu_valuation",
    "rational_field",
    "torsion_units",
]
