"""
Input records: field and extension specs as read from JSON.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, TypedDict, Union

RationalText = Union[int, str]


class CertifiedDict(TypedDict):
    """A certified real as serialised in reports."""

    value: str
    radius: str


class BaseSpecDict(TypedDict, total=False):
    subgroup_generators: List[int]
    name: str


class FieldSpecDict(TypedDict, total=False):
    """JSON shape of a field spec; only name and min_poly are required."""

    name: str
    min_poly: List[int]
    integral_basis: List[List[RationalText]]
    automorphism_hints: List[List[RationalText]]
    description: str


class ExtensionSpecDict(FieldSpecDict, total=False):
    """Field spec of a Galois L plus an optional base and supplied regulators."""

    base: BaseSpecDict
    supplied_regulators: Dict[str, str]


@dataclass
class FieldSpec:
    """Parsed field spec."""

    name: str
    min_poly: List[int]
    integral_basis: Optional[List[List[RationalText]]] = None
    automorphism_hints: Optional[List[List[RationalText]]] = None
    supplied_regulators: Dict[str, str] = field(default_factory=dict)
    base_generators: Optional[List[int]] = None
    description: str = ""
    source: str = ""
