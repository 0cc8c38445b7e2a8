"""
Handler for a Galois number field L/ℚ: automorphisms, subgroup lattice,
relations and the fixed fields L^H with their invariants.
"""

import logging
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from galrel.arakelov.genus import GenusValue, arakelov_genus
from galrel.arakelov.regulator import RegulatorData, regulator
from galrel.errors import InputError, UnsupportedError
from galrel.fields.automorphisms import Automorphism, Hint, automorphisms, galois_group
from galrel.fields.number_field import FieldElement, NumberField
from galrel.fields.subfields import SubfieldData, fixed_field
from galrel.fields.torsion import torsion_units
from galrel.groups.finite_group import FiniteGroup, Subgroup, make_subgroup, subgroups
from galrel.groups.group_algebra import IdempotentRelation, find_relations
from galrel.ideals.class_group import ClassGroup, class_group

logger = logging.getLogger(__name__)

Key = Tuple[int, ...]


class GaloisExtension:
    """Handler for L/ℚ Galois; everything is computed on first use and cached."""

    def __init__(
        self,
        field_: NumberField,
        hints: Optional[Sequence[Hint]] = None,
        supplied_regulators: Optional[Mapping[str, str]] = None,
        base_generators: Optional[Sequence[int]] = None,
    ) -> None:
        """Initialise the handler.

        Args:
            field_: The Galois field L
            hints: Images of θ under (generators of) Gal(L/ℚ)
            supplied_regulators: Decimal regulators keyed by subgroup label
                or subfield name
            base_generators: Automorphism indices generating Gal(L/K) for a
                Galois base K; the base is ℚ when omitted
        """
        self.field = field_
        self._hints = list(hints) if hints else None
        self.supplied_regulators = dict(supplied_regulators or {})
        self._base_generators = list(base_generators) if base_generators else None
        self._base: Optional[Subgroup] = None
        self._automorphisms: Optional[List[Automorphism]] = None
        self._group: Optional[FiniteGroup] = None
        self._subgroups: Optional[List[Subgroup]] = None
        self._relations: Optional[List[IdempotentRelation]] = None
        self._subfields: Dict[Key, SubfieldData] = {}
        self._torsion: Dict[Key, Tuple[int, FieldElement]] = {}

    @property
    def name(self) -> str:
        return self.field.name

    @property
    def automorphisms(self) -> List[Automorphism]:
        """Gal(L/ℚ) as verified automorphisms, identity first.

        Raises:
            UnsupportedError: L/ℚ is not Galois
        """
        if self._automorphisms is None:
            auts = automorphisms(self.field, self._hints)
            if len(auts) != self.field.degree:
                raise UnsupportedError(
                    "Field is not Galois over ℚ",
                    f"{len(auts)} automorphisms for degree {self.field.degree}",
                )
            self._automorphisms = auts
        return self._automorphisms

    @property
    def group(self) -> FiniteGroup:
        if self._group is None:
            self._group = galois_group(self.automorphisms, name=f"Gal({self.name})")
        return self._group

    @property
    def subgroups(self) -> List[Subgroup]:
        if self._subgroups is None:
            self._subgroups = subgroups(self.group)
        return self._subgroups

    @property
    def base(self) -> Subgroup:
        """Gal(L/K) for the base K; all of Gal(L/ℚ) when K = ℚ."""
        if self._base is None:
            if self._base_generators is None:
                self._base = self.subgroups[-1]
            else:
                self._base = self.subgroup(self._base_generators)
        return self._base

    @property
    def relations(self) -> List[IdempotentRelation]:
        """Relation basis among ε_H for the subgroups H of Gal(L/K)."""
        if self._relations is None:
            base = set(self.base.elements)
            self._relations = find_relations(
                self.group,
                self.subgroups,
                allowed=lambda h: set(h.elements) <= base,
            )
        return self._relations

    def subgroup(self, elements: Sequence[int]) -> Subgroup:
        """The subgroup with the given automorphism indices.

        Raises:
            InputError: the indices do not form a subgroup
        """
        if any(not 0 <= i < self.group.order for i in elements):
            raise InputError("Subgroup index out of range", "subgroup_generators")
        members = self.group.generated(list(elements))
        return make_subgroup(self.group, sorted(members))

    def subgroup_automorphisms(self, h: Subgroup) -> List[Automorphism]:
        return [self.automorphisms[i] for i in h.elements]

    def subfield_name(self, h: Subgroup) -> str:
        if h.is_trivial():
            return self.name
        if h.is_whole():
            return "Q"
        labels = ",".join(self.group.labels[i] for i in h.elements)
        return f"{self.name}^<{labels}>"

    def subfield(self, h: Subgroup) -> SubfieldData:
        """L^H with its inclusion into L."""
        if h.elements not in self._subfields:
            self._subfields[h.elements] = fixed_field(
                self.field,
                self.subgroup_automorphisms(h),
                self.automorphisms,
                name=self.subfield_name(h),
            )
        return self._subfields[h.elements]

    def torsion(self, h: Subgroup) -> Tuple[int, FieldElement]:
        """(w, ζ) for L^H."""
        if h.elements not in self._torsion:
            self._torsion[h.elements] = torsion_units(self.subfield(h).field)
        return self._torsion[h.elements]

    def genus(self, h: Subgroup) -> GenusValue:
        w, _ = self.torsion(h)
        return arakelov_genus(self.subfield(h).field, w)

    def class_group(self, h: Subgroup) -> ClassGroup:
        return class_group(self.subfield(h).field)

    def regulator(self, h: Subgroup) -> RegulatorData:
        sub = self.subfield(h)
        supplied = self.supplied_regulators.get(
            h.label(), self.supplied_regulators.get(sub.field.name)
        )
        return regulator(sub.field, supplied)

    def signature_data(self, h: Subgroup) -> Tuple[int, int, int]:
        """(r, s, λ) of L^H."""
        field_ = self.subfield(h).field
        r, s = field_.signature
        return r, s, field_.unit_rank

    def __repr__(self) -> str:
        return f"GaloisExtension({self.name}, degree {self.field.degree})"
