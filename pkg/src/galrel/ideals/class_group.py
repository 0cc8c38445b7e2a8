"""
Class groups from the ideals below the Minkowski bound.
"""

import logging
from dataclasses import dataclass
from dataclasses import field as dataclass_field
from functools import lru_cache
from math import floor
from typing import Dict, List, Optional, Sequence, Tuple

import sympy

from galrel.config.constants import FIELD_CACHE_SIZE
from galrel.errors import MathError
from galrel.exact.abelian import AbelianPresentation, FinAbelianGroup, present
from galrel.fields.number_field import NumberField
from galrel.ideals.ideal import Ideal
from galrel.ideals.primes import PrimeIdeal, factor_prime
from galrel.ideals.principal import is_principal, minkowski_bound
from galrel.ideals.units import UnitData, unit_data

logger = logging.getLogger(__name__)

LambdaTable = Dict[int, Dict[int, int]]


def ideals_up_to_norm(field_: NumberField, bound: int) -> List[Tuple[Ideal, int]]:
    """All integral ideals of norm ≤ bound with their norms, sorted by norm."""
    found: List[Tuple[Ideal, int]] = [(Ideal.unit(field_), 1)]
    for p in sympy.primerange(2, bound + 1):
        for prime in factor_prime(field_, p).primes:
            q = prime.norm
            if q > bound:
                continue
            extended = []
            for ideal, norm in found:
                current, current_norm = ideal, norm
                while current_norm * q <= bound:
                    current = current * prime.ideal
                    current_norm *= q
                    extended.append((current, current_norm))
            found.extend(extended)
    found.sort(key=lambda item: (item[1], item[0].rows))
    return found


@dataclass
class ClassGroup:
    """Cl(K) with its invariant-factor presentation.

    ``representatives[i]`` is an integral ideal in class i and
    ``exponents[i]`` writes that class in the prime generators; classes are
    compared by testing A·R̃ for principality.
    """

    field: NumberField
    structure: FinAbelianGroup
    primes: Tuple[PrimeIdeal, ...]
    representatives: List[Ideal]
    exponents: List[Tuple[int, ...]]
    presentation: AbelianPresentation
    units: UnitData
    generators: List[Ideal] = dataclass_field(default_factory=list)
    _tilde: Dict[int, Ideal] = dataclass_field(default_factory=dict, repr=False)

    @property
    def order(self) -> int:
        return self.structure.order

    def _scaled_inverse(self, i: int) -> Ideal:
        if i not in self._tilde:
            self._tilde[i] = self.representatives[i].scaled_inverse()
        return self._tilde[i]

    def class_index(self, ideal: Ideal) -> int:
        """Index of the representative equivalent to ``ideal``."""
        integral = Ideal(ideal.owner, ideal.rows)
        for i in range(len(self.representatives)):
            if is_principal(integral * self._scaled_inverse(i), self.units) is not None:
                return i
        raise MathError(f"Ideal {ideal} matches no class representative")

    def class_of(self, ideal: Ideal) -> Tuple[int, ...]:
        """Invariant-factor coordinates of the class of ``ideal``."""
        i = self.class_index(ideal)
        return self.presentation.coordinates(self.exponents[i])

    def element_from_coordinates(self, coords: Sequence[int]) -> Ideal:
        """An integral ideal in the class with the given coordinates."""
        for ideal, exps in zip(self.representatives, self.exponents):
            if self.presentation.coordinates(exps) == tuple(
                c % d for c, d in zip(coords, self.structure.invariants)
            ):
                return ideal
        raise MathError(f"No class with coordinates {list(coords)}")


@lru_cache(maxsize=FIELD_CACHE_SIZE)
def class_group(field_: NumberField) -> ClassGroup:
    """Cl(K): classify every ideal of norm ≤ the Minkowski bound.

    Raises:
        UnsupportedError: principality testing is unsupported for the field
    """
    units = unit_data(field_)
    bound = int(floor(minkowski_bound(field_).upper()))
    primes: List[PrimeIdeal] = []
    for p in sympy.primerange(2, bound + 1):
        primes.extend(q for q in factor_prime(field_, p).primes if q.norm <= bound)
    k = len(primes)

    representatives = [Ideal.unit(field_)]
    tildes = [Ideal.unit(field_)]
    exponents: List[Tuple[int, ...]] = [tuple([0] * k)]

    def classify(ideal: Ideal) -> Optional[int]:
        for i, tilde in enumerate(tildes):
            if is_principal(ideal * tilde, units) is not None:
                return i
        return None

    # breadth-first closure under multiplication by the prime generators
    relations: List[List[int]] = []
    frontier = [0]
    while frontier:
        nxt = []
        for c in frontier:
            for j, prime in enumerate(primes):
                product = representatives[c] * prime.ideal
                target = classify(product)
                step = list(exponents[c])
                step[j] += 1
                if target is None:
                    representatives.append(product)
                    tildes.append(product.scaled_inverse())
                    exponents.append(tuple(step))
                    target = len(representatives) - 1
                    nxt.append(target)
                else:
                    relations.append(
                        [a - b for a, b in zip(step, exponents[target])]
                    )
        frontier = nxt

    if k:
        columns = [[r[i] for r in relations] for i in range(k)]
        presentation = present(columns, k)
    else:
        presentation = present([], 0)
    structure = presentation.group
    if structure.order != len(representatives):
        raise MathError(
            f"Class group order {structure.order} disagrees with "
            f"{len(representatives)} classes"
        )
    result = ClassGroup(
        field=field_,
        structure=structure,
        primes=tuple(primes),
        representatives=representatives,
        exponents=exponents,
        presentation=presentation,
        units=units,
    )
    result._tilde = dict(enumerate(tildes))
    rank = len(structure.invariants)
    result.generators = [
        result.element_from_coordinates([int(i == j) for j in range(rank)])
        for i in range(rank)
    ]
    logger.info(
        "Cl(%s) = %s from %d primes below %d", field_.name, structure, k, bound
    )
    return result


def lambda_table(structure: FinAbelianGroup) -> LambdaTable:
    """λ_{p,n}: the number of invariant factors with p-part exactly pⁿ."""
    return {p: structure.p_part(p) for p in structure.primes()}
