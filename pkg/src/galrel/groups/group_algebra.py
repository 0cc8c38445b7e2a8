"""
Norm idempotents in ℚ[G] and the integer relations among them.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from galrel.errors import MathError
from galrel.exact.matrices import integer_kernel, rank
from galrel.groups.finite_group import FiniteGroup, Subgroup, subgroups

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GroupAlgebraElement:
    """Element of ℚ[G]: one rational coefficient per group element."""

    group: FiniteGroup
    coefficients: Tuple[Fraction, ...]

    @classmethod
    def zero(cls, group: FiniteGroup) -> "GroupAlgebraElement":
        return cls(group, tuple(Fraction(0) for _ in range(group.order)))

    @classmethod
    def basis(cls, group: FiniteGroup, g: int) -> "GroupAlgebraElement":
        return cls(group, tuple(Fraction(int(a == g)) for a in range(group.order)))

    def __add__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        return GroupAlgebraElement(
            self.group,
            tuple(a + b for a, b in zip(self.coefficients, other.coefficients)),
        )

    def __neg__(self) -> "GroupAlgebraElement":
        return GroupAlgebraElement(self.group, tuple(-a for a in self.coefficients))

    def __sub__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        return self + (-other)

    def scale(self, c: Fraction) -> "GroupAlgebraElement":
        return GroupAlgebraElement(self.group, tuple(c * a for a in self.coefficients))

    def __mul__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        return convolve(self, other)

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def support(self) -> List[int]:
        return [g for g, c in enumerate(self.coefficients) if c]

    def to_dict(self) -> Dict[str, str]:
        return {
            self.group.labels[g]: str(c) for g, c in enumerate(self.coefficients) if c
        }


def convolve(a: GroupAlgebraElement, b: GroupAlgebraElement) -> GroupAlgebraElement:
    """Product in ℚ[G]: (a·b)(g) = Σ_{xy=g} a(x)b(y)."""
    group = a.group
    out = [Fraction(0)] * group.order
    for x in a.support():
        for y in b.support():
            out[group.mul(x, y)] += a.coefficients[x] * b.coefficients[y]
    return GroupAlgebraElement(group, tuple(out))


def trivial_character(x: GroupAlgebraElement) -> Fraction:
    """Image under the trivial representation: the coefficient sum."""
    return sum(x.coefficients, Fraction(0))


def norm_idempotent(h: Subgroup) -> GroupAlgebraElement:
    """ε_H = (1/|H|) Σ_{h∈H} h."""
    weight = Fraction(1, h.order)
    return GroupAlgebraElement(
        h.group,
        tuple(weight if g in h.elements else Fraction(0) for g in range(h.group.order)),
    )


@dataclass(frozen=True)
class IdempotentRelation:
    """Integer relation Σ r_H ε_H = 0 over a fixed subgroup list."""

    subgroups: Tuple[Subgroup, ...]
    coefficients: Tuple[int, ...]

    @property
    def group(self) -> FiniteGroup:
        return self.subgroups[0].group

    def terms(self) -> List[Tuple[Subgroup, int]]:
        return [(h, r) for h, r in zip(self.subgroups, self.coefficients) if r]

    def __neg__(self) -> "IdempotentRelation":
        return IdempotentRelation(self.subgroups, tuple(-r for r in self.coefficients))

    def is_trivial(self) -> bool:
        return not any(self.coefficients)

    def __str__(self) -> str:
        parts = [f"{r:+d}*e[{h.label()}]" for h, r in self.terms()]
        return " ".join(parts) + " = 0" if parts else "0 = 0"


def idempotent_matrix(group: FiniteGroup, subs: Sequence[Subgroup]) -> List[List[int]]:
    """|G| x #subgroups integer matrix whose columns are |G|·ε_H."""
    return [
        [group.order // h.order if g in h.elements else 0 for h in subs]
        for g in range(group.order)
    ]


def normalize_relation(coeffs: Sequence[int]) -> Tuple[int, ...]:
    """Divide by the gcd and make the first nonzero coefficient positive.

    Subgroups are listed by increasing order, so the trivial subgroup leads
    and a Klein four relation reads ε_1 − ε_H1 − ε_H2 − ε_H3 + 2ε_G.
    """
    g = 0
    for c in coeffs:
        g = gcd(g, c)
    if g == 0:
        return tuple(coeffs)
    first = next(c for c in coeffs if c)
    sign = 1 if first > 0 else -1
    return tuple(sign * c // g for c in coeffs)


def find_relations(
    group: FiniteGroup,
    subs: Optional[Sequence[Subgroup]] = None,
    allowed: Optional[Callable[[Subgroup], bool]] = None,
) -> List[IdempotentRelation]:
    """Integer basis of all relations Σ r_H ε_H = 0.

    Args:
        group: The finite group
        subs: Subgroup list, defaults to all subgroups in canonical order
        allowed: Restricts the relations to subgroups satisfying the
            predicate; other coefficients are zero

    Returns:
        List[IdempotentRelation]: Normalized, verified relation basis
    """
    subs = tuple(subs) if subs is not None else tuple(subgroups(group))
    chosen = [i for i, h in enumerate(subs) if allowed is None or allowed(h)]
    if not chosen:
        return []
    matrix = idempotent_matrix(group, [subs[i] for i in chosen])
    kernel = integer_kernel(matrix, cols=len(chosen))
    relations = []
    for row in kernel:
        full = [0] * len(subs)
        for i, c in zip(chosen, row):
            full[i] = c
        rel = IdempotentRelation(subs, normalize_relation(full))
        if not verify_relation(rel).is_zero():
            raise MathError(f"Kernel vector {rel} is not a relation")
        relations.append(rel)
    expected = len(chosen) - rank(matrix)
    if len(relations) != expected:
        raise MathError("Relation basis has the wrong size")
    logger.info("Found %d relations for %s", len(relations), group.name)
    return relations


def verify_relation(rel: IdempotentRelation) -> GroupAlgebraElement:
    """Σ r_H ε_H computed exactly; zero exactly when the relation holds."""
    total = GroupAlgebraElement.zero(rel.group)
    for h, r in rel.terms():
        total = total + norm_idempotent(h).scale(Fraction(r))
    return total


def relation_coefficient_sum(rel: IdempotentRelation) -> int:
    """Σ r_H, which vanishes for every valid relation."""
    return sum(rel.coefficients)
