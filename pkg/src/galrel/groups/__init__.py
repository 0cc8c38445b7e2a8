"""Finite groups and their group algebras."""

from galrel.groups.finite_group import FiniteGroup, Subgroup, build_group, subgroups
from galrel.groups.group_algebra import (
    GroupAlgebraElement,
    IdempotentRelation,
    find_relations,
    norm_idempotent,
    relation_coefficient_sum,
    verify_relation,
)

__all__ = [
    "FiniteGroup",
    "GroupAlgebraElement",
    "IdempotentRelation",
    "Subgroup",
    "build_group",
    "find_relations",
    "norm_idempotent",
    "relation_coefficient_sum",
    "subgroups",
    "verify_relation",
]
