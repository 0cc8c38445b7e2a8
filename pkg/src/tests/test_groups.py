"""Tests for finite groups, subgroup lattices and idempotent relations."""

from fractions import Fraction

import pytest

from galrel.errors import GroupAxiomError, InputError, UnsupportedError
from galrel.groups.finite_group import (
    FiniteGroup,
    build_group,
    make_subgroup,
    subgroups,
)
from galrel.groups.group_algebra import (
    GroupAlgebraElement,
    find_relations,
    norm_idempotent,
    relation_coefficient_sum,
    trivial_character,
    verify_relation,
)


def test_klein_group_from_name():
    group = build_group("C2xC2")
    assert group.order == 4
    assert group.exponent() == 2
    assert group.is_abelian()


def test_named_and_permutation_specs_agree_on_order():
    assert build_group("S3").order == 6
    assert build_group("(1 2 3);(1 2)").order == 6
    assert build_group({"generators": "(1 2 3 4)", "degree": 4}).order == 4
    assert build_group("Q8").order == 8
    assert not build_group("Q8").is_abelian()


def test_unknown_group_name_is_rejected():
    with pytest.raises(InputError):
        build_group("X7")


def test_oversized_symmetric_group_is_unsupported():
    with pytest.raises(UnsupportedError):
        build_group("S6")


def test_table_must_satisfy_group_axioms():
    with pytest.raises(GroupAxiomError):
        FiniteGroup.from_table([[0, 1], [1, 1]])


@pytest.mark.parametrize(
    "name,count", [("C1", 1), ("C2", 2), ("C3", 2), ("V4", 5), ("C4", 3), ("S3", 6)]
)
def test_subgroup_counts(name, count):
    subs = subgroups(build_group(name))
    assert len(subs) == count
    assert subs[0].is_trivial()
    assert subs[-1].is_whole()


def test_subgroups_of_klein_group_by_order():
    orders = [h.order for h in subgroups(build_group("V4"))]
    assert orders == [1, 2, 2, 2, 4]


def test_make_subgroup_rejects_non_closed_set():
    group = build_group("C4")
    generator = next(a for a in range(4) if group.element_order(a) == 4)
    with pytest.raises(GroupAxiomError):
        make_subgroup(group, [0, generator])


def test_norm_idempotent_of_trivial_subgroup_is_identity():
    group = build_group("S3")
    trivial = subgroups(group)[0]
    assert norm_idempotent(trivial) == GroupAlgebraElement.basis(group, 0)


def test_norm_idempotents_are_idempotent():
    group = build_group("S3")
    for h in subgroups(group):
        e = norm_idempotent(h)
        assert e * e == e
        assert trivial_character(e) == Fraction(1)


def test_klein_relation():
    relations = find_relations(build_group("V4"))
    assert len(relations) == 1
    rel = relations[0]
    assert rel.coefficients == (1, -1, -1, -1, 2)
    assert verify_relation(rel).is_zero()
    assert relation_coefficient_sum(rel) == 0


def test_s3_relation():
    relations = find_relations(build_group("S3"))
    assert len(relations) == 1
    assert relations[0].coefficients == (3, -2, -2, -2, -3, 6)
    assert verify_relation(relations[0]).is_zero()


@pytest.mark.parametrize("name", ["C1", "C2", "C3", "C4", "C5"])
def test_cyclic_groups_have_no_relations(name):
    assert find_relations(build_group(name)) == []


def test_relations_restricted_to_a_subgroup():
    group = build_group("C2xC4")
    subs = subgroups(group)
    klein = [
        h
        for h in subs
        if h.order == 4 and all(group.element_order(a) <= 2 for a in h.elements)
    ]
    assert len(klein) == 1
    inside = set(klein[0].elements)
    relations = find_relations(group, subs, allowed=lambda h: set(h.elements) <= inside)
    assert len(relations) == 1
    for h, _ in relations[0].terms():
        assert set(h.elements) <= inside


def test_relation_renders_terms():
    rel = find_relations(build_group("V4"))[0]
    text = str(rel)
    assert text.startswith("+1*e[1]")
    assert text.endswith("+2*e[G] = 0")
