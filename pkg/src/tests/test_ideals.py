"""Tests for ideals, class groups, the Galois action on them and partial zetas."""

import itertools
from fractions import Fraction

import mpmath
import pytest

from galrel.config.constants import FIELD_CACHE_SIZE, PRIME_CACHE_SIZE
from galrel.errors import InputError, UnsupportedError
from galrel.exact.abelian import FinAbelianGroup
from galrel.exact.certified import Certified
from galrel.ideals.class_group import class_group, ideals_up_to_norm, lambda_table
from galrel.ideals.forms import class_number_quadratic_forms, reduced_forms
from galrel.ideals.galois_action import (
    galois_action_on_classes,
    idempotent_trace_on_classgroup,
)
from galrel.ideals.ideal import Ideal
from galrel.ideals.primes import _factor_cached, factor_prime, splitting_type
from galrel.ideals.principal import is_principal, minkowski_bound
from galrel.ideals.transfer import transfer_check
from galrel.ideals.units import unit_data
from galrel.ideals.zeta import ideal_counts, zeta_partial


@pytest.mark.parametrize(
    "p,expected", [(2, [(2, 1)]), (3, [(1, 2)]), (5, [(1, 1), (1, 1)])]
)
def test_splitting_in_gaussian_field(field, p, expected):
    assert splitting_type(field("q_i"), p) == expected


def test_primes_above_five_have_norm_five(field):
    data = factor_prime(field("q_i"), 5)
    assert len(data.primes) == 2
    assert all(q.norm == 5 and q.e == 1 and q.f == 1 for q in data.primes)


def test_prime_ideals_multiply_back(field):
    k = field("q_i")
    data = factor_prime(k, 5)
    product = Ideal.unit(k)
    for q in data.primes:
        product = product * (q.ideal ** q.e)
    assert product == Ideal.principal(k.rational(5))


def test_minkowski_bound_of_rationals(field):
    assert minkowski_bound(field("q")).overlaps(Certified.exact(1))


def test_two_is_principal_in_gaussian_field(field):
    k = field("q_i")
    generator = is_principal(Ideal.principal(k.rational(2)))
    assert generator is not None
    assert abs(generator.norm()) == 4


def test_non_principal_prime_in_sqrt_m5(field):
    k = field("q_sqrt_m5")
    above_two = factor_prime(k, 2).primes[0].ideal
    assert is_principal(above_two) is None


def test_zero_ideal_is_rejected(field):
    with pytest.raises(InputError):
        Ideal.principal(field("q_i").zero())


@pytest.mark.parametrize(
    "name,invariants",
    [
        ("q", ()),
        ("q_i", ()),
        ("q_sqrt_m3", ()),
        ("q_sqrt_m5", (2,)),
        ("q_sqrt_m23", (3,)),
        ("q_sqrt2", ()),
        ("q_sqrt23", ()),
        ("q_zeta8", ()),
    ],
)
def test_class_groups(field, name, invariants):
    assert class_group(field(name)).structure.invariants == invariants


@pytest.mark.parametrize("name", ["q_i", "q_sqrt_m3", "q_sqrt_m5", "q_sqrt_m23"])
def test_class_number_matches_forms(field, name):
    k = field(name)
    assert class_group(k).order == class_number_quadratic_forms(k.discriminant)


def test_reduced_forms_of_minus_23():
    forms = sorted((f.a, f.b, f.c) for f in reduced_forms(-23))
    assert forms == [(1, 1, 6), (2, -1, 3), (2, 1, 3)]


def test_forms_reject_positive_discriminant():
    with pytest.raises(InputError):
        reduced_forms(8)


def test_class_group_of_cm_biquadratic(field):
    assert class_group(field("q_i_sqrt_m23")).order == 3


def test_lambda_table():
    assert lambda_table(FinAbelianGroup((2,))) == {2: {1: 1}}
    assert lambda_table(FinAbelianGroup()) == {}
    assert lambda_table(FinAbelianGroup((3, 9))) == {3: {1: 1, 2: 1}}


def test_trivial_class_group_has_trivial_action(extension):
    ext = extension("q_zeta8")
    cl = ext.class_group(ext.subgroups[0])
    matrices = galois_action_on_classes(cl, ext.automorphisms)
    assert len(matrices) == 4
    assert all(m == matrices[0] for m in matrices)


def test_idempotent_trace_on_cm_biquadratic(extension, subgroup_fixing):
    ext = extension("q_i_sqrt_m23")
    cl = ext.class_group(ext.subgroups[0])
    matrices = galois_action_on_classes(cl, ext.automorphisms)
    fixing_sqrt_m23 = subgroup_fixing(ext, -23)
    trace = idempotent_trace_on_classgroup(cl, matrices, fixing_sqrt_m23.elements, 3, 1)
    assert trace == 1
    fixing_i = subgroup_fixing(ext, -4)
    assert idempotent_trace_on_classgroup(cl, matrices, fixing_i.elements, 3, 1) == 0


def test_idempotent_trace_rejects_wild_prime(extension, subgroup_fixing):
    ext = extension("q_i_sqrt_m23")
    cl = ext.class_group(ext.subgroups[0])
    matrices = galois_action_on_classes(cl, ext.automorphisms)
    h = subgroup_fixing(ext, -23)
    with pytest.raises(UnsupportedError):
        idempotent_trace_on_classgroup(cl, matrices, h.elements, 2, 1)


def test_transfer_identities_hold(extension, subgroup_fixing):
    ext = extension("q_i_sqrt_m23")
    h = subgroup_fixing(ext, -23)
    rows = transfer_check(
        ext.subfield(h), ext.class_group(ext.subgroups[0]), ext.class_group(h), [3]
    )
    assert rows
    assert all(row.passed is True for row in rows)
    assert any(row.subject.startswith("Cl(") for row in rows)


def test_transfer_marks_wild_primes(extension, subgroup_fixing):
    ext = extension("q_i_sqrt_m23")
    h = subgroup_fixing(ext, -4)
    rows = transfer_check(ext.subfield(h), primes=[2])
    assert rows
    assert all(row.passed is None and "wild" in row.note for row in rows)


def test_ideal_counts_of_gaussian_field(field):
    counts = ideal_counts(field("q_i"), 10)
    assert counts[1:] == [1, 1, 0, 1, 2, 0, 0, 1, 1, 2]


def test_partial_zeta_of_rationals(field):
    partial = zeta_partial(field("q"), 2, 10_000)
    assert abs(partial.value.value - mpmath.pi**2 / 6) < 2e-4
    assert partial.sigma == Fraction(2)
    assert partial.tail.upper() >= mpmath.pi**2 / 6 - partial.value.value


def test_partial_zeta_requires_sigma_above_one(field):
    with pytest.raises(InputError):
        zeta_partial(field("q"), 1, 100)


def _products(field_, bound, count):
    ideals = [ideal for ideal, _ in ideals_up_to_norm(field_, bound)]
    pairs = itertools.combinations_with_replacement(ideals, 2)
    return list(itertools.islice(pairs, count))


@pytest.mark.parametrize("name", ["q_i", "q_sqrt_m5", "q_zeta8"])
def test_norm_is_multiplicative(field, name):
    products = _products(field(name), 40, 100)
    assert len(products) == 100
    for a, b in products:
        assert (a * b).norm() == a.norm() * b.norm()


@pytest.mark.parametrize("name", ["q_sqrt_m5", "q_sqrt_m23"])
def test_class_of_is_a_homomorphism(field, name):
    k = field(name)
    cl = class_group(k)
    invariants = cl.structure.invariants
    for a, b in _products(k, 30, 100):
        expected = tuple(
            (x + y) % d for x, y, d in zip(cl.class_of(a), cl.class_of(b), invariants)
        )
        assert cl.class_of(a * b) == expected


def test_field_caches_are_bounded():
    assert class_group.cache_info().maxsize == FIELD_CACHE_SIZE
    assert unit_data.cache_info().maxsize == FIELD_CACHE_SIZE
    assert _factor_cached.cache_info().maxsize == PRIME_CACHE_SIZE
