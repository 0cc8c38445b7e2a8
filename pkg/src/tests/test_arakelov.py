"""Tests for Arakelov divisors, genera, regulators and the relation checks."""

import math

import mpmath
import pytest

from galrel.arakelov.divisor import (
    ArakelovDivisor,
    principal_divisor,
    pullback,
    pushforward,
)
from galrel.arakelov.genus import arakelov_genus
from galrel.arakelov.regulator import regulator
from galrel.arakelov.relations import (
    analytic_hreg_over_w,
    check_brauer_identity,
    check_genus_relation,
    check_residue_relation,
    class_numbers_and_regulators,
)
from galrel.errors import InputError, UnsupportedError
from galrel.ideals.primes import factor_prime
from galrel.ideals.units import cm_unit_data
from galrel.ideals.zeta import quadratic_l_value


def test_zero_divisor_has_degree_zero(field):
    assert ArakelovDivisor.zero(field("q_i")).degree().within(0)


def test_build_checks_infinite_coefficient_count(field):
    with pytest.raises(InputError):
        ArakelovDivisor.build(field("q_sqrt2"), None, [1])


def test_principal_divisor_of_one_is_zero(field):
    div = principal_divisor(field("q_i").one())
    assert div.is_infinite()
    assert div.degree().within(1e-30)


@pytest.mark.parametrize("name", ["q_i", "q_sqrt2", "q_zeta8"])
def test_product_formula(field, name):
    k = field(name)
    f = k.generator() + 3
    div = principal_divisor(f)
    assert not div.is_infinite()
    assert div.degree().contains_zero()


def test_principal_divisor_of_zero_is_rejected(field):
    with pytest.raises(InputError):
        principal_divisor(field("q_i").zero())


def test_pullback_of_two_to_gaussian_field(extension):
    ext = extension("q_i")
    sub = ext.subfield(ext.subgroups[-1])
    (two,) = factor_prime(sub.field, 2).primes
    pulled = pullback(sub, ArakelovDivisor.build(sub.field, {two: 1}))
    assert list(pulled.finite_map().values()) == [2]
    assert abs(float(pulled.degree()) - 2 * math.log(2)) < 1e-12


def test_pushforward_multiplies_degree_by_residue_degree(extension):
    ext = extension("q_i")
    sub = ext.subfield(ext.subgroups[-1])
    (above_three,) = factor_prime(ext.field, 3).primes
    pushed = pushforward(sub, ArakelovDivisor.build(ext.field, {above_three: 1}))
    assert list(pushed.finite_map().values()) == [2]


def test_pushforward_rejects_divisor_of_subfield(extension):
    ext = extension("q_i")
    sub = ext.subfield(ext.subgroups[-1])
    with pytest.raises(InputError):
        pushforward(sub, ArakelovDivisor.zero(sub.field))


def test_genus_of_rationals_is_exactly_zero(field):
    genus = arakelov_genus(field("q"))
    assert genus.value.value == 0 and genus.value.radius == 0
    assert genus.w == 2


@pytest.mark.parametrize(
    "name,expected",
    [
        ("q_i", math.log(4 / math.pi)),
        ("q_zeta8", math.log(32 / math.pi**2)),
        ("q_sqrt2", math.log(math.sqrt(2))),
    ],
)
def test_genus_values(field, name, expected):
    assert abs(float(arakelov_genus(field(name)).value) - expected) < 1e-12


def test_regulator_of_sqrt2(field):
    reg = regulator(field("q_sqrt2"))
    assert abs(float(reg.value) - float(mpmath.log(1 + mpmath.sqrt(2)))) < 1e-12
    assert reg.provenance == "computed"


def test_regulator_of_sqrt5(field):
    golden = (1 + mpmath.sqrt(5)) / 2
    reg = regulator(field("q_sqrt5"))
    assert abs(float(reg.value) - float(mpmath.log(golden))) < 1e-12


def test_regulator_of_imaginary_quadratic_is_one(field):
    reg = regulator(field("q_i"))
    assert reg.value.value == 1
    assert reg.provenance == "formula"


def test_supplied_regulator_is_cross_checked(field):
    reg = regulator(field("q_sqrt2"), "0.88137358701954302523")
    assert reg.provenance == "supplied"
    assert reg.cross_checked is True


@pytest.mark.parametrize("supplied", ["0.8", "0.90", "0.8810", "1e-1"])
def test_supplied_regulator_must_agree(field, supplied):
    with pytest.raises(InputError):
        regulator(field("q_sqrt2"), supplied)


def test_supplied_regulator_radius_is_half_the_last_digit(field):
    reg = regulator(field("q_sqrt2"), "0.9")
    assert reg.cross_checked is True
    assert abs(float(reg.value.radius) - 0.05) < 1e-12


@pytest.mark.parametrize("supplied", ["nan", "inf", "-0.88", "abc"])
def test_supplied_regulator_must_be_a_positive_decimal(field, supplied):
    with pytest.raises(InputError):
        regulator(field("q_sqrt2"), supplied)


def test_regulator_outside_supported_families(field):
    with pytest.raises(UnsupportedError):
        regulator(field("q_sqrt2_sqrt3"))


def test_genus_relation_on_zeta8(extension):
    ext = extension("q_zeta8")
    (rel,) = ext.relations
    result = check_genus_relation(ext, rel)
    assert result.within(1e-15)
    assert result.hypothesis is False
    assert len(result.terms) == 5


@pytest.mark.parametrize("name", ["q_zeta8", "q_i_sqrt_m23"])
def test_brauer_and_residue_relations(extension, name):
    ext = extension(name)
    (rel,) = ext.relations
    brauer = check_brauer_identity(ext, rel)
    assert brauer.second_route is not None
    assert brauer.within(1e-10)
    assert check_residue_relation(ext, rel).within(1e-10)


def test_brauer_requires_every_supplied_term(extension):
    ext = extension("q_zeta8")
    (rel,) = ext.relations
    with pytest.raises(InputError):
        check_brauer_identity(ext, rel, hreg={})


@pytest.mark.parametrize("name,index", [("q_zeta8", 1), ("q_i_sqrt_m23", 2)])
def test_hasse_unit_index_of_cm_quartic_fields(field, name, index):
    data = cm_unit_data(field(name))
    assert data.hasse_index == index
    real_reg = regulator(data.real_subfield.field).value
    assert abs(float(data.regulator) - 2 * float(real_reg) / index) < 1e-12


@pytest.mark.parametrize("name", ["q_i", "q_sqrt2", "q_zeta8"])
def test_product_formula_on_many_elements(field, name):
    k = field(name)
    n = k.degree
    checked = 0
    for seed in range(60):
        coords = [(seed * (3 * i + 7) + i * i) % 11 - 5 for i in range(n)]
        f = k.from_basis(coords)
        if f.is_zero():
            continue
        assert principal_divisor(f).degree().contains_zero()
        checked += 1
    assert checked >= 50


@pytest.mark.parametrize(
    "d,expected",
    [
        (-4, mpmath.pi / 4),
        (-3, mpmath.pi / (3 * mpmath.sqrt(3))),
        (-23, 3 * mpmath.pi / mpmath.sqrt(23)),
        (8, mpmath.log(1 + mpmath.sqrt(2)) / mpmath.sqrt(2)),
        (5, 2 * mpmath.log((1 + mpmath.sqrt(5)) / 2) / mpmath.sqrt(5)),
    ],
)
def test_quadratic_l_values(d, expected):
    assert abs(float(quadratic_l_value(d)) - float(expected)) < 1e-12


@pytest.mark.parametrize("d", [1, 0, 12, -1, 9])
def test_quadratic_l_value_needs_fundamental_discriminant(d):
    with pytest.raises(InputError):
        quadratic_l_value(d)


@pytest.mark.parametrize("name", ["q_i", "q_zeta8", "q_i_sqrt_m23"])
def test_class_number_formula_matches_class_groups_and_units(extension, name):
    ext = extension(name)
    for h in ext.subgroups:
        analytic = analytic_hreg_over_w(ext, h)
        assert analytic is not None
        w, _ = ext.torsion(h)
        hreg = ext.class_group(h).order * float(ext.regulator(h).value) / w
        assert abs(float(analytic) - math.log(hreg)) < 1e-10


def test_class_number_formula_needs_multiquadratic_fields(extension):
    ext = extension("s3_sextic")
    assert analytic_hreg_over_w(ext, ext.subgroups[0]) is None
    assert analytic_hreg_over_w(ext, ext.subgroups[-1]) is not None


def test_brauer_second_route_does_not_use_class_groups(extension, mocker):
    ext = extension("q_i_sqrt_m23")
    (rel,) = ext.relations
    hreg = class_numbers_and_regulators(ext, [h for h, _ in rel.terms()])
    spy = mocker.spy(ext, "class_group")
    result = check_brauer_identity(ext, rel, hreg=hreg)
    spy.assert_not_called()
    assert result.second_route is not None
    assert result.second_route.within(1e-10)
