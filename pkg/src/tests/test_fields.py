"""Tests for number fields, places, automorphisms, subfields and torsion."""

from fractions import Fraction

import mpmath
import pytest

from galrel.errors import InputError, MathError, UnsupportedError
from galrel.fields.automorphisms import automorphisms
from galrel.fields.number_field import make_field, rational_field
from galrel.fields.torsion import nu_valuation, torsion_units


def test_gaussian_field_from_family_basis():
    k = make_field([1, 0, 1], name="Q(i)")
    assert k.discriminant == -4
    assert k.signature == (0, 1)
    assert k.unit_rank == 0
    i = k.generator()
    assert i * i == k.rational(-1)


def test_rational_field():
    q = rational_field()
    assert q.degree == 1
    assert q.discriminant == 1
    assert q.signature == (1, 0)


@pytest.mark.parametrize(
    "name,discriminant",
    [
        ("q_sqrt2", 8),
        ("q_sqrt5", 5),
        ("q_sqrt_m3", -3),
        ("q_sqrt_m5", -20),
        ("q_sqrt23", 92),
        ("q_sqrt_m23", -23),
        ("q_zeta8", 256),
        ("q_zeta12", 144),
        ("q_sqrt2_sqrt3", 2304),
        ("q_i_sqrt_m23", 8464),
    ],
)
def test_fixture_discriminants(field, name, discriminant):
    assert field(name).discriminant == discriminant


@pytest.mark.parametrize(
    "name,signature",
    [
        ("q_i", (0, 1)),
        ("q_sqrt2", (2, 0)),
        ("q_sqrt2_sqrt3", (4, 0)),
        ("q_zeta8", (0, 2)),
        ("s3_sextic", (0, 3)),
    ],
)
def test_signatures(field, name, signature):
    assert field(name).signature == signature


def test_make_field_rejects_non_monic():
    with pytest.raises(InputError):
        make_field([1, 2])


def test_make_field_rejects_repeated_roots():
    with pytest.raises(InputError):
        make_field([1, 2, 1])


def test_make_field_without_basis_outside_families():
    with pytest.raises(UnsupportedError):
        make_field([-2, 0, 0, 1])


def test_real_places_of_sqrt2(field):
    places = field("q_sqrt2").places()
    assert [p.is_real for p in places] == [True, True]
    roots = sorted(float(p.root) for p in places)
    assert roots == pytest.approx([-1.4142135623730951, 1.4142135623730951])
    for place in places:
        assert place.root.radius < mpmath.mpf(2) ** -60


def test_places_embed_generator(field):
    k = field("q_i")
    (place,) = k.places()
    value = place.embed(k.generator())
    assert not place.is_real
    assert abs(value.value - mpmath.mpc(0, 1)) <= value.radius + mpmath.mpf(10) ** -30


def test_automorphisms_of_gaussian_field(field):
    auts = automorphisms(field("q_i"))
    assert len(auts) == 2
    assert auts[0].is_identity()
    conj = auts[1]
    i = field("q_i").generator()
    assert conj(i) == -i


def test_automorphism_hint_must_be_valid(field):
    with pytest.raises(InputError):
        automorphisms(field("q_i"), hints=[[1, 1]])


def test_galois_groups(extension):
    assert extension("q_zeta12").group.order == 4
    assert extension("q_zeta12").group.exponent() == 2
    assert extension("q_zeta8").group.is_abelian()
    s3 = extension("s3_sextic").group
    assert s3.order == 6 and not s3.is_abelian()


def test_quadratic_subfields_of_biquadratic_field(extension):
    ext = extension("q_sqrt2_sqrt3")
    discriminants = sorted(
        ext.subfield(h).field.discriminant for h in ext.subgroups if h.order == 2
    )
    assert discriminants == [8, 12, 24]


def test_subfield_of_whole_group_is_rationals(extension):
    ext = extension("q_zeta8")
    whole = ext.subgroups[-1]
    sub = ext.subfield(whole)
    assert sub.degree == 1
    assert ext.subfield_name(whole) == "Q"


def test_include_then_restrict(extension, subgroup_fixing):
    ext = extension("q_sqrt2_sqrt3")
    sub = ext.subfield(subgroup_fixing(ext, 8))
    x = sub.field.from_basis([3, -2])
    y = sub.include(x)
    assert sub.restrict(y) == x
    assert all(h(y) == y for h in sub.subgroup)


def test_restrict_rejects_moved_element(extension, subgroup_fixing):
    ext = extension("q_sqrt2_sqrt3")
    sub = ext.subfield(subgroup_fixing(ext, 8))
    moved = next(
        b for b in ext.field.basis_elements() if any(h(b) != b for h in sub.subgroup)
    )
    with pytest.raises(MathError):
        sub.restrict(moved)


def test_relative_norm_lands_in_subfield(extension, subgroup_fixing):
    ext = extension("q_i_sqrt_m23")
    sub = ext.subfield(subgroup_fixing(ext, -4))
    y = ext.field.basis_elements()[1] + 1
    norm = sub.relative_norm(y)
    assert norm.owner is sub.field
    assert norm.norm() == y.norm()


@pytest.mark.parametrize(
    "name,w",
    [
        ("q", 2),
        ("q_i", 4),
        ("q_sqrt_m3", 6),
        ("q_sqrt2", 2),
        ("q_sqrt_m23", 2),
        ("q_zeta8", 8),
        ("q_zeta12", 12),
    ],
)
def test_torsion_orders(field, name, w):
    order, generator = torsion_units(field(name))
    assert order == w
    assert generator ** order == field(name).one()
    assert all(generator ** k != field(name).one() for k in range(1, order))


@pytest.mark.parametrize(
    "name,p,expected",
    [("q_zeta12", 3, 1), ("q_zeta12", 2, 2), ("q_zeta8", 2, 3), ("q_sqrt2", 5, 0)],
)
def test_nu_valuation(field, name, p, expected):
    assert nu_valuation(field(name), p) == expected


def test_nu_valuation_reuses_a_known_torsion_order(field, mocker):
    spy = mocker.patch("galrel.fields.torsion.torsion_units")
    assert nu_valuation(field("q_zeta12"), 2, w=12) == 2
    spy.assert_not_called()


def test_trace_form_of_power_basis(field):
    k = field("q_i")
    assert k.trace_form() == [[Fraction(2), Fraction(0)], [Fraction(0), Fraction(-2)]]
