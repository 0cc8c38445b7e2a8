"""Tests for twisted metrics, theta sums, B(H) and the η relation."""

from fractions import Fraction

import mpmath
import pytest
from mpmath import mp

from galrel.arakelov.divisor import principal_divisor
from galrel.errors import InputError
from galrel.exact.certified import Certified
from galrel.exact.lattice import GramMatrix
from galrel.theta.eta import eta, theta_sum
from galrel.theta.metric import (
    b_divisor,
    canonical_variant,
    infinite_divisor,
    metric_from_divisor,
)
from galrel.theta.traces import check_change_metric, eta_relation_residual, trace_eta

ETA_Q = mpmath.mpf("1.0864348112133080146")


def _theta_one(scale):
    """Σ_n e^{−π·scale·n²} summed far past double precision."""
    with mp.workprec(128):
        return mpmath.fsum(mpmath.exp(-mp.pi * scale * n * n) for n in range(-12, 13))


def test_metric_of_rationals_is_exact_unit(field):
    gram = metric_from_divisor(field("q"))
    assert gram.exact == ((Fraction(1),),)


def test_eta_of_rationals(field):
    value = eta(field("q"))
    assert abs(value.value.value - ETA_Q) < 1e-12
    assert value.enclosure().overlaps(Certified.of(ETA_Q, mpmath.mpf(10) ** -18))


def test_eta_of_gaussian_field_is_a_square(field):
    expected = _theta_one(2) ** 2
    assert abs(eta(field("q_i")).value.value - expected) < 1e-12


def test_eta_of_shifted_rationals(field):
    q = field("q")
    shifted = infinite_divisor(q, [Fraction(1, 2)])
    # weight e^{-1} on the single real place
    expected = _theta_one(mpmath.exp(-1))
    assert abs(eta(q, shifted).value.value - expected) < 1e-12


@pytest.mark.parametrize("name", ["q_sqrt2", "q_sqrt_m23", "q_zeta8"])
def test_eta_is_stable_when_precision_doubles(field, name):
    k = field(name)
    coarse = eta(k, precision_bits=128)
    fine = eta(k, precision_bits=256)
    assert fine.value.radius <= coarse.value.radius
    with mp.workprec(256):
        assert coarse.enclosure().overlaps(fine.enclosure())
        assert abs(coarse.value.value - fine.value.value) < 1e-12


def test_eta_rejects_finite_divisor(field):
    q = field("q")
    with pytest.raises(InputError):
        eta(q, principal_divisor(q.rational(2)))


def test_theta_sum_needs_positive_tolerance():
    with pytest.raises(InputError):
        theta_sum(GramMatrix.from_exact([[1]]), 0, "Q", 128)


@pytest.mark.parametrize("variant", ["paper", "pi", "trace"])
def test_b_divisor_of_trivial_subgroup_is_zero(field, variant):
    divisor = b_divisor(field("q_sqrt2"), 1, variant)
    assert all(a.value == 0 for a in divisor.infinite)


def test_b_divisor_coefficients_for_order_two(field):
    q = field("q")
    (trace,) = b_divisor(q, 2, "trace").infinite
    (paper,) = b_divisor(q, 2, "paper").infinite
    with mp.workprec(128):
        assert abs(trace.value + mpmath.log(2) / 2) < 1e-30
        assert abs(paper.value + mpmath.log(2) / (2 * mp.pi)) < 1e-30


def test_pi_is_an_alias_of_the_paper_variant(field):
    q_i = field("q_i")
    (alias,) = b_divisor(q_i, 4, "pi").infinite
    (paper,) = b_divisor(q_i, 4, "paper").infinite
    assert alias == paper
    assert canonical_variant("pi") == "paper"


def test_b_divisor_rejects_unknown_variant(field):
    with pytest.raises(InputError):
        b_divisor(field("q"), 2, "other")


@pytest.mark.parametrize("n,expected", [(0, 0), (1, 2), (2, 8)])
def test_change_of_metric_on_gaussian_field(extension, n, expected):
    ext = extension("q_i")
    h = ext.subgroups[-1]
    x = ext.subfield(h).field.rational(n)
    left, right = check_change_metric(ext, h, None, x)
    assert abs(left.value - expected) < 1e-20
    assert abs(right.value - expected) < 1e-20


def test_change_of_metric_needs_subfield_element(extension):
    ext = extension("q_i")
    with pytest.raises(InputError):
        check_change_metric(ext, ext.subgroups[-1], None, ext.field.one())


def test_trace_eta_over_rationals_in_gaussian_field(extension):
    ext = extension("q_i")
    value = trace_eta(ext, ext.subgroups[-1])
    assert abs(value.value.value - _theta_one(2)) < 1e-12
    assert abs(value.value.value - mpmath.mpf("1.0037348")) < 1e-7


def test_trace_eta_matches_twisted_eta_of_subfield(extension):
    ext = extension("q_i")
    h = ext.subgroups[-1]
    sub = ext.subfield(h)
    twisted = eta(sub.field, b_divisor(sub.field, h.order, "trace"))
    assert (trace_eta(ext, h).value - twisted.value).within(1e-11)


def test_trace_eta_rejects_non_invariant_divisor(extension):
    ext = extension("q_sqrt2")
    divisor = infinite_divisor(ext.field, [1, 0])
    with pytest.raises(InputError):
        trace_eta(ext, ext.subgroups[-1], divisor)


def test_eta_relation_on_biquadratic_field(extension):
    ext = extension("q_sqrt2_sqrt3")
    (rel,) = ext.relations
    result = eta_relation_residual(ext, rel, "trace", 1e-14)
    assert len(result.terms) == 5
    assert result.routes_agree()
    assert result.residual.lower() > 0
    assert (result.grouped - result.diagnostic).within(1e-12)


@pytest.mark.parametrize("variant", ["paper", "pi"])
def test_eta_relation_paper_variant_routes_agree(extension, variant):
    ext = extension("q_sqrt2_sqrt3")
    (rel,) = ext.relations
    result = eta_relation_residual(ext, rel, variant, 1e-10)
    assert result.variant == "paper"
    assert result.routes_agree()


def test_eta_relation_is_negative_for_subfields_minus_trivial_form(extension):
    ext = extension("q_sqrt2_sqrt3")
    (rel,) = ext.relations
    # ε_H1 + ε_H2 + ε_H3 − ε_1 − 2ε_G
    flipped = -rel
    assert sorted(flipped.coefficients) == [-2, -1, 1, 1, 1]
    assert flipped.coefficients[0] == -1
    result = eta_relation_residual(ext, flipped, "trace", 1e-14)
    assert result.residual.upper() < 0
    assert result.routes_agree()
