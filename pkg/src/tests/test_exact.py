"""Tests for exact linear algebra, polynomials, lattices and certified reals."""

import itertools
import random
from fractions import Fraction

import mpmath
import pytest
from mpmath import mp

from galrel.errors import InfiniteQuotientError, NotSquarefreeError
from galrel.exact.abelian import FinAbelianGroup, abelian_structure
from galrel.exact.certified import Certified, csum
from galrel.exact.lattice import GramMatrix, enumerate_short_vectors, lll_reduce
from galrel.exact.matrices import (
    determinant,
    diagonal,
    hnf,
    integer_kernel,
    mat_mul,
    rank,
    rational_kernel,
    snf,
)
from galrel.exact.polynomial import Polynomial, sturm_real_root_count


def test_rational_kernel_of_single_row():
    assert rational_kernel([[1, -1]]) == [[1, 1]]


def test_rational_kernel_full_rank_is_empty():
    assert rational_kernel([[1, 0], [0, 1]]) == []


def test_integer_kernel_vectors_annihilate():
    m = [[2, 4, 6], [1, 1, 1]]
    kernel = integer_kernel(m)
    assert len(kernel) == 3 - rank(m)
    for v in kernel:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m)


def test_snf_of_diag_2_3():
    m = [[2, 0], [0, 3]]
    u, d, v = snf(m)
    assert diagonal(d) == [1, 6]
    assert mat_mul(mat_mul(u, m), v) == d
    assert abs(determinant(u)) == 1 and abs(determinant(v)) == 1


def test_hnf_is_upper_triangular_with_positive_pivots():
    h = hnf([[4, 6], [2, 8]])
    assert h[1][0] == 0
    assert h[0][0] > 0 and h[1][1] > 0
    assert abs(h[0][0] * h[1][1]) == abs(determinant([[4, 6], [2, 8]]))


@pytest.mark.parametrize(
    "coeffs,expected",
    [([1, 0, 1], 0), ([-2, 0, 1], 2), ([-2, 0, 0, 1], 1), ([1, 0, -10, 0, 1], 4)],
)
def test_sturm_real_root_count(coeffs, expected):
    assert sturm_real_root_count(Polynomial.from_coefficients(coeffs)) == expected


def test_sturm_rejects_repeated_roots():
    with pytest.raises(NotSquarefreeError):
        sturm_real_root_count(Polynomial.from_coefficients([1, 2, 1]))


def test_polynomial_divmod_reconstructs():
    f = Polynomial.from_coefficients([1, 0, -10, 0, 1])
    g = Polynomial.from_coefficients([-2, 0, 1])
    q, r = f.divmod(g)
    assert q * g + r == f
    assert r.degree < g.degree


def test_abelian_structure_of_single_relation():
    assert abelian_structure([[2]]).invariants == (2,)


def test_abelian_structure_merges_coprime_factors():
    assert abelian_structure([[2, 0], [0, 3]]).invariants == (6,)


def test_abelian_structure_rejects_infinite_quotient():
    with pytest.raises(InfiniteQuotientError):
        abelian_structure([[2, 0], [0, 0]])


def test_p_part_levels():
    group = FinAbelianGroup((2, 12))
    assert group.p_part(2) == {1: 1, 2: 1}
    assert group.p_part(3) == {1: 1}
    assert group.p_part(5) == {}
    assert group.primes() == [2, 3]
    assert str(FinAbelianGroup()) == "trivial"


def test_enumerate_unit_square_lattice():
    gram = GramMatrix.from_exact([[1, 0], [0, 1]])
    found = sorted(enumerate_short_vectors(gram, 1))
    assert found == [(-1, 0), (0, -1), (0, 1), (1, 0)]


def test_enumerate_half_keeps_one_of_each_pair():
    gram = GramMatrix.from_exact([[1, 0], [0, 1]])
    found = sorted(enumerate_short_vectors(gram, 2, half=True))
    assert found == [(0, 1), (1, -1), (1, 0), (1, 1)]


def test_lll_keeps_orthogonal_basis():
    gram = GramMatrix.from_exact([[1, 0], [0, 1]])
    reduced = lll_reduce([[1, 0], [0, 1]], gram)
    assert sorted(tuple(abs(x) for x in row) for row in reduced) == [(0, 1), (1, 0)]


def test_lll_shortens_skewed_basis():
    gram = GramMatrix.from_exact([[1, 0], [0, 1]])
    reduced = lll_reduce([[1, 0], [7, 1]], gram)
    assert max(sum(x * x for x in row) for row in reduced) == 1


def test_certified_arithmetic_encloses_true_value():
    with mp.workprec(128):
        third = Certified.exact(Fraction(1, 3))
        total = csum([third, third, third])
        assert total.overlaps(Certified.exact(1))
        assert Certified.exact(2).log().overlaps(Certified.of(mpmath.log(2)))
        assert Certified.exact(0).within(1e-30)


def test_certified_to_dict_is_a_string_pair():
    with mp.workprec(128):
        d = Certified.exact(1).to_dict(10)
    assert d == {"value": "1.0", "radius": "0"}


def _sturm_corpus(size=50, seed=2024):
    """Squarefree products of distinct rational linear factors and
    irreducible quadratics, with their number of real roots."""
    rng = random.Random(seed)
    quadratics = [(a, b) for a in (-1, 0, 1) for b in range(1, 5)]
    corpus = []
    while len(corpus) < size:
        roots = {
            Fraction(rng.randint(-9, 9), rng.choice([1, 2, 3]))
            for _ in range(rng.randint(0, 4))
        }
        f = Polynomial.from_roots(sorted(roots))
        for a, b in rng.sample(quadratics, rng.randint(0, 2)):
            f = f * Polynomial.from_coefficients([b, a, 1])
        if f.degree >= 1:
            corpus.append((f, len(roots)))
    return corpus


def _numerical_real_roots(f):
    with mp.workprec(200):
        coeffs = [mp.mpf(c.numerator) / c.denominator for c in reversed(f.coefficients)]
        roots = mpmath.polyroots(coeffs, maxsteps=200, extraprec=200)
        return sum(1 for z in roots if abs(mpmath.im(z)) < mpmath.mpf(10) ** -20)


@pytest.mark.parametrize("f,expected", _sturm_corpus())
def test_sturm_count_matches_numerical_roots(f, expected):
    assert sturm_real_root_count(f) == expected
    assert _numerical_real_roots(f) == expected


@pytest.mark.parametrize(
    "rows",
    [
        [[2, 1], [1, 2]],
        [[1, 0], [0, 3]],
        [[2, -1, 0], [-1, 2, -1], [0, -1, 2]],
        [[3, 1, 0, 0], [1, 3, 1, 0], [0, 1, 3, 1], [0, 0, 1, 3]],
        [[2, 1, 1, 1], [1, 2, 1, 1], [1, 1, 2, 1], [1, 1, 1, 2]],
    ],
)
@pytest.mark.parametrize("bound", [1, 2, 4, Fraction(9, 2)])
def test_enumeration_matches_box_search(rows, bound):
    n = len(rows)

    def value(v):
        return sum(rows[i][j] * v[i] * v[j] for i in range(n) for j in range(n))

    # every Gram here has smallest eigenvalue above 1/2, so |v_i|² ≤ 2·bound
    box = range(-3, 4)
    expected = sorted(
        v for v in itertools.product(box, repeat=n) if any(v) and value(v) <= bound
    )
    found = sorted(enumerate_short_vectors(GramMatrix.from_exact(rows), bound))
    assert found == expected


def test_polynomial_gcd_and_inverse_modulo():
    f = Polynomial.from_coefficients([-2, 0, 1])
    g = Polynomial.from_coefficients([1, 1])
    assert f.gcd(f.derivative()) == Polynomial.constant(1)
    assert g.invert_mod(f) == Polynomial.from_coefficients([-1, 1])
    with pytest.raises(ZeroDivisionError):
        Polynomial.from_coefficients([-1, 1]).invert_mod(Polynomial.from_roots([1, 2]))


def test_certified_zero_stays_exact():
    with mp.workprec(128):
        total = csum([Certified.exact(0), Certified.exact(0) * 5])
    assert total.radius == 0 and total.within(0)
