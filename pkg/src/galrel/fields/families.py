"""
Integral bases for the built-in field families.

Each function returns power-basis coordinate rows or None when the
polynomial is not in its family. make_field verifies whatever comes back.
"""

import logging
from fractions import Fraction
from math import isqrt
from typing import List, Optional, Tuple

import sympy

from galrel.exact.matrices import inverse, vec_mat
from galrel.exact.polynomial import Polynomial

logger = logging.getLogger(__name__)

Rows = List[List[Fraction]]


def power_basis(n: int) -> Rows:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def squarefree_part(q: Fraction) -> Tuple[int, Fraction]:
    """(d, r) with d squarefree, r > 0 rational and q = d·r²."""
    a = q.numerator * q.denominator
    sign = -1 if a < 0 else 1
    d, square = sign, 1
    for p, e in sympy.factorint(abs(a)).items():
        if e % 2:
            d *= p
        square *= p ** (e // 2)
    return d, Fraction(square, q.denominator)


def is_squarefree(d: int) -> bool:
    return d != 0 and all(e == 1 for e in sympy.factorint(abs(d)).values())


def squarefree_discriminant_basis(f: Polynomial) -> Optional[Rows]:
    d = f.discriminant()
    if d.denominator == 1 and is_squarefree(int(d)):
        return power_basis(f.degree)
    return None


def cyclotomic_basis(f: Polynomial) -> Optional[Rows]:
    """Power basis when f is a cyclotomic polynomial Φ_m."""
    x = sympy.Symbol("x")
    target = f.to_sympy(x)
    for m in range(1, 200):
        if sympy.totient(m) != f.degree:
            continue
        if sympy.Poly(sympy.cyclotomic_poly(m, x), x) == target:
            logger.debug("Recognised %s as the %d-th cyclotomic polynomial", f, m)
            return power_basis(f.degree)
    return None


def quadratic_basis(f: Polynomial) -> Optional[Rows]:
    """{1, √d} or {1, (1+√d)/2} for the fundamental d of x² + bx + c."""
    if f.degree != 2:
        return None
    b, c = f[1], f[0]
    disc = b * b - 4 * c
    d0, m = squarefree_part(disc)
    # √d0 = (2θ + b)/m
    sqrt_d = [b / m, 2 / m]
    if d0 % 4 == 1:
        return [[Fraction(1), Fraction(0)], [(1 + sqrt_d[0]) / 2, sqrt_d[1] / 2]]
    return [[Fraction(1), Fraction(0)], sqrt_d]


class _Biquadratic:
    """Arithmetic in ℚ(√p, √q) on the basis {1, √p, √q, √pq}."""

    def __init__(self, p: Fraction, q: Fraction) -> None:
        self.p, self.q = p, q

    def mul(self, u: List[Fraction], v: List[Fraction]) -> List[Fraction]:
        p, q = self.p, self.q
        a0, a1, a2, a3 = u
        b0, b1, b2, b3 = v
        return [
            a0 * b0 + p * a1 * b1 + q * a2 * b2 + p * q * a3 * b3,
            a0 * b1 + a1 * b0 + q * (a2 * b3 + a3 * b2),
            a0 * b2 + a2 * b0 + p * (a1 * b3 + a3 * b1),
            a0 * b3 + a3 * b0 + a1 * b2 + a2 * b1,
        ]

    def theta_powers(self) -> List[List[Fraction]]:
        theta = [Fraction(0), Fraction(1), Fraction(1), Fraction(0)]
        rows = [[Fraction(1), Fraction(0), Fraction(0), Fraction(0)]]
        for _ in range(3):
            rows.append(self.mul(rows[-1], theta))
        return rows


def biquadratic_basis(f: Polynomial) -> Optional[Rows]:
    """Classical integral basis of ℚ(√m, √n) for f = x⁴ + ax² + b.

    Here θ = √p + √q with p + q = -a/2 and (p - q)² = b.
    """
    if f.degree != 4 or f[1] != 0 or f[3] != 0:
        return None
    a, b = f[2], f[0]
    if b < 0 or isqrt(int(b)) ** 2 != b:
        return None
    s, t = -a / 2, Fraction(isqrt(int(b)))
    p, q = (s + t) / 2, (s - t) / 2
    if p == q:
        return None
    field = _Biquadratic(p, q)
    sqrts = {}
    for value, coords in (
        (p, [0, 1, 0, 0]),
        (q, [0, 0, 1, 0]),
        (p * q, [0, 0, 0, 1]),
    ):
        d, r = squarefree_part(value)
        if d == 1:
            return None
        sqrts[d] = [Fraction(c) / r for c in coords]
    if len(sqrts) != 3:
        return None

    residues = {d: d % 4 for d in sqrts}
    one = [Fraction(1), Fraction(0), Fraction(0), Fraction(0)]

    def half(u: List[Fraction], v: List[Fraction]) -> List[Fraction]:
        return [(x + y) / 2 for x, y in zip(u, v)]

    ones = [d for d in sqrts if residues[d] == 1]
    if len(ones) == 3:
        m, n, k = sorted(sqrts)
        corner = field.mul(half(one, sqrts[m]), half(one, sqrts[k]))
        elements = [one, half(one, sqrts[m]), half(one, sqrts[n]), corner]
    elif len(ones) == 1:
        m = ones[0]
        n, k = sorted(d for d in sqrts if d != m)
        elements = [one, half(one, sqrts[m]), sqrts[n], half(sqrts[n], sqrts[k])]
    else:
        threes = [d for d in sqrts if residues[d] == 3]
        if len(threes) != 1:
            return None
        m = threes[0]
        n, k = sorted(d for d in sqrts if d != m)
        elements = [one, sqrts[m], sqrts[n], half(sqrts[n], sqrts[k])]

    to_theta = inverse(field.theta_powers())
    return [vec_mat(e, to_theta) for e in elements]


def family_basis(f: Polynomial) -> Optional[Rows]:
    """First basis supplied by a family that recognises f."""
    for finder in (
        squarefree_discriminant_basis,
        quadratic_basis,
        cyclotomic_basis,
        biquadratic_basis,
    ):
        rows = finder(f)
        if rows is not None:
            logger.debug("Integral basis of %s from %s", f, finder.__name__)
            return rows
    return None
