"""
Truncated Dedekind zeta sums Σ_{N(A)≤N} N(A)^(−σ) from prime splitting.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Union

import mpmath
import sympy
from mpmath import mp

from galrel.config.settings import app_settings
from galrel.errors import InputError
from galrel.exact.certified import Certified, csum
from galrel.fields.families import is_squarefree
from galrel.fields.number_field import NumberField
from galrel.ideals.primes import splitting_type

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ZetaPartial:
    """Partial sum with the tail estimate n·Σ_{m>N} m^(−σ)."""

    value: Certified
    tail: Certified
    sigma: Fraction
    bound: int

    def log_uncertainty(self) -> Certified:
        """Bound on |log ζ − log(partial)| implied by the tail estimate."""
        return self.tail / self.value


def ideal_counts(field_: NumberField, bound: int) -> List[int]:
    """a[m] = number of integral ideals of norm m, for m ≤ bound."""
    counts = [0] * (bound + 1)
    if bound >= 1:
        counts[1] = 1
    for p in sympy.primerange(2, bound + 1):
        for _, f in splitting_type(field_, p):
            q = p**f
            if q > bound:
                continue
            # multiply the series by 1/(1 − q^(−s)) in place
            for m in range(q, bound + 1, q):
                counts[m] += counts[m // q]
    return counts


def zeta_partial(
    field_: NumberField,
    sigma: Union[int, Fraction, str],
    bound: int,
    precision_bits: int = 0,
) -> ZetaPartial:
    """Σ_{N(A) ≤ bound} N(A)^(−σ) for real σ > 1.

    Raises:
        InputError: σ ≤ 1 or bound < 1
    """
    s = Fraction(sigma)
    if s <= 1:
        raise InputError("sigma must exceed 1", "sigma")
    if bound < 1:
        raise InputError("N must be at least 1", "N")
    counts = ideal_counts(field_, bound)
    bits = precision_bits or app_settings.precision.DEFAULT_BITS
    with mp.workprec(bits):
        exponent = mp.mpf(s.numerator) / s.denominator
        total = mp.mpf(0)
        for m in range(1, bound + 1):
            if counts[m]:
                total += counts[m] * mp.power(m, -exponent)
        value = Certified.of(total, bound * mpmath.ldexp(total, 2 - bits))
        # Σ_{m>N} m^(−σ) ≤ N^(1−σ)/(σ−1)
        tail_sum = mp.power(bound, 1 - exponent) / (exponent - 1)
        tail = Certified.of(field_.degree * tail_sum)
    logger.debug(
        "ζ_%s(%s) partial to %d: %s", field_.name, s, bound, mpmath.nstr(total, 15)
    )
    return ZetaPartial(value, tail, s, bound)


def is_fundamental_discriminant(d: int) -> bool:
    if d % 4 == 1:
        return is_squarefree(d)
    return d % 4 == 0 and (d // 4) % 4 in (2, 3) and is_squarefree(d // 4)


def kronecker(d: int, a: int) -> int:
    """Kronecker symbol (d/a) for a ≥ 1."""
    k = 0
    while a % 2 == 0:
        a //= 2
        k += 1
    if d % 2 == 0:
        two = 0
    else:
        two = 1 if d % 8 in (1, 7) else -1
    odd = 1 if a == 1 else int(sympy.jacobi_symbol(d % a, a))
    return two**k * odd


def quadratic_l_value(d: int, precision_bits: int = 128) -> Certified:
    """L(1, χ_d) for a fundamental discriminant d ≠ 1.

    Uses the finite closed forms −π·Σ χ(a)·a / |d|^(3/2) for d < 0 and
    −Σ χ(a)·log sin(πa/d) / √d for d > 0, with a running over 1..|d|−1.

    Raises:
        InputError: d is not a fundamental discriminant
    """
    n = abs(d)
    if not is_fundamental_discriminant(d) or d == 1:
        raise InputError(f"{d} is not a fundamental discriminant", "discriminant")
    with mp.workprec(precision_bits):
        root = Certified.exact(n).sqrt()
        if d < 0:
            total = sum(kronecker(d, a) * a for a in range(1, n))
            return Certified.pi() * (-total) / (root * n)
        # cot is at most n/π on [π/n, π − π/n]
        radius = mpmath.ldexp(mp.mpf(n + 1), 4 - mp.prec)
        terms = []
        for a in range(1, n):
            chi = kronecker(d, a)
            if chi:
                log_sin = mpmath.log(mpmath.sin(mp.pi * a / n))
                terms.append(Certified.of(log_sin, radius) * chi)
        value = -csum(terms) / root
    logger.debug("L(1, χ_%d) = %s", d, mpmath.nstr(value.value, 15))
    return value
