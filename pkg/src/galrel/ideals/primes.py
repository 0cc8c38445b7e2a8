"""
Prime ideals above a rational prime, by splitting the finite ring O_K/pO_K.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from math import isqrt
from typing import List, Tuple

import sympy

from galrel.config.constants import PRIME_CACHE_SIZE
from galrel.errors import InputError, MathError
from galrel.exact.matrices import kernel_mod_p, rank_mod_p, rref_mod_p, transpose
from galrel.fields.number_field import NumberField
from galrel.ideals.ideal import Ideal

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PrimeIdeal:
    """A prime P above p with e = e(P/p) and f = f(P/p)."""

    ideal: Ideal
    p: int
    e: int
    f: int

    @property
    def norm(self) -> int:
        return int(self.p**self.f)


@dataclass(frozen=True)
class PrimeSplitData:
    p: int
    primes: Tuple[PrimeIdeal, ...]

    def splitting_type(self) -> List[Tuple[int, int]]:
        return sorted((q.e, q.f) for q in self.primes)


def _power_mod_p(field_: NumberField, a: List[int], k: int, p: int) -> List[int]:
    result = list(field_.one().basis_ints())
    base = [x % p for x in a]
    while k:
        if k & 1:
            result = [x % p for x in field_.mul_basis(result, base)]
        base = [x % p for x in field_.mul_basis(base, base)]
        k >>= 1
    return result


def _ideal_from_rows(field_: NumberField, p: int, rows: List[List[int]]) -> Ideal:
    """Ideal pO_K + O_K·(rows), the rows taken as elements mod p."""
    n = field_.degree
    generators = [[p * int(i == j) for j in range(n)] for i in range(n)]
    for r in rows:
        generators.extend(field_.multiplication_matrix_basis(r))
    return Ideal.from_lattice(field_, generators)


def _subspace_mod_p(ideal: Ideal, p: int) -> List[List[int]]:
    """Row-reduced basis of the image of the ideal in O_K/pO_K."""
    reduced, pivots = rref_mod_p([list(r) for r in ideal.rows], p)
    return reduced[: len(pivots)]


def _radical(field_: NumberField, p: int) -> Ideal:
    """rad(pO_K): the kernel of x ↦ x^(p^k) on O_K/pO_K with p^k ≥ n."""
    n = field_.degree
    k = 1
    while p**k < n:
        k += 1
    images = [
        _power_mod_p(field_, [int(i == j) for j in range(n)], p**k, p)
        for i in range(n)
    ]
    kernel = kernel_mod_p(transpose(images), p, cols=n)
    return _ideal_from_rows(field_, p, kernel)


def _split(field_: NumberField, p: int, ideal: Ideal) -> List[Ideal]:
    """Maximal ideals containing a radical ideal J ⊇ pO_K.

    The elements with x^p ≡ x mod J form a copy of F_p^g, g the number of
    maximal ideals over J. A non-scalar such x takes g' > 1 distinct values
    c, and J + (x − c) splits J.
    """
    n = field_.degree
    subspace = _subspace_mod_p(ideal, p)
    frobenius = [
        _power_mod_p(field_, [int(i == j) for j in range(n)], p, p) for i in range(n)
    ]
    shifted = [
        [(frobenius[i][j] - int(i == j)) % p for j in range(n)] for i in range(n)
    ]
    # x·(F − I) + y·W = 0
    stacked = shifted + [[(-w) % p for w in row] for row in subspace]
    solutions = kernel_mod_p(transpose(stacked), p, cols=len(stacked))
    fixed = [s[:n] for s in solutions]
    base = subspace + [list(field_.one().basis_ints())]
    base_rank = rank_mod_p(base, p)
    dimension = rank_mod_p(subspace + fixed, p) - len(subspace)
    if dimension == 1:
        return [ideal]
    alpha = next(x for x in fixed if rank_mod_p(base + [x], p) > base_rank)

    # minimal polynomial of alpha modulo J
    powers = [list(field_.one().basis_ints())]
    while True:
        nxt = [x % p for x in field_.mul_basis(powers[-1], alpha)]
        relation = kernel_mod_p(transpose(powers + [nxt] + subspace), p)
        useful = [r for r in relation if r[len(powers)] % p]
        if useful:
            r = useful[0]
            lead = pow(r[len(powers)], -1, p)
            coeffs = [(c * lead) % p for c in r[: len(powers) + 1]]
            break
        powers.append(nxt)
    x = sympy.Symbol("x")
    poly = sympy.Poly(list(reversed(coeffs)), x, modulus=p)
    _, factors = poly.factor_list()
    roots = []
    for factor, _mult in factors:
        if factor.degree() != 1:
            raise MathError(f"Idempotent polynomial does not split mod {p}")
        a1, a0 = (int(c) for c in factor.all_coeffs())
        roots.append((-a0 * pow(a1, -1, p)) % p)

    result: List[Ideal] = []
    one = list(field_.one().basis_ints())
    for c in sorted(roots):
        shifted_alpha = [(a - c * u) % p for a, u in zip(alpha, one)]
        rows = [list(r) for r in ideal.rows] + field_.multiplication_matrix_basis(
            shifted_alpha
        )
        part = Ideal.from_lattice(field_, rows)
        result.extend(_split(field_, p, part))
    return result


@lru_cache(maxsize=PRIME_CACHE_SIZE)
def _factor_cached(field_: NumberField, p: int) -> PrimeSplitData:
    n = field_.degree
    radical = _radical(field_, p)
    maximal = _split(field_, p, radical)
    p_ideal = Ideal.from_lattice(
        field_, [[p * int(i == j) for j in range(n)] for i in range(n)]
    )
    primes = []
    for m in maximal:
        norm = m.norm
        f = int(sympy.multiplicity(p, int(norm)))
        e = p_ideal.valuation(m)
        primes.append(PrimeIdeal(m, p, e, f))
    primes.sort(key=lambda q: (q.f, q.e, q.ideal.rows))
    total = sum(q.e * q.f for q in primes)
    if total != n:
        raise MathError(f"Σ e·f = {total} ≠ {n} for p = {p} in {field_.name}")
    logger.debug(
        "p = %d in %s: %s", p, field_.name, [(q.e, q.f) for q in primes]
    )
    return PrimeSplitData(p, tuple(primes))


def factor_prime(field_: NumberField, p: int) -> PrimeSplitData:
    """All primes of O_K above p with their e and f.

    Raises:
        InputError: p is not prime
    """
    if not sympy.isprime(p):
        raise InputError(f"{p} is not prime", "p")
    return _factor_cached(field_, p)


def index_of_order(field_: NumberField) -> int:
    """[O_K : ℤ[θ]]."""
    ratio = field_.poly.discriminant() / field_.discriminant
    k = isqrt(int(ratio))
    if k * k != ratio:
        raise MathError("disc(f)/d_K is not a square")
    return k


def splitting_type(field_: NumberField, p: int) -> List[Tuple[int, int]]:
    """Sorted (e, f) pairs above p; Dedekind factorisation when p ∤ [O_K:ℤ[θ]]."""
    if index_of_order(field_) % p:
        x = sympy.Symbol("x")
        _, factors = field_.poly.to_sympy(x).set_modulus(p).factor_list()
        return sorted((int(mult), int(g.degree())) for g, mult in factors)
    return factor_prime(field_, p).splitting_type()
