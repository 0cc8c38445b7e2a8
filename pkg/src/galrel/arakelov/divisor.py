"""
Arakelov divisors: integer coefficients at prime ideals and real
coefficients at the infinite places.

Infinite coefficients follow the product-formula normalisation: the
principal divisor of f carries −log|τ(f)| at a real place and
−log|τ(f)|² at a complex place, so every principal divisor has degree 0.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

import sympy
from mpmath import mp

from galrel.config.constants import COMPLEX_PLACE_NORMALIZATION
from galrel.errors import InputError, MathError
from galrel.exact.certified import Certified, csum
from galrel.fields.number_field import FieldElement, NumberField
from galrel.fields.subfields import SubfieldData
from galrel.ideals.ideal import Ideal, contract_ideal, extend_ideal
from galrel.ideals.primes import PrimeIdeal, factor_prime

logger = logging.getLogger(__name__)

FinitePart = Tuple[Tuple[PrimeIdeal, int], ...]
Coefficient = Union[int, Fraction, Certified]


def _prime_key(prime: PrimeIdeal) -> Tuple[int, Tuple[Tuple[int, ...], ...]]:
    return (prime.p, prime.ideal.rows)


def _normalise_finite(items: Dict[PrimeIdeal, int]) -> FinitePart:
    return tuple(
        sorted(((q, n) for q, n in items.items() if n), key=lambda t: _prime_key(t[0]))
    )


def _lift(c: Coefficient) -> Certified:
    return c if isinstance(c, Certified) else Certified.exact(c)


@dataclass(frozen=True)
class ArakelovDivisor:
    """Σ n_P·P + Σ a_v·v over the primes and places of ``owner``.

    ``infinite[i]`` is the coefficient at ``owner.places()[i]``.
    """

    owner: NumberField
    finite: FinitePart
    infinite: Tuple[Certified, ...]

    @classmethod
    def zero(cls, owner: NumberField) -> "ArakelovDivisor":
        places = owner.places()
        with mp.workprec(places[0].precision):
            return cls(owner, (), tuple(Certified.exact(0) for _ in places))

    @classmethod
    def build(
        cls,
        owner: NumberField,
        finite: Optional[Dict[PrimeIdeal, int]] = None,
        infinite: Optional[Sequence[Coefficient]] = None,
    ) -> "ArakelovDivisor":
        """Divisor from a prime→coefficient map and per-place coefficients.

        Raises:
            InputError: wrong number of infinite coefficients or a prime of
                another field
        """
        places = owner.places()
        coefficients = list(infinite) if infinite is not None else [0] * len(places)
        if len(coefficients) != len(places):
            raise InputError(
                f"Expected {len(places)} infinite coefficients, got "
                f"{len(coefficients)}",
                "divisor",
            )
        for prime in finite or {}:
            if prime.ideal.owner is not owner:
                raise InputError("Prime ideal belongs to another field", "divisor")
        with mp.workprec(places[0].precision):
            lifted = tuple(_lift(c) for c in coefficients)
        return cls(owner, _normalise_finite(dict(finite or {})), lifted)

    def finite_map(self) -> Dict[PrimeIdeal, int]:
        return dict(self.finite)

    def _check(self, other: "ArakelovDivisor") -> None:
        if other.owner is not self.owner:
            raise InputError("Divisors live on different fields", "divisor")

    def __add__(self, other: "ArakelovDivisor") -> "ArakelovDivisor":
        self._check(other)
        merged = self.finite_map()
        for q, n in other.finite:
            merged[q] = merged.get(q, 0) + n
        with mp.workprec(self.owner.places()[0].precision):
            infinite = tuple(a + b for a, b in zip(self.infinite, other.infinite))
        return ArakelovDivisor(self.owner, _normalise_finite(merged), infinite)

    def __neg__(self) -> "ArakelovDivisor":
        return self.scale(-1)

    def __sub__(self, other: "ArakelovDivisor") -> "ArakelovDivisor":
        return self + (-other)

    def scale(self, k: int) -> "ArakelovDivisor":
        with mp.workprec(self.owner.places()[0].precision):
            infinite = tuple(a * k for a in self.infinite)
        finite = {q: n * k for q, n in self.finite}
        return ArakelovDivisor(self.owner, _normalise_finite(finite), infinite)

    def same_finite_part(self, other: "ArakelovDivisor") -> bool:
        return self.owner is other.owner and self.finite == other.finite

    def is_infinite(self) -> bool:
        return not self.finite

    def degree(self) -> Certified:
        """Σ n_P·log N(P) + Σ a_v."""
        with mp.workprec(self.owner.places()[0].precision):
            finite = csum(Certified.exact(q.norm).log() * n for q, n in self.finite)
            return finite + csum(self.infinite)

    def to_dict(self) -> Dict[str, object]:
        return {
            "field": self.owner.name,
            "finite": [
                {
                    "p": q.p,
                    "e": q.e,
                    "f": q.f,
                    "rows": [list(r) for r in q.ideal.rows],
                    "coefficient": n,
                }
                for q, n in self.finite
            ],
            "infinite": [a.to_dict() for a in self.infinite],
            "complex_place_normalization": COMPLEX_PLACE_NORMALIZATION,
        }


def _rational_primes(q: Fraction) -> List[int]:
    primes = set(sympy.primefactors(q.numerator))
    return sorted(primes | set(sympy.primefactors(q.denominator)))


def principal_divisor(f: FieldElement) -> ArakelovDivisor:
    """div(f): valuations of (f) and −n_v·log|τ_v(f)| at each place.

    Raises:
        InputError: f = 0
    """
    if f.is_zero():
        raise InputError("div(0) is undefined", "element")
    owner = f.owner
    ideal = Ideal.principal(f)
    finite: Dict[PrimeIdeal, int] = {}
    for p in _rational_primes(abs(f.norm())):
        for prime in factor_prime(owner, p).primes:
            v = ideal.valuation(prime.ideal)
            if v:
                finite[prime] = v
    places = owner.places()
    with mp.workprec(places[0].precision):
        infinite = tuple(
            -(place.embed(f).abs().log() * place.local_degree) for place in places
        )
    return ArakelovDivisor(owner, _normalise_finite(finite), infinite)


def _prime_below(sub: SubfieldData, prime: PrimeIdeal) -> PrimeIdeal:
    contracted = contract_ideal(sub, prime.ideal)
    for q in factor_prime(sub.field, prime.p).primes:
        if q.ideal.rows == contracted.rows:
            return q
    raise MathError(f"No prime of {sub.field.name} below {prime.ideal}")


def pushforward(sub: SubfieldData, divisor: ArakelovDivisor) -> ArakelovDivisor:
    """τ_*: P ↦ f(P|p)·p, and each place w of L adds its coefficient to the
    place of L^H below it."""
    if divisor.owner is not sub.ambient:
        raise InputError("Divisor does not live on the top field", "divisor")
    finite: Dict[PrimeIdeal, int] = {}
    for prime, n in divisor.finite:
        below = _prime_below(sub, prime)
        finite[below] = finite.get(below, 0) + n * (prime.f // below.f)
    lower_places = sub.field.places()
    with mp.workprec(lower_places[0].precision):
        infinite = [Certified.exact(0) for _ in lower_places]
        for link in sub.place_links():
            infinite[link.lower] = infinite[link.lower] + divisor.infinite[link.upper]
    return ArakelovDivisor(sub.field, _normalise_finite(finite), tuple(infinite))


def pullback(sub: SubfieldData, divisor: ArakelovDivisor) -> ArakelovDivisor:
    """τ^*: p ↦ Σ_{P|p} e(P|p)·P, and a_w = e(w|v)·a_v at the places."""
    if divisor.owner is not sub.field:
        raise InputError("Divisor does not live on the subfield", "divisor")
    finite: Dict[PrimeIdeal, int] = {}
    for prime, n in divisor.finite:
        extended = extend_ideal(sub, prime.ideal)
        for upper in factor_prime(sub.ambient, prime.p).primes:
            e = extended.valuation(upper.ideal)
            if e:
                finite[upper] = finite.get(upper, 0) + n * e
    upper_places = sub.ambient.places()
    with mp.workprec(upper_places[0].precision):
        infinite = [Certified.exact(0) for _ in upper_places]
        for link in sub.place_links():
            infinite[link.upper] = divisor.infinite[link.lower] * link.ramification
    logger.debug(
        "Pulled back a divisor from %s to %s", sub.field.name, sub.ambient.name
    )
    return ArakelovDivisor(sub.ambient, _normalise_finite(finite), tuple(infinite))
