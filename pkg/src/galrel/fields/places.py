"""
Certified infinite places: the roots of the minimal polynomial.
"""

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any, List, Optional, Sequence

import mpmath
import numpy as np
from mpmath import mp

from galrel.errors import CertificationError
from galrel.exact.certified import Certified
from galrel.utils.retry_utils import with_precision_retry

if TYPE_CHECKING:
    from galrel.fields.number_field import FieldElement, NumberField

logger = logging.getLogger(__name__)

REAL = "real"
COMPLEX = "complex"


@dataclass(frozen=True)
class Place:
    """Infinite place given by a certified root of f.

    Complex places keep the root with positive imaginary part.
    """

    index: int
    kind: str
    root: Certified
    precision: int

    @property
    def is_real(self) -> bool:
        return self.kind == REAL

    @property
    def local_degree(self) -> int:
        return 1 if self.is_real else 2

    def embed(self, x: "FieldElement") -> Certified:
        """τ(x) as a certified real or complex ball."""
        with mp.workprec(self.precision):
            value = x.polynomial()(self.root)
            if isinstance(value, Certified):
                return value
            return Certified.exact(value)


def _inclusion_radius(coeffs: List[Any], z: Any, n: int) -> Any:
    """Radius of a disc around z that contains a root: n·|f(z)/f'(z)|."""
    fz = mpmath.polyval(coeffs, z)
    dfz = mpmath.polyval([c * (n - i) for i, c in enumerate(coeffs[:-1])], z)
    if dfz == 0:
        raise CertificationError("Derivative vanishes at an approximate root", mp.prec)
    return n * abs(fz / dfz) + abs(z) * mpmath.ldexp(mp.mpf(1), 4 - mp.prec)


@with_precision_retry()
def compute_places(field: "NumberField", precision_bits: int = 128) -> List[Place]:
    """All infinite places of ``field``, certified at ``precision_bits``.

    Roots are isolated by pairwise disjoint inclusion discs; the number of
    discs meeting the real axis must equal the Sturm count.

    Raises:
        CertificationError: discs overlap or the real count disagrees
    """
    n = field.degree
    r, _ = field.signature
    with mp.workprec(precision_bits):
        coeffs = [
            mp.mpf(c.numerator) / c.denominator
            for c in reversed(field.poly.coefficients)
        ]
        if n == 1:
            return [Place(0, REAL, Certified.of(-coeffs[1]), precision_bits)]
        start = np.roots([float(c) for c in coeffs])
        try:
            roots = mpmath.polyroots(
                coeffs, maxsteps=200, extraprec=precision_bits, roots_init=list(start)
            )
        except mpmath.NoConvergence as e:
            raise CertificationError(
                f"Root finding did not converge: {e}", precision_bits
            ) from e
        radii = [_inclusion_radius(coeffs, z, n) for z in roots]

        for i in range(n):
            for j in range(i + 1, n):
                if abs(roots[i] - roots[j]) <= radii[i] + radii[j]:
                    raise CertificationError("Root discs overlap", precision_bits)

        touching = [i for i in range(n) if abs(mpmath.im(roots[i])) <= radii[i]]
        if len(touching) != r:
            raise CertificationError(
                f"{len(touching)} discs meet the real axis but Sturm counts {r}",
                precision_bits,
            )
        real = sorted(
            (Certified(mpmath.re(roots[i]), radii[i]) for i in touching),
            key=lambda c: c.value,
        )
        upper = sorted(
            (
                Certified(mpmath.mpc(roots[i]), radii[i])
                for i in range(n)
                if i not in touching and mpmath.im(roots[i]) > 0
            ),
            key=lambda c: (mpmath.re(c.value), mpmath.im(c.value)),
        )
        if len(real) + 2 * len(upper) != n:
            raise CertificationError("Complex roots do not pair up", precision_bits)

    places = [Place(i, REAL, root, precision_bits) for i, root in enumerate(real)]
    places += [
        Place(len(real) + i, COMPLEX, root, precision_bits)
        for i, root in enumerate(upper)
    ]
    logger.debug(
        "Certified %d places of %s at %d bits", len(places), field.name, precision_bits
    )
    return places


def nearest_place(places: List[Place], value: Certified) -> Place:
    """The place whose root ball contains ``value`` or its conjugate.

    Raises:
        CertificationError: no place or several places match
    """
    matches = []
    with mp.workprec(max(p.precision for p in places)):
        for place in places:
            for candidate in (value, value.conjugate()):
                if place.root.overlaps(candidate):
                    matches.append(place)
                    break
    if len(matches) != 1:
        raise CertificationError(
            f"Could not match an embedding to a unique place ({len(matches)} matches)"
        )
    return matches[0]


def embedding_gram(
    field: "NumberField",
    multipliers: Optional[Sequence[Any]] = None,
    precision_bits: Optional[int] = None,
) -> List[List[Certified]]:
    """Certified Σ_v m_v·Re(τ_v(b_i)·conj τ_v(b_j)) over the integral basis.

    Without multipliers this is the T2 form: m_v = 1 at real places and 2 at
    complex places, so that it equals Σ over all n embeddings.
    """
    places = field.places(precision_bits)
    if multipliers is None:
        multipliers = [1 if p.is_real else 2 for p in places]
    bits = places[0].precision
    basis = field.basis_elements()
    with mp.workprec(bits):
        values = [[p.embed(b) for b in basis] for p in places]
        n = field.degree
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                total = Certified.exact(0)
                for k, m in enumerate(multipliers):
                    term = (values[k][i] * values[k][j].conjugate()).real
                    total = total + term * m
                row.append(total)
            rows.append(row)
    return rows
