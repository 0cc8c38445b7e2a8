"""
Roots of unity μ(K) and the valuations ν(p) = v_p(|μ(K)|).
"""

import logging
from fractions import Fraction
from typing import List, Optional, Tuple

import sympy
from mpmath import mp

from galrel.config.settings import app_settings
from galrel.errors import CertificationError
from galrel.exact.lattice import GramMatrix, enumerate_short_vectors
from galrel.fields.number_field import FieldElement, NumberField
from galrel.fields.places import embedding_gram
from galrel.utils.retry_utils import with_precision_retry

logger = logging.getLogger(__name__)


def candidate_orders(degree: int) -> List[int]:
    """All m with φ(m) ≤ degree, ascending."""
    # φ(m) ≥ sqrt(m/2), so m ≤ 2·degree² suffices
    return [m for m in range(1, 2 * degree * degree + 3) if sympy.totient(m) <= degree]


def root_of_unity_order(x: FieldElement, orders: List[int]) -> Optional[int]:
    """Exact multiplicative order of x if it is among ``orders``."""
    for m in orders:
        if (x**m).is_one():
            return m
    return None


@with_precision_retry()
def _torsion(
    field_: NumberField, precision_bits: int = 128
) -> Tuple[int, FieldElement]:
    n = field_.degree
    bound = n + Fraction(1, 2**app_settings.search.TORSION_TOLERANCE_EXPONENT)
    r, _ = field_.signature
    with mp.workprec(precision_bits):
        if r == n:
            gram = GramMatrix.from_exact(field_.trace_form())
        else:
            gram = GramMatrix.from_certified(
                embedding_gram(field_, precision_bits=precision_bits)
            )
        vectors = enumerate_short_vectors(gram, bound)

    orders = candidate_orders(n)
    roots = []
    for v in vectors:
        x = field_.from_basis(v)
        m = root_of_unity_order(x, orders)
        if m is not None:
            roots.append((m, x))
    w = len(roots)
    if w == 0 or max(m for m, _ in roots) != w:
        raise CertificationError(
            f"Found {w} roots of unity without an element of order {w}",
            precision_bits,
        )
    generator = next(x for m, x in roots if m == w)
    return w, generator


def torsion_units(
    field_: NumberField, precision_bits: Optional[int] = None
) -> Tuple[int, FieldElement]:
    """w = |μ(K)| and a generator of exact order w.

    Units of finite order have all conjugates on the unit circle, so they are
    found among the integral x with Σ|τ(x)|² ≤ n; each candidate is kept only
    if x^m = 1 exactly for some m with φ(m) ≤ n.
    """
    w, generator = _torsion(field_, precision_bits=precision_bits)
    logger.info("μ(%s) has order %d, generated by %s", field_.name, w, generator)
    return w, generator


def nu_valuation(field_: NumberField, p: int, w: Optional[int] = None) -> int:
    """ν(p) = v_p(|μ(K)|).

    Args:
        field_: The field K
        p: A rational prime
        w: |μ(K)| when the caller already has it
    """
    if w is None:
        w, _ = torsion_units(field_)
    return int(sympy.multiplicity(p, w))
