"""
Gram matrices, LLL reduction and Fincke–Pohst short vector enumeration.

A GramMatrix carries mpmath midpoints with one error radius bounding every
entry, and optionally the exact rational entries. Enumeration never misses
a vector: the float search runs on an enlarged radius and candidates are
filtered afterwards, exactly when the Gram is exact.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, List, Optional, Sequence, Tuple, Union

import mpmath
import numpy as np
from mpmath import mp

from galrel.config.settings import app_settings
from galrel.errors import (
    BudgetExhaustedError,
    CertificationError,
    NotPositiveDefiniteError,
)
from galrel.exact.certified import Certified, to_mpf
from galrel.exact.matrices import IntMatrix, identity

logger = logging.getLogger(__name__)

Vector = Tuple[int, ...]

# relative slack for the floating point search
ENUMERATION_MARGIN = 2.0**-30


def _max_abs(m: Any) -> Any:
    return max(
        (abs(m[i, j]) for i in range(m.rows) for j in range(m.cols)),
        default=mp.mpf(0),
    )


@dataclass(frozen=True)
class GramMatrix:
    """Symmetric positive definite form with certified entries.

    Attributes:
        midpoint: mpmath matrix of entry midpoints
        radius: bound on |true entry - midpoint|, common to all entries
        exact: exact rational entries when known
    """

    midpoint: Any
    radius: Any
    exact: Optional[Tuple[Tuple[Fraction, ...], ...]] = None

    @classmethod
    def from_exact(cls, rows: Sequence[Sequence[Union[int, Fraction]]]) -> "GramMatrix":
        exact = tuple(tuple(Fraction(x) for x in row) for row in rows)
        mid = mp.matrix([[to_mpf(x) for x in row] for row in exact])
        eps = mpmath.ldexp(mp.mpf(1), 1 - mp.prec)
        rad = _max_abs(mid) * eps
        return cls(mid, rad, exact)

    @classmethod
    def from_certified(cls, rows: Sequence[Sequence[Certified]]) -> "GramMatrix":
        n = len(rows)
        mid = mp.matrix(n, n)
        rad = mp.mpf(0)
        for i in range(n):
            for j in range(n):
                a, b = rows[i][j], rows[j][i]
                mid[i, j] = mpmath.re((a.value + b.value) / 2)
                rad = max(rad, a.radius + abs(a.value - b.value) / 2)
        return cls(mid, rad)

    @property
    def dimension(self) -> int:
        return int(self.midpoint.rows)

    def entry(self, i: int, j: int) -> Certified:
        return Certified(self.midpoint[i, j], self.radius)

    def evaluate(self, v: Sequence[int]) -> Certified:
        """Certified value of vᵀ·G·v."""
        n = self.dimension
        total = mp.mpf(0)
        for i in range(n):
            if v[i]:
                row = mp.mpf(0)
                for j in range(n):
                    if v[j]:
                        row += self.midpoint[i, j] * v[j]
                total += v[i] * row
        l1 = sum(abs(x) for x in v)
        rounding = abs(total) * mpmath.ldexp(mp.mpf(n * n + 2), 1 - mp.prec)
        return Certified(total, self.radius * l1 * l1 + rounding)

    def evaluate_exact(self, v: Sequence[int]) -> Fraction:
        if self.exact is None:
            raise ValueError("Gram matrix has no exact entries")
        n = len(v)
        total = Fraction(0)
        for i in range(n):
            if v[i]:
                total += v[i] * sum(
                    (self.exact[i][j] * v[j] for j in range(n) if v[j]), Fraction(0)
                )
        return total

    def transform(self, basis: Sequence[Sequence[int]]) -> "GramMatrix":
        """Gram of the row vectors of ``basis``: B·G·Bᵀ."""
        b = mp.matrix([[mp.mpf(x) for x in row] for row in basis])
        mid = b * self.midpoint * b.T
        norms = [sum(abs(x) for x in row) for row in basis]
        scale = max(norms, default=0) ** 2
        eps = mpmath.ldexp(mp.mpf(len(basis) ** 2 + 2), 1 - mp.prec)
        rad = self.radius * scale + _max_abs(mid) * eps
        exact = None
        if self.exact is not None:
            n = len(self.exact)
            exact = tuple(
                tuple(
                    sum(
                        (Fraction(u[a]) * self.exact[a][c] * w[c]
                         for a in range(n) for c in range(n) if u[a] and w[c]),
                        Fraction(0),
                    )
                    for w in basis
                )
                for u in basis
            )
        return GramMatrix(mid, rad, exact)

    def min_eigenvalue_bound(self) -> Any:
        """Lower bound on the smallest eigenvalue of every matrix in the ball."""
        n = self.dimension
        if n == 0:
            return mp.inf
        eigenvalues, _ = mpmath.eigsy(self.midpoint.copy())
        smallest = min(eigenvalues[i] for i in range(n))
        rounding = abs(smallest) * mpmath.ldexp(mp.mpf(n * n), 4 - mp.prec)
        slack = n * self.radius + rounding
        return smallest - slack

    def check_positive_definite(self) -> Any:
        """Certified lower eigenvalue bound; raises when it is not positive.

        Raises:
            NotPositiveDefiniteError: the midpoint itself is not definite
            CertificationError: definite midpoint but radius too large
        """
        bound = self.min_eigenvalue_bound()
        if bound > 0:
            return bound
        eigenvalues, _ = mpmath.eigsy(self.midpoint.copy())
        if min(eigenvalues[i] for i in range(self.dimension)) <= 0:
            raise NotPositiveDefiniteError("Gram matrix is not positive definite")
        raise CertificationError(
            "Gram matrix not certified positive definite", precision=mp.prec
        )


def _gram_schmidt(g: Any, n: int) -> Tuple[List[List[Any]], List[Any]]:
    mu = [[mp.mpf(0)] * n for _ in range(n)]
    norms: List[Any] = []
    for i in range(n):
        for j in range(i):
            s = g[i, j] - sum(mu[j][k] * mu[i][k] * norms[k] for k in range(j))
            mu[i][j] = s / norms[j]
        b = g[i, i] - sum(mu[i][k] ** 2 * norms[k] for k in range(i))
        if b <= 0:
            raise NotPositiveDefiniteError("Degenerate basis during Gram-Schmidt")
        norms.append(b)
    return mu, norms


def lll_reduce(
    basis: Sequence[Sequence[int]],
    gram: GramMatrix,
    delta: Optional[float] = None,
) -> IntMatrix:
    """LLL-reduce the rows of ``basis`` with respect to ``gram``.

    Args:
        basis: Integer row vectors in the coordinates of ``gram``
        gram: Ambient form, positive definite on the span of the basis
        delta: Lovász constant, defaults to the configured 0.99

    Returns:
        IntMatrix: Reduced basis of the same lattice

    Raises:
        NotPositiveDefiniteError: gram is degenerate on the basis span
    """
    delta = delta if delta is not None else app_settings.lattice.LLL_DELTA
    b = [list(map(int, row)) for row in basis]
    n = len(b)
    if n <= 1:
        return b
    d = mp.mpf(delta)

    def form(rows: List[List[int]]) -> Any:
        m = mp.matrix([[mp.mpf(x) for x in row] for row in rows])
        return m * gram.midpoint * m.T

    g = form(b)
    mu, norms = _gram_schmidt(g, n)
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = int(mpmath.nint(mu[k][j]))
            if q:
                b[k] = [x - q * y for x, y in zip(b[k], b[j])]
                for l in range(j):
                    mu[k][l] -= q * mu[j][l]
                mu[k][j] -= q
        if norms[k] >= (d - mu[k][k - 1] ** 2) * norms[k - 1]:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            g = form(b)
            mu, norms = _gram_schmidt(g, n)
            k = max(k - 1, 1)
    return b


def _cholesky_coefficients(g: Any, n: int) -> List[List[float]]:
    """q with Q(y) = Σ_i q_ii (y_i + Σ_{j>i} q_ij y_j)², as floats."""
    q = [[float(g[i, j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    return q


def _fincke_pohst(
    q: List[List[float]], n: int, bound: float, limit: int
) -> List[Vector]:
    found: List[Vector] = []
    y = [0] * n

    def recurse(i: int, remaining: float) -> None:
        center = -sum(q[i][j] * y[j] for j in range(i + 1, n))
        span = math.sqrt(max(remaining, 0.0) / q[i][i])
        for yi in range(math.ceil(center - span), math.floor(center + span) + 1):
            y[i] = yi
            rest = remaining - q[i][i] * (yi - center) ** 2
            if rest < 0:
                continue
            if i == 0:
                found.append(tuple(y))
                if len(found) > limit:
                    raise BudgetExhaustedError("Too many lattice points", budget=limit)
            else:
                recurse(i - 1, rest)
        y[i] = 0

    recurse(n - 1, bound)
    return found


def enumerate_short_vectors(
    gram: GramMatrix,
    radius_sq: Union[int, Fraction, float, Any],
    half: bool = False,
) -> List[Vector]:
    """All nonzero integer v with vᵀ·G·v ≤ radius_sq.

    With an exact Gram the result is exact. Otherwise it also holds the
    boundary vectors whose certified value straddles ``radius_sq``.

    Args:
        gram: Positive definite Gram matrix
        radius_sq: Bound on the form value
        half: Return one vector of each ± pair (first nonzero entry positive)

    Raises:
        NotPositiveDefiniteError: gram is degenerate
        BudgetExhaustedError: more points than the configured limit
    """
    n = gram.dimension
    if n == 0:
        return []
    gram.check_positive_definite()
    reduced = lll_reduce(identity(n), gram)
    local = gram.transform(reduced)
    local_lam = local.check_positive_definite()
    shrink = 1 - n * local.radius / local_lam
    if shrink <= mp.mpf(0.5):
        raise CertificationError(
            "Gram radius too large for enumeration", precision=mp.prec
        )

    r = mp.mpf(radius_sq) if not isinstance(radius_sq, Fraction) else to_mpf(radius_sq)
    search = float(r / shrink) * (1 + ENUMERATION_MARGIN) + ENUMERATION_MARGIN
    q = _cholesky_coefficients(local.midpoint, n)
    limit = app_settings.lattice.MAX_ENUMERATED_POINTS
    candidates = _fincke_pohst(q, n, search, limit)

    transform = np.array(reduced, dtype=object)
    result: List[Vector] = []
    exact_bound: Optional[Fraction] = None
    if gram.exact is not None and isinstance(radius_sq, (int, Fraction)):
        exact_bound = Fraction(radius_sq)
    for y in candidates:
        if not any(y):
            continue
        v = tuple(int(x) for x in np.dot(np.array(y, dtype=object), transform))
        if half and next(x for x in v if x) < 0:
            continue
        if exact_bound is not None:
            if gram.evaluate_exact(v) > exact_bound:
                continue
        elif gram.evaluate(v).lower() > r:
            continue
        result.append(v)
    result.sort()
    logger.debug(
        "Enumerated %d vectors of norm <= %s in dimension %d", len(result), r, n
    )
    return result
