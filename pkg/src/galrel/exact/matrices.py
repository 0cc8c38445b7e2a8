"""
Exact integer, rational and mod-p matrix algorithms.

Matrices are lists of rows. Lattices are generated by the ROWS of their
matrices, so HNF here is the row-style (upper triangular) Hermite form.
"""

import logging
from fractions import Fraction
from math import gcd, lcm
from typing import Any, List, Optional, Sequence, Tuple, Union

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]
IntMatrix = List[List[int]]
RatMatrix = List[List[Fraction]]


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int) -> IntMatrix:
    return [[0] * cols for _ in range(rows)]


def transpose(m: Sequence[Sequence[Any]]) -> List[List[Any]]:
    return [list(col) for col in zip(*m)]


def mat_mul(
    a: Sequence[Sequence[Scalar]], b: Sequence[Sequence[Scalar]]
) -> List[List[Any]]:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def vec_mat(v: Sequence[Scalar], m: Sequence[Sequence[Scalar]]) -> List[Any]:
    """Row vector times matrix."""
    if not m:
        return []
    return [sum(v[i] * m[i][j] for i in range(len(m))) for j in range(len(m[0]))]


def mat_vec(m: Sequence[Sequence[Scalar]], v: Sequence[Scalar]) -> List[Any]:
    return [sum(x * y for x, y in zip(row, v)) for row in m]


def to_fractions(m: Sequence[Sequence[Scalar]]) -> RatMatrix:
    return [[Fraction(x) for x in row] for row in m]


def common_denominator(m: Sequence[Sequence[Scalar]]) -> int:
    d = 1
    for row in m:
        for x in row:
            d = lcm(d, Fraction(x).denominator)
    return d


def primitive_vector(v: Sequence[Scalar]) -> List[int]:
    """Scale a rational vector to coprime integers (sign kept)."""
    d = 1
    for x in v:
        d = lcm(d, Fraction(x).denominator)
    ints = [int(Fraction(x) * d) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [x // g for x in ints] if g else ints


# ---------------------------------------------------------------------
# Rational linear algebra
# ---------------------------------------------------------------------


def _domain_matrix(m: Sequence[Sequence[Scalar]]) -> DomainMatrix:
    fractions = to_fractions(m)
    rows = [[QQ(x.numerator, x.denominator) for x in row] for row in fractions]
    return DomainMatrix(rows, (len(rows), len(rows[0])), QQ)


def _from_sympy(x: Any) -> Fraction:
    return Fraction(int(x.p), int(x.q))


def rref(m: Sequence[Sequence[Scalar]]) -> Tuple[RatMatrix, List[int]]:
    """Reduced row echelon form over ℚ and the pivot columns."""
    if not m or not m[0]:
        return to_fractions(m), []
    reduced, pivots = _domain_matrix(m).rref()
    dense = reduced.to_Matrix()
    rows = [
        [_from_sympy(dense[i, j]) for j in range(dense.cols)] for i in range(dense.rows)
    ]
    return rows, list(pivots)


def rank(m: Sequence[Sequence[Scalar]]) -> int:
    return len(rref(m)[1])


def rational_kernel(
    m: Sequence[Sequence[Scalar]], cols: Optional[int] = None
) -> List[List[int]]:
    """Basis of {v : m·v = 0}, each vector rescaled to coprime integers.

    Args:
        m: Matrix as a list of rows
        cols: Number of columns, needed only when m has no rows
    """
    n = len(m[0]) if m else (cols or 0)
    reduced, pivots = rref(m) if m else ([], [])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -reduced[i][f]
        basis.append(primitive_vector(v))
    return basis


def solve_rational(
    m: Sequence[Sequence[Scalar]], rhs: Sequence[Scalar]
) -> Optional[List[Fraction]]:
    """One solution x of m·x = rhs over ℚ, or None when inconsistent."""
    if not m:
        return None
    cols = len(m[0])
    augmented = [list(row) + [b] for row, b in zip(m, rhs)]
    reduced, pivots = rref(augmented)
    if cols in pivots:
        return None
    x = [Fraction(0)] * cols
    for i, p in enumerate(pivots):
        x[p] = reduced[i][cols]
    return x


def inverse(m: Sequence[Sequence[Scalar]]) -> RatMatrix:
    n = len(m)
    augmented = [
        list(row) + [Fraction(int(i == j)) for j in range(n)]
        for i, row in enumerate(m)
    ]
    reduced, pivots = rref(augmented)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("Matrix is singular")
    return [row[n:] for row in reduced]


def determinant(m: Sequence[Sequence[Scalar]]) -> Fraction:
    """Exact determinant over ℚ."""
    if not m:
        return Fraction(1)
    value = _domain_matrix(m).det()
    return Fraction(int(QQ.numer(value)), int(QQ.denom(value)))


# ---------------------------------------------------------------------
# Integer normal forms
# ---------------------------------------------------------------------


def hnf_with_transform(m: Sequence[Sequence[int]]) -> Tuple[IntMatrix, IntMatrix]:
    """Row Hermite normal form H and unimodular U with U·m = H.

    H keeps the row count of m; zero rows collect at the bottom. Pivots are
    positive and entries above a pivot are reduced into [0, pivot).
    """
    a = [list(map(int, row)) for row in m]
    rows = len(a)
    cols = len(a[0]) if a else 0
    u = identity(rows)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        while True:
            live = [i for i in range(r, rows) if a[i][c] != 0]
            if not live:
                break
            best = min(live, key=lambda i: abs(a[i][c]))
            a[r], a[best] = a[best], a[r]
            u[r], u[best] = u[best], u[r]
            done = True
            for i in range(r + 1, rows):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    done = done and a[i][c] == 0
            if done:
                break
        if a[r][c] == 0:
            continue
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            q = a[i][c] // a[r][c]
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        r += 1
    return a, u


def hnf(m: Sequence[Sequence[int]]) -> IntMatrix:
    """Row Hermite normal form with zero rows removed."""
    h, _ = hnf_with_transform(m)
    return [row for row in h if any(row)]


def integer_left_kernel(m: Sequence[Sequence[int]]) -> IntMatrix:
    """ℤ-basis of {y : y·m = 0}."""
    h, u = hnf_with_transform(m)
    return [u[i] for i, row in enumerate(h) if not any(row)]


def integer_kernel(m: Sequence[Sequence[int]], cols: Optional[int] = None) -> IntMatrix:
    """ℤ-basis of {v : m·v = 0}, in Hermite normal form."""
    if not m:
        return identity(cols or 0)
    kernel = integer_left_kernel(transpose(m))
    return hnf(kernel) if kernel else []


def integer_solutions_lattice(t: Sequence[Sequence[Scalar]]) -> IntMatrix:
    """HNF basis of {y ∈ ℤ^m : y·t ∈ ℤ^k} for a rational m×k matrix t."""
    m = len(t)
    k = len(t[0]) if t else 0
    d = common_denominator(t)
    if d == 1:
        return identity(m)
    scaled = [[int(Fraction(x) * d) for x in row] for row in t]
    stacked = scaled + [[-d * int(i == j) for j in range(k)] for i in range(k)]
    kernel = integer_left_kernel(stacked)
    return hnf([row[:m] for row in kernel])


def snf(m: Sequence[Sequence[int]]) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form: unimodular U, V and diagonal D with U·m·V = D.

    Diagonal entries are non-negative and each divides the next.
    """
    a = [list(map(int, row)) for row in m]
    rows = len(a)
    cols = len(a[0]) if a else 0
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i: int, j: int) -> None:
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(target: int, source: int, q: int) -> None:
        a[target] = [x + q * y for x, y in zip(a[target], a[source])]
        u[target] = [x + q * y for x, y in zip(u[target], u[source])]

    def add_col(target: int, source: int, q: int) -> None:
        for row in a:
            row[target] += q * row[source]
        for row in v:
            row[target] += q * row[source]

    for t in range(min(rows, cols)):
        entries = [
            (abs(a[i][j]), i, j)
            for i in range(t, rows)
            for j in range(t, cols)
            if a[i][j]
        ]
        if not entries:
            break
        _, pi, pj = min(entries)
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            line = [(abs(a[i][t]), i, t) for i in range(t, rows) if a[i][t]]
            line += [(abs(a[t][j]), t, j) for j in range(t + 1, cols) if a[t][j]]
            _, pi, pj = min(line)
            swap_rows(t, pi)
            swap_cols(t, pj)
            pivot = a[t][t]
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // pivot))
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // pivot))
            if any(a[i][t] for i in range(t + 1, rows)) or any(
                a[t][j] for j in range(t + 1, cols)
            ):
                continue
            bad = next(
                (
                    i
                    for i in range(t + 1, rows)
                    for j in range(t + 1, cols)
                    if a[i][j] % pivot
                ),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return u, a, v


def diagonal(d: Sequence[Sequence[int]]) -> List[int]:
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]


# ---------------------------------------------------------------------
# Linear algebra over F_p
# ---------------------------------------------------------------------


def rref_mod_p(m: Sequence[Sequence[int]], p: int) -> Tuple[IntMatrix, List[int]]:
    a = [[x % p for x in row] for row in m]
    if not a:
        return a, []
    rows, cols = len(a), len(a[0])
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if a[i][c]), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = pow(a[r][c], -1, p)
        a[r] = [(x * inv) % p for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def rank_mod_p(m: Sequence[Sequence[int]], p: int) -> int:
    return len(rref_mod_p(m, p)[1])


def kernel_mod_p(
    m: Sequence[Sequence[int]], p: int, cols: Optional[int] = None
) -> IntMatrix:
    """Basis of {v ∈ F_p^n : m·v = 0}."""
    n = len(m[0]) if m else (cols or 0)
    if not m:
        return identity(n)
    reduced, pivots = rref_mod_p(m, p)
    basis = []
    for f in (c for c in range(n) if c not in pivots):
        v = [0] * n
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = (-reduced[i][f]) % p
        basis.append(v)
    return basis


def solve_mod_p(
    m: Sequence[Sequence[int]], rhs: Sequence[int], p: int
) -> Optional[List[int]]:
    """One solution x of m·x = rhs over F_p, or None."""
    if not m:
        return None
    cols = len(m[0])
    reduced, pivots = rref_mod_p([list(row) + [b] for row, b in zip(m, rhs)], p)
    if cols in pivots:
        return None
    x = [0] * cols
    for i, c in enumerate(pivots):
        x[c] = reduced[i][cols]
    return x
