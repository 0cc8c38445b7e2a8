"""
Finite abelian groups presented by relation matrices.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

import sympy

from galrel.errors import InfiniteQuotientError
from galrel.exact.matrices import IntMatrix, diagonal, snf, transpose

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FinAbelianGroup:
    """ℤ/d_1 ⊕ ... ⊕ ℤ/d_k with d_1 | d_2 | ... | d_k and every d_i > 1."""

    invariants: Tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        for a, b in zip(self.invariants, self.invariants[1:]):
            if b % a:
                raise ValueError(
                    f"Invariant factors {self.invariants} break divisibility"
                )
        if any(d <= 1 for d in self.invariants):
            raise ValueError("Invariant factors must exceed 1")

    @property
    def order(self) -> int:
        result = 1
        for d in self.invariants:
            result *= d
        return result

    def is_trivial(self) -> bool:
        return not self.invariants

    def p_part(self, p: int) -> Dict[int, int]:
        """Map level n -> number of ℤ/pⁿ summands of the p-primary part."""
        levels: Dict[int, int] = {}
        for d in self.invariants:
            n = sympy.multiplicity(p, d)
            if n:
                levels[n] = levels.get(n, 0) + 1
        return dict(sorted(levels.items()))

    def primes(self) -> List[int]:
        return sorted({p for d in self.invariants for p in sympy.primefactors(d)})

    def __str__(self) -> str:
        if not self.invariants:
            return "trivial"
        return " + ".join(f"Z/{d}" for d in self.invariants)


@dataclass(frozen=True)
class AbelianPresentation:
    """Group ℤ^k / (column span of the relations) with its SNF coordinates.

    ``coordinates`` sends a vector of ℤ^k to its invariant-factor coordinates;
    ``generators`` are the images in ℤ^k of the invariant-factor basis.
    """

    group: FinAbelianGroup
    to_smith: IntMatrix
    generators: IntMatrix
    offset: int

    def coordinates(self, v: Sequence[int]) -> Tuple[int, ...]:
        w = [sum(r[j] * v[j] for j in range(len(v))) for r in self.to_smith]
        w = w[self.offset:]
        return tuple(x % d for x, d in zip(w, self.group.invariants))


def present(relations: Sequence[Sequence[int]], rank: int) -> AbelianPresentation:
    """Structure of ℤ^rank modulo the span of the COLUMNS of ``relations``.

    Raises:
        InfiniteQuotientError: relations do not span a full-rank sublattice
    """
    if rank == 0:
        return AbelianPresentation(FinAbelianGroup(), [], [], 0)
    rel = [list(row) for row in relations] if relations and relations[0] else []
    if not rel:
        raise InfiniteQuotientError(f"No relations for a rank {rank} group")
    u, d, v = snf(rel)
    diag = diagonal(d)
    if len(diag) < rank or any(x == 0 for x in diag[:rank]):
        raise InfiniteQuotientError("Relation matrix presents an infinite group")
    offset = sum(1 for x in diag[:rank] if x == 1)
    invariants = tuple(diag[offset:rank])
    # columns of U⁻¹ are the images of the Smith basis
    u_inv = _unimodular_inverse(u)
    gens = transpose(u_inv)[offset:rank]
    return AbelianPresentation(FinAbelianGroup(invariants), u, gens, offset)


def abelian_structure(relations: Sequence[Sequence[int]]) -> FinAbelianGroup:
    """Invariant factors of ℤ^k modulo the column span of ``relations``.

    Raises:
        InfiniteQuotientError: the quotient is infinite
    """
    rank = len(relations)
    return present(relations, rank).group


def _unimodular_inverse(u: IntMatrix) -> IntMatrix:
    m = sympy.Matrix(u).inv()
    return [[int(m[i, j]) for j in range(m.cols)] for i in range(m.rows)]
