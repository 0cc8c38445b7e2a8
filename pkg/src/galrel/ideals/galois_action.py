"""
The action of Gal(L/ℚ) on Cl(L) and traces of ε_H on its p-primary layers.
"""

import logging
from typing import Dict, List, Sequence, Tuple

from galrel.errors import MathError, UnsupportedError
from galrel.fields.automorphisms import Automorphism
from galrel.ideals.class_group import ClassGroup

logger = logging.getLogger(__name__)

ActionMatrix = List[List[int]]


def action_matrix(cl: ClassGroup, sigma: Automorphism) -> ActionMatrix:
    """Row i: coordinates of the class σ(g_i) for the generator classes g_i."""
    return [list(cl.class_of(g.apply(sigma))) for g in cl.generators]


def _compose(
    a: ActionMatrix, b: ActionMatrix, invariants: Sequence[int]
) -> ActionMatrix:
    """Row-vector action of "apply a, then b", reduced per column."""
    size = len(invariants)
    return [
        [
            sum(a[i][k] * b[k][j] for k in range(size)) % invariants[j]
            for j in range(size)
        ]
        for i in range(size)
    ]


def galois_action_on_classes(
    cl: ClassGroup, auts: Sequence[Automorphism]
) -> List[ActionMatrix]:
    """Action matrices of every automorphism on the invariant-factor basis.

    A class with coordinates x goes to x·M_σ. The map σ ↦ M_σ is checked to
    be a homomorphism: M_{σ∘τ} = M_τ·M_σ.

    Raises:
        MathError: the matrices do not form a representation
    """
    invariants = cl.structure.invariants
    matrices = [action_matrix(cl, sigma) for sigma in auts]
    index = {a.image: i for i, a in enumerate(auts)}
    for i, s in enumerate(auts):
        for j, t in enumerate(auts):
            composite = matrices[index[s.compose(t).image]]
            if composite != _compose(matrices[j], matrices[i], invariants):
                raise MathError(
                    "Class group action is not multiplicative at "
                    f"({s.label}, {t.label})"
                )
    return matrices


def p_primary_blocks(
    invariants: Sequence[int], p: int
) -> Tuple[List[int], List[int], List[int]]:
    """Indices with a nontrivial p-part, their exponents k_i and cofactors m_i."""
    indices, exponents, cofactors = [], [], []
    for i, d in enumerate(invariants):
        k, m = 0, d
        while m % p == 0:
            m //= p
            k += 1
        if k:
            indices.append(i)
            exponents.append(k)
            cofactors.append(m)
    return indices, exponents, cofactors


def p_primary_action(
    matrix: ActionMatrix, invariants: Sequence[int], p: int
) -> Dict[Tuple[int, int], int]:
    """Entries of the action on Cl_p in the basis g_i^{m_i}, mod p^{k_j}."""
    indices, exponents, cofactors = p_primary_blocks(invariants, p)
    result = {}
    for a, i in enumerate(indices):
        for b, j in enumerate(indices):
            modulus = p ** exponents[b]
            inverse = pow(cofactors[b], -1, modulus)
            result[(a, b)] = (cofactors[a] * matrix[i][j] * inverse) % modulus
    return result


def idempotent_trace_on_classgroup(
    cl: ClassGroup,
    matrices: Sequence[ActionMatrix],
    subgroup_indices: Sequence[int],
    p: int,
    level: int,
) -> int:
    """tr(ε_H) on the level-ν block of Cl(L)_p, reduced mod p^ν.

    Raises:
        UnsupportedError: p divides |H|
    """
    h = len(subgroup_indices)
    if h % p == 0:
        raise UnsupportedError("wild case unsupported", f"p = {p} divides |H| = {h}")
    invariants = cl.structure.invariants
    _, exponents, _ = p_primary_blocks(invariants, p)
    block = [a for a, k in enumerate(exponents) if k == level]
    modulus = p**level
    total = 0
    for g in subgroup_indices:
        action = p_primary_action(matrices[g], invariants, p)
        total += sum(action[(a, a)] for a in block)
    trace = (total * pow(h, -1, modulus)) % modulus
    logger.debug("tr(ε_H) on level %d of Cl_%d: %d", level, p, trace)
    return trace

