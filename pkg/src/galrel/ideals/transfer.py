"""
Transfer identities between L^H and L on class groups and roots of unity:
N∘ι = |H| on the subfield and ι∘N = Σ_{h∈H} h on L.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import sympy

from galrel.fields.number_field import FieldElement
from galrel.fields.subfields import SubfieldData
from galrel.fields.torsion import torsion_units
from galrel.ideals.class_group import ClassGroup
from galrel.ideals.ideal import extend_ideal, relative_norm_ideal

logger = logging.getLogger(__name__)

NORM_AFTER_EXTENSION = "N∘ι = |H|"
EXTENSION_AFTER_NORM = "ι∘N = Σh"


@dataclass(frozen=True)
class TransferRow:
    """Outcome of one transfer identity on the p-part of one object."""

    subject: str
    identity: str
    p: int
    passed: Optional[bool]
    note: str = ""


def _p_part_equal(
    x: Sequence[int], y: Sequence[int], invariants: Sequence[int], p: int
) -> bool:
    for a, b, d in zip(x, y, invariants):
        k = sympy.multiplicity(p, d)
        if (a - b) % (p**k):
            return False
    return True


def _scaled(x: Sequence[int], k: int, invariants: Sequence[int]) -> Tuple[int, ...]:
    return tuple((k * a) % d for a, d in zip(x, invariants))


def _class_rows(
    subject: str,
    identity: str,
    pairs: List[Tuple[Tuple[int, ...], Tuple[int, ...]]],
    invariants: Sequence[int],
    primes: Sequence[int],
    h: int,
) -> List[TransferRow]:
    rows = []
    for p in primes:
        if h % p == 0:
            rows.append(
                TransferRow(subject, identity, p, None, "wild: p divides |H|")
            )
            continue
        ok = all(_p_part_equal(a, b, invariants, p) for a, b in pairs)
        rows.append(TransferRow(subject, identity, p, ok))
    return rows


def _root_of_unity_p_part_trivial(d: FieldElement, w: int, p: int) -> bool:
    prime_to_p = w // p ** sympy.multiplicity(p, w)
    return (d**prime_to_p).is_one()


def transfer_check(
    sub: SubfieldData,
    cl_top: Optional[ClassGroup] = None,
    cl_sub: Optional[ClassGroup] = None,
    primes: Optional[Sequence[int]] = None,
) -> List[TransferRow]:
    """Check both transfer identities prime by prime.

    Class groups are optional; without them only roots of unity are checked.
    Primes dividing |H| are reported as wild and not evaluated.
    """
    h = len(sub.subgroup)
    rows: List[TransferRow] = []
    w_top, zeta_top = torsion_units(sub.ambient)
    w_sub, zeta_sub = torsion_units(sub.field)
    orders = [w_top, w_sub]
    if cl_top is not None:
        orders.append(cl_top.order)
    if cl_sub is not None:
        orders.append(cl_sub.order)
    candidates = (
        sorted(primes)
        if primes is not None
        else sorted({p for n in orders for p in sympy.primefactors(n)})
    )

    if cl_sub is not None and cl_top is not None:
        inv = cl_sub.structure.invariants
        pairs = []
        for i, g in enumerate(cl_sub.generators):
            image = cl_sub.class_of(relative_norm_ideal(sub, extend_ideal(sub, g)))
            unit = tuple(int(i == j) for j in range(len(inv)))
            pairs.append((image, _scaled(unit, h, inv)))
        relevant = [p for p in candidates if cl_sub.order % p == 0]
        rows += _class_rows(
            f"Cl({sub.field.name})", NORM_AFTER_EXTENSION, pairs, inv, relevant, h
        )

        inv = cl_top.structure.invariants
        pairs = []
        for g in cl_top.generators:
            image = cl_top.class_of(extend_ideal(sub, relative_norm_ideal(sub, g)))
            total = [0] * len(inv)
            for sigma in sub.subgroup:
                image_class = cl_top.class_of(g.apply(sigma))
                total = [a + b for a, b in zip(total, image_class)]
            pairs.append((image, tuple(a % d for a, d in zip(total, inv))))
        relevant = [p for p in candidates if cl_top.order % p == 0]
        rows += _class_rows(
            f"Cl({sub.ambient.name})", EXTENSION_AFTER_NORM, pairs, inv, relevant, h
        )

    norm_of_sub = sub.relative_norm(sub.include(zeta_sub))
    expected_sub = zeta_sub**h
    ratio_sub = norm_of_sub / expected_sub
    product = sub.ambient.one()
    for sigma in sub.subgroup:
        product = product * sigma.apply(zeta_top)
    ratio_top = sub.include(sub.relative_norm(zeta_top)) / product
    for subject, identity, ratio, w in (
        (f"mu({sub.field.name})", NORM_AFTER_EXTENSION, ratio_sub, w_sub),
        (f"mu({sub.ambient.name})", EXTENSION_AFTER_NORM, ratio_top, w_top),
    ):
        for p in candidates:
            if w % p:
                continue
            if h % p == 0:
                rows.append(
                    TransferRow(subject, identity, p, None, "wild: p divides |H|")
                )
                continue
            ok = _root_of_unity_p_part_trivial(ratio, w, p)
            rows.append(TransferRow(subject, identity, p, ok))
    failed = [r for r in rows if r.passed is False]
    logger.info(
        "Transfer check for %s in %s: %d rows, %d failed",
        sub.field.name,
        sub.ambient.name,
        len(rows),
        len(failed),
    )
    return rows
