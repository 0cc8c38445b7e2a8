"""
Finite groups as multiplication tables, and their subgroups.

Named families and permutation generators are closed with
sympy.combinatorics; every group is then stored as a Cayley table on
indices 0..n-1 with the identity at index 0.
"""

import logging
import re
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Dict, FrozenSet, List, Optional, Sequence, Tuple, Union

from sympy.combinatorics import Permutation, PermutationGroup
from sympy.combinatorics.named_groups import (
    AbelianGroup,
    AlternatingGroup,
    CyclicGroup,
    DihedralGroup,
    SymmetricGroup,
)

from galrel.config.settings import app_settings
from galrel.errors import GroupAxiomError, InputError, UnsupportedError

logger = logging.getLogger(__name__)

GroupSpec = Union[str, Dict[str, object]]


@dataclass(frozen=True)
class FiniteGroup:
    """Group on indices 0..n-1 with table[a][b] = a·b and identity 0."""

    table: Tuple[Tuple[int, ...], ...]
    labels: Tuple[str, ...]
    name: str = "G"
    inverses: Tuple[int, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        if not self.inverses:
            inv = tuple(
                next(b for b in range(self.order) if self.table[a][b] == 0)
                for a in range(self.order)
            )
            object.__setattr__(self, "inverses", inv)

    @classmethod
    def from_table(
        cls,
        table: Sequence[Sequence[int]],
        labels: Optional[Sequence[str]] = None,
        name: str = "G",
    ) -> "FiniteGroup":
        """Builds a group from a Cayley table, checking the axioms.

        Raises:
            GroupAxiomError: identity at 0, inverses or associativity fail
        """
        n = len(table)
        if n > app_settings.search.MAX_GROUP_ORDER:
            raise UnsupportedError("Group too large", f"order {n}")
        rows = tuple(tuple(int(x) for x in row) for row in table)
        if any(len(row) != n or sorted(row) != list(range(n)) for row in rows):
            raise GroupAxiomError("Table rows must be permutations of the elements")
        if rows[0] != tuple(range(n)) or any(rows[a][0] != a for a in range(n)):
            raise GroupAxiomError("Element 0 is not the identity")
        for a, b, c in product(range(n), repeat=3):
            if rows[rows[a][b]][c] != rows[a][rows[b][c]]:
                raise GroupAxiomError(f"Associativity fails at ({a}, {b}, {c})")
        names = tuple(labels) if labels else tuple(str(i) for i in range(n))
        return cls(rows, names, name)

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def identity(self) -> int:
        return 0

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inverse(self, a: int) -> int:
        return self.inverses[a]

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.table[x][a]
            k += 1
        return k

    def exponent(self) -> int:
        from math import lcm

        result = 1
        for a in range(self.order):
            result = lcm(result, self.element_order(a))
        return result

    def is_abelian(self) -> bool:
        return all(
            self.table[a][b] == self.table[b][a]
            for a in range(self.order)
            for b in range(a)
        )

    def generated(self, gens: Sequence[int]) -> FrozenSet[int]:
        """Subgroup generated by ``gens`` as a set of indices."""
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.table[x][g]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)


@dataclass(frozen=True)
class Subgroup:
    """Subgroup of ``group`` given by its sorted element indices."""

    group: FiniteGroup = field(repr=False)
    elements: Tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def index(self) -> int:
        return self.group.order // self.order

    def __contains__(self, a: int) -> bool:
        return a in self.elements

    def is_trivial(self) -> bool:
        return self.elements == (0,)

    def is_whole(self) -> bool:
        return self.order == self.group.order

    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        return (self.order, self.elements)

    def label(self) -> str:
        if self.is_trivial():
            return "1"
        if self.is_whole():
            return "G"
        return "<" + ",".join(self.group.labels[a] for a in self.elements) + ">"


def make_subgroup(group: FiniteGroup, elements: Sequence[int]) -> Subgroup:
    """Validates that ``elements`` form a subgroup.

    Raises:
        GroupAxiomError: not closed, or missing identity
    """
    members = frozenset(elements)
    if 0 not in members:
        raise GroupAxiomError("Subgroup must contain the identity")
    for a in members:
        if group.inverse(a) not in members:
            raise GroupAxiomError("Subgroup not closed under inverses")
        for b in members:
            if group.mul(a, b) not in members:
                raise GroupAxiomError("Subgroup not closed under multiplication")
    return Subgroup(group, tuple(sorted(members)))


def subgroups(group: FiniteGroup) -> List[Subgroup]:
    """All subgroups, ordered by (order, sorted elements).

    Cyclic subgroups seed the search; joins with cyclic subgroups are added
    until nothing new appears. Conjugate subgroups stay distinct.
    """
    cyclic: Dict[FrozenSet[int], int] = {}
    for a in range(group.order):
        cyclic.setdefault(group.generated([a]), a)

    found: Dict[FrozenSet[int], Tuple[int, ...]] = {
        members: (gen,) for members, gen in cyclic.items()
    }
    frontier = list(found)
    while frontier:
        nxt = []
        for members in frontier:
            gens = found[members]
            for cyc, g in cyclic.items():
                if cyc <= members:
                    continue
                joined = group.generated(gens + (g,))
                if joined not in found:
                    found[joined] = gens + (g,)
                    nxt.append(joined)
        frontier = nxt

    result = [Subgroup(group, tuple(sorted(m))) for m in found]
    result.sort(key=Subgroup.sort_key)
    logger.debug("Group %s has %d subgroups", group.name, len(result))
    return result


# ---------------------------------------------------------------------
# Construction from specs
# ---------------------------------------------------------------------

_CYCLE = re.compile(r"\(([^()]*)\)")


def _quaternion_group() -> PermutationGroup:
    units = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
    elements = [tuple(s * x for x in u) for u in units for s in (1, -1)]

    def hamilton(p: Tuple[int, ...], q: Tuple[int, ...]) -> Tuple[int, ...]:
        a1, b1, c1, d1 = p
        a2, b2, c2, d2 = q
        return (
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    def left_mult(g: Tuple[int, ...]) -> Permutation:
        return Permutation([elements.index(hamilton(g, x)) for x in elements])

    return PermutationGroup([left_mult(elements[2]), left_mult(elements[4])])


def parse_permutations(text: str, degree: Optional[int] = None) -> List[Permutation]:
    """Parses ';'-separated permutations in 1-based cycle notation.

    Example: "(1 2)(3 4);(1 2 3)".

    Raises:
        InputError: malformed cycles or degree above the configured maximum
    """
    perms = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        if _CYCLE.sub("", chunk).strip():
            raise InputError(f"Malformed permutation '{chunk}'", "group")
        cycles = []
        for body in _CYCLE.findall(chunk):
            try:
                points = [int(x) - 1 for x in body.replace(",", " ").split()]
            except ValueError as e:
                raise InputError(f"Malformed cycle '({body})'", "group") from e
            if any(x < 0 for x in points) or len(set(points)) != len(points):
                raise InputError(f"Malformed cycle '({body})'", "group")
            if points:
                cycles.append(points)
        perms.append(cycles)
    size = max([x + 1 for cycles in perms for c in cycles for x in c] + [degree or 1])
    if size > app_settings.search.MAX_PERMUTATION_DEGREE:
        raise UnsupportedError("Permutation degree too large", f"degree {size}")
    return [Permutation(cycles, size=size) for cycles in perms]


def _named_group(name: str) -> Optional[PermutationGroup]:
    key = name.replace(" ", "").upper()
    if key in ("V4", "KLEIN"):
        key = "C2XC2"
    families: Dict[str, Callable[[int], PermutationGroup]] = {
        "C": CyclicGroup,
        "D": DihedralGroup,
        "S": SymmetricGroup,
        "A": AlternatingGroup,
    }
    if key == "Q8":
        return _quaternion_group()
    if re.fullmatch(r"C\d+(XC\d+)+", key):
        return AbelianGroup(*[int(x) for x in key[1:].split("XC")])
    match = re.fullmatch(r"([CDSA])(\d+)", key)
    if not match:
        return None
    kind, n = match.group(1), int(match.group(2))
    if n < 1 or (kind == "D" and n < 2) or (kind in "SA" and n > 5):
        raise UnsupportedError("Unsupported group", name)
    if kind == "C" and n == 1:
        return PermutationGroup([Permutation([0])])
    return families[kind](n)


def _cycle_label(p: Permutation) -> str:
    return "".join(
        "(" + " ".join(str(x + 1) for x in cycle) + ")" for cycle in p.cyclic_form
    )


def group_from_permutations(perm_group: PermutationGroup, name: str) -> FiniteGroup:
    """Cayley table of a sympy permutation group; table[a][b] is a∘b."""
    order = int(perm_group.order())
    if order > app_settings.search.MAX_GROUP_ORDER:
        raise UnsupportedError("Group too large", f"order {order}")
    identity = Permutation(list(range(perm_group.degree)))
    others = sorted(
        (p for p in perm_group.generate() if p != identity),
        key=lambda p: p.array_form,
    )
    elements = [identity] + others
    index = {tuple(p.array_form): i for i, p in enumerate(elements)}
    # sympy multiplies left to right: (p*q)(x) = q(p(x))
    table = [[index[tuple((b * a).array_form)] for b in elements] for a in elements]
    labels = ["1"] + [_cycle_label(p) for p in others]
    return FiniteGroup.from_table(table, labels, name)


def build_group(spec: GroupSpec) -> FiniteGroup:
    """Builds a group from a named family or permutation generators.

    Accepted names: C<n>, C<a>xC<b>..., V4, D<n> (order 2n), S<n>, A<n>, Q8.
    Generators are given in cycle notation, e.g. "(1 2);(1 2 3)", or as a
    dict {"generators": "...", "degree": n}.

    Raises:
        InputError: unparsable spec
        UnsupportedError: order or degree beyond the configured limits
    """
    if isinstance(spec, dict):
        gens_text = spec.get("generators")
        if not isinstance(gens_text, str):
            raise InputError("Group spec needs a 'generators' string", "group")
        degree = spec.get("degree")
        perms = parse_permutations(gens_text, int(degree) if degree else None)
        name = str(spec.get("name", gens_text))
        return group_from_permutations(PermutationGroup(perms), name)

    text = spec.strip()
    if "(" in text:
        return group_from_permutations(PermutationGroup(parse_permutations(text)), text)
    named = _named_group(text)
    if named is None:
        raise InputError(f"Unknown group '{spec}'", "group")
    return group_from_permutations(named, text)
