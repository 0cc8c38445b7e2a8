"""
Reduced binary quadratic forms: an independent count of h(D) for D < 0.
"""

from dataclasses import dataclass
from math import gcd, isqrt
from typing import List

from galrel.errors import InputError


@dataclass(frozen=True)
class BinaryQF:
    """a·x² + b·xy + c·y²."""

    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_primitive(self) -> bool:
        return gcd(gcd(self.a, self.b), self.c) == 1

    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if not abs(b) <= a <= c:
            return False
        return b >= 0 if (abs(b) == a or a == c) else True

    def normalize(self) -> "BinaryQF":
        a, b, c = self.a, self.b, self.c
        r = (a - b) // (2 * a)
        return BinaryQF(a, b + 2 * r * a, a * r * r + b * r + c)

    def reduced_form(self) -> "BinaryQF":
        form = self.normalize()
        a, b, c = form.a, form.b, form.c
        while not (a < c or (a == c and b >= 0)):
            s = (c + b) // (2 * c)
            a, b, c = c, -b + 2 * s * c, c * s * s - b * s + a
        return BinaryQF(a, b, c)

    def __str__(self) -> str:
        return f"{self.a}x^2 + {self.b}xy + {self.c}y^2"


def reduced_forms(disc: int) -> List[BinaryQF]:
    """All primitive reduced positive definite forms of discriminant D < 0."""
    if disc >= 0 or disc % 4 not in (0, 1):
        raise InputError(f"{disc} is not a negative discriminant", "D")
    forms = []
    # reduced forms have a ≤ sqrt(|D|/3)
    for a in range(1, isqrt(-disc // 3) + 1):
        for b in range(-a + 1, a + 1):
            if (b * b - disc) % (4 * a):
                continue
            c = (b * b - disc) // (4 * a)
            form = BinaryQF(a, b, c)
            if form.is_reduced() and form.is_primitive():
                forms.append(form)
    return forms


def class_number_quadratic_forms(disc: int) -> int:
    """h(D) as the number of reduced forms of discriminant D < 0."""
    return len(reduced_forms(disc))
