"""Exact quarter-integer arithmetic.

The revised Szeged index is a sum of products of two half-integers, so every
value it can take (and every difference against an integer index) has a
denominator dividing 4.  Storing four times the value as a plain Python int
keeps all index computations exact; no floating point is used anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

__all__ = ["QuarterRational"]


@dataclass(frozen=True, order=True)
class QuarterRational:
    """A rational number with denominator dividing 4, stored as 4x the value.

    Python ints are unbounded, so arithmetic never overflows regardless of
    graph size.  Ordering and equality compare exact values.
    """

    quadrupled: int

    @classmethod
    def from_int(cls, value: int) -> "QuarterRational":
        return cls(4 * value)

    @classmethod
    def zero(cls) -> "QuarterRational":
        return cls(0)

    def __add__(self, other: "QuarterRational") -> "QuarterRational":
        return QuarterRational(self.quadrupled + other.quadrupled)

    def __sub__(self, other: "QuarterRational") -> "QuarterRational":
        return QuarterRational(self.quadrupled - other.quadrupled)

    def __neg__(self) -> "QuarterRational":
        return QuarterRational(-self.quadrupled)

    @property
    def is_integer(self) -> bool:
        return self.quadrupled % 4 == 0

    def as_fraction(self) -> Fraction:
        return Fraction(self.quadrupled, 4)

    def fraction_str(self) -> str:
        """Lowest-terms "p/q" form; the denominator is kept even when 1
        (e.g. "125/4", "3636/1") so reports stay schema-stable."""
        g = gcd(abs(self.quadrupled), 4)
        return f"{self.quadrupled // g}/{4 // g}"

    def decimal_str(self) -> str:
        """Exact decimal rendering: "3636", "31.25", "-0.5"."""
        q, r = divmod(abs(self.quadrupled), 4)
        sign = "-" if self.quadrupled < 0 else ""
        suffix = {0: "", 1: ".25", 2: ".5", 3: ".75"}[r]
        return f"{sign}{q}{suffix}"

    def __str__(self) -> str:
        return self.decimal_str()
