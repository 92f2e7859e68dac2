"""Dyadic fixed-point values and bounded-denominator rational reconstruction.

Game values are carried through the iteration as dyadic numbers
``mantissa / 2**precision`` with arbitrary-size integer mantissas, and the
final answers are exact :class:`fractions.Fraction` objects.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

Rational = Fraction


class PrecisionMismatch(ValueError):
    pass


@total_ordering
@dataclass(frozen=True, eq=False)
class Dyadic:
    """The number ``mantissa / 2**precision``.

    Equality, ordering and hashing are by numeric value, so ``Dyadic(1, 1)``
    equals ``Dyadic(2, 2)``.  Mixed-precision comparisons rescale to the
    larger precision.
    """

    mantissa: int
    precision: int

    def __post_init__(self):
        if self.precision < 0:
            raise ValueError("precision must be non-negative")
        if self.mantissa < 0:
            raise ValueError("dyadic values are non-negative")

    @classmethod
    def zero(cls, precision: int = 0) -> Dyadic:
        return cls(0, precision)

    @classmethod
    def one(cls, precision: int = 0) -> Dyadic:
        return cls(1 << precision, precision)

    @classmethod
    def floor_of(cls, x, precision: int) -> Dyadic:
        """Round a non-negative rational ``x`` down to ``precision`` bits."""
        x = Fraction(x)
        return cls((x.numerator << precision) // x.denominator, precision)

    def at(self, precision: int) -> Dyadic:
        """Rescale to a higher precision without loss."""
        if precision < self.precision:
            raise PrecisionMismatch(
                f"cannot lower precision {self.precision} -> {precision} exactly")
        return Dyadic(self.mantissa << (precision - self.precision), precision)

    def _aligned(self, other: Dyadic) -> tuple[int, int]:
        p = max(self.precision, other.precision)
        return (self.mantissa << (p - self.precision),
                other.mantissa << (p - other.precision))

    def __eq__(self, other):
        if isinstance(other, Dyadic):
            a, b = self._aligned(other)
            return a == b
        if isinstance(other, (int, Fraction)):
            return self.to_fraction() == other
        return NotImplemented

    def __lt__(self, other):
        if isinstance(other, Dyadic):
            a, b = self._aligned(other)
            return a < b
        if isinstance(other, (int, Fraction)):
            return self.to_fraction() < other
        return NotImplemented

    def __hash__(self):
        return hash(self.to_fraction())

    def to_fraction(self) -> Fraction:
        return Fraction(self.mantissa, 1 << self.precision)

    def __float__(self):
        return self.mantissa / (1 << self.precision) if self.precision < 1000 \
            else float(self.to_fraction())

    def __str__(self):
        return f"{self.mantissa}p{self.precision}"

    __repr__ = __str__


def as_fraction(x) -> Fraction:
    return x.to_fraction() if isinstance(x, Dyadic) else Fraction(x)


def _check_same(a: Dyadic, b: Dyadic) -> int:
    if a.precision != b.precision:
        raise PrecisionMismatch(
            f"operands at precision {a.precision} and {b.precision}")
    return a.precision


def avg_floor(a: Dyadic, b: Dyadic) -> Dyadic:
    """Average of ``a`` and ``b`` rounded down to their shared precision."""
    p = _check_same(a, b)
    return Dyadic((a.mantissa + b.mantissa) >> 1, p)


def exact_avg(a: Dyadic, b: Dyadic) -> Dyadic:
    """Exact average; the result carries one extra bit of precision."""
    p = _check_same(a, b)
    return Dyadic(a.mantissa + b.mantissa, p + 1)


def min_rational_geq(v, q: int) -> Fraction:
    """Smallest fraction ``a/b >= v`` with ``1 <= b <= q``.

    ``v`` may be a :class:`Dyadic`, ``Fraction`` or ``int`` in ``[0, 1]``.
    Walks the Stern-Brocot tree toward ``v`` taking whole runs of
    same-direction steps at once, so the cost is O(log q) big-integer
    operations.  When the next step on either side would need a denominator
    above ``q``, the current upper bound is the answer: every fraction
    strictly between two Stern-Brocot neighbours ``a/b < c/d`` has a
    denominator of at least ``b + d``.
    """
    if q < 1:
        raise ValueError("denominator bound must be >= 1")
    x = as_fraction(v)
    if x < 0 or x > 1:
        raise ValueError(f"value {x} outside [0, 1]")
    if x.denominator <= q:
        return x
    n, m = x.numerator, x.denominator
    # invariant: a/b < x < c/d, with c/d = 1/0 standing for +infinity
    a, b, c, d = 0, 1, 1, 0
    while True:
        # largest k with (a + k c) / (b + k d) < x
        gap_lo = n * b - a * m
        gap_hi = c * m - n * d
        k = (gap_lo - 1) // gap_hi
        if d:
            cap = (q - b) // d
            if k >= cap:
                return Fraction(c, d)
        a, b = a + k * c, b + k * d

        # largest k with (c + k a) / (d + k b) > x
        gap_lo = n * b - a * m
        gap_hi = c * m - n * d
        k = (gap_hi - 1) // gap_lo
        cap = (q - d) // b
        if k >= cap:
            c, d = c + cap * a, d + cap * b
            return Fraction(c, d)
        c, d = c + k * a, d + k * b


def format_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    num, _, den = text.partition("/")
    return Fraction(int(num), int(den or 1))
