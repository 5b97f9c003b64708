"""Result types for asymptotic quantities.

A ValueEstimate is an exact rational, an exact quadratic irrational, a
rational interval, or a signed infinity, together with a convergence status
and a certified flag.  Exact values behave as width-zero intervals, so all
finite estimates expose lo/hi bounds and interval arithmetic composes them
uniformly.  Comparisons between finite estimates return None when enclosures
overlap without both sides being exact: that is the "incomparable at this
horizon" outcome, never silently resolved.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .quadratics import QuadraticIrrational

Exact = Union[Fraction, QuadraticIrrational]

EXACT = "exact"
CONVERGING = "converging"
DIVERGING = "diverging"
UNDECIDED = "undecided"

ARCHIMEDEAN = "archimedean"
NON_ARCHIMEDEAN = "non-archimedean"
UNDECIDED_CLASS = "undecided"

CERTIFIED = "certified"
HEURISTIC = "heuristic"

_ENCLOSURE_BITS = 96


def _exact_bounds(value: Exact) -> tuple[Fraction, Fraction]:
    if isinstance(value, QuadraticIrrational):
        return value.bounds(_ENCLOSURE_BITS)
    f = Fraction(value)
    return f, f


class ValueEstimate:
    """Exact value, interval enclosure, or signed infinity with a status."""

    __slots__ = ("kind", "value", "lo", "hi", "status", "certified")

    RATIONAL = "rational"
    QUADRATIC = "quadratic"
    INTERVAL = "interval"
    PLUS_INFINITY = "+infinity"
    MINUS_INFINITY = "-infinity"

    def __init__(self, kind, value=None, lo=None, hi=None, status=UNDECIDED, certified=False):
        self.kind = kind
        self.value = value
        self.lo = lo
        self.hi = hi
        self.status = status
        self.certified = certified

    # -- constructors ------------------------------------------------------

    @classmethod
    def exact(cls, value: Exact, certified: bool = True, status: str = EXACT) -> "ValueEstimate":
        if isinstance(value, QuadraticIrrational) and not value.is_rational():
            lo, hi = value.bounds(_ENCLOSURE_BITS)
            return cls(cls.QUADRATIC, value, lo, hi, status, certified)
        if isinstance(value, QuadraticIrrational):
            value = value.as_fraction()
        f = Fraction(value)
        return cls(cls.RATIONAL, f, f, f, status, certified)

    @classmethod
    def exact_rational(cls, value, status: str = EXACT, certified: bool = True) -> "ValueEstimate":
        f = Fraction(value)
        return cls(cls.RATIONAL, f, f, f, status, certified)

    @classmethod
    def interval(cls, lo, hi, status: str = CONVERGING, certified: bool = False) -> "ValueEstimate":
        lo, hi = Fraction(lo), Fraction(hi)
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        if lo == hi:
            return cls(cls.RATIONAL, lo, lo, hi, status, certified)
        return cls(cls.INTERVAL, None, lo, hi, status, certified)

    @classmethod
    def plus_infinity(cls, certified: bool = False) -> "ValueEstimate":
        return cls(cls.PLUS_INFINITY, None, None, None, DIVERGING, certified)

    @classmethod
    def minus_infinity(cls, certified: bool = False) -> "ValueEstimate":
        return cls(cls.MINUS_INFINITY, None, None, None, DIVERGING, certified)

    # -- predicates ----------------------------------------------------------

    def is_finite(self) -> bool:
        return self.kind in (self.RATIONAL, self.QUADRATIC, self.INTERVAL)

    def is_exact(self) -> bool:
        return self.kind in (self.RATIONAL, self.QUADRATIC)

    def is_plus_infinity(self) -> bool:
        return self.kind == self.PLUS_INFINITY

    def is_minus_infinity(self) -> bool:
        return self.kind == self.MINUS_INFINITY

    def width(self) -> Fraction:
        if not self.is_finite():
            raise ValueError("infinite estimate has no width")
        return self.hi - self.lo

    def contains(self, value) -> bool:
        if not self.is_finite():
            return False
        if self.is_exact():
            if isinstance(value, QuadraticIrrational):
                return value == self.value if isinstance(self.value, QuadraticIrrational) else (
                    value.is_rational() and value.as_fraction() == self.value
                )
            if isinstance(self.value, QuadraticIrrational):
                return self.value.is_rational() and self.value.as_fraction() == Fraction(value)
            return Fraction(value) == self.value
        lo, hi = _exact_bounds(value) if isinstance(value, QuadraticIrrational) else (
            Fraction(value),
            Fraction(value),
        )
        return self.lo <= lo and hi <= self.hi

    # -- arithmetic ------------------------------------------------------------

    def _exact_value(self) -> Optional[Exact]:
        return self.value if self.is_exact() else None

    def __add__(self, other: "ValueEstimate") -> "ValueEstimate":
        if self.is_plus_infinity() or other.is_plus_infinity():
            if self.is_minus_infinity() or other.is_minus_infinity():
                raise ValueError("cannot add opposite infinities")
            return ValueEstimate.plus_infinity(self.certified and other.certified)
        if self.is_minus_infinity() or other.is_minus_infinity():
            return ValueEstimate.minus_infinity(self.certified and other.certified)
        a, b = self._exact_value(), other._exact_value()
        if a is not None and b is not None:
            status = EXACT if self.status == other.status == EXACT else CONVERGING
            return ValueEstimate.exact(a + b, self.certified and other.certified, status)
        status = UNDECIDED if UNDECIDED in (self.status, other.status) else CONVERGING
        return ValueEstimate.interval(
            self.lo + other.lo, self.hi + other.hi, status, self.certified and other.certified
        )

    def __neg__(self) -> "ValueEstimate":
        if self.is_plus_infinity():
            return ValueEstimate.minus_infinity(self.certified)
        if self.is_minus_infinity():
            return ValueEstimate.plus_infinity(self.certified)
        if self.is_exact():
            return ValueEstimate.exact(-self.value, self.certified, self.status)
        return ValueEstimate.interval(-self.hi, -self.lo, self.status, self.certified)

    def __sub__(self, other: "ValueEstimate") -> "ValueEstimate":
        return self + (-other)

    def scale(self, factor) -> "ValueEstimate":
        f = Fraction(factor)
        if f == 0:
            return ValueEstimate.exact_rational(0)
        if not self.is_finite():
            flipped = (f < 0) != self.is_minus_infinity()
            return (
                ValueEstimate.minus_infinity(self.certified)
                if flipped
                else ValueEstimate.plus_infinity(self.certified)
            )
        if self.is_exact():
            return ValueEstimate.exact(self.value * f, self.certified, self.status)
        lo, hi = sorted((self.lo * f, self.hi * f))
        return ValueEstimate.interval(lo, hi, self.status, self.certified)

    def compare(self, other: "ValueEstimate") -> Optional[int]:
        """-1/0/+1 when the order is decided; None when enclosures overlap."""
        rank = {self.MINUS_INFINITY: -1, self.PLUS_INFINITY: 1}
        if not self.is_finite() or not other.is_finite():
            a = rank.get(self.kind, 0)
            b = rank.get(other.kind, 0)
            if a == b:
                return 0
            return -1 if a < b else 1
        if self.is_exact() and other.is_exact():
            a, b = self.value, other.value
            if isinstance(a, QuadraticIrrational) or isinstance(b, QuadraticIrrational):
                qa = a if isinstance(a, QuadraticIrrational) else QuadraticIrrational.from_fraction(a)
                return qa.compare(b)
            return (a > b) - (a < b)
        if self.hi < other.lo:
            return -1
        if self.lo > other.hi:
            return 1
        return None

    # -- display -----------------------------------------------------------------

    def midpoint_decimal(self, places: int = 10) -> str:
        if not self.is_finite():
            return "+inf" if self.is_plus_infinity() else "-inf"
        mid = (self.lo + self.hi) / 2
        scaled = mid * 10**places
        floor = scaled.numerator // scaled.denominator
        if 2 * (scaled - floor) >= 1:
            floor += 1
        sign = "-" if floor < 0 else ""
        digits = str(abs(floor)).rjust(places + 1, "0")
        return f"{sign}{digits[:-places]}.{digits[-places:]}"

    def __str__(self) -> str:
        if self.kind == self.RATIONAL:
            return f"{self.value} (exact)" if self.status == EXACT else f"{self.value}"
        if self.kind == self.QUADRATIC:
            return f"{self.value} ~ {self.midpoint_decimal()}"
        if self.kind == self.INTERVAL:
            return f"[{self.lo}, {self.hi}] ~ {self.midpoint_decimal()}"
        return "+infinity" if self.kind == self.PLUS_INFINITY else "-infinity"

    def __repr__(self) -> str:
        return (
            f"ValueEstimate(kind={self.kind!r}, value={self.value!r}, lo={self.lo!r}, "
            f"hi={self.hi!r}, status={self.status!r}, certified={self.certified})"
        )


@dataclass(frozen=True)
class EValue:
    """Stabilized transform order, with how much trust it deserves."""

    value: int
    certainty: str  # CERTIFIED or HEURISTIC
    window: int = 0

    @property
    def certified(self) -> bool:
        return self.certainty == CERTIFIED


@dataclass(frozen=True)
class Classification:
    """Archimedean verdict for a sequence, plus the tau evidence behind it."""

    kind: str  # ARCHIMEDEAN / NON_ARCHIMEDEAN / UNDECIDED_CLASS
    certified: bool
    tau: ValueEstimate

    def is_archimedean(self) -> bool:
        return self.kind == ARCHIMEDEAN

    def is_non_archimedean(self) -> bool:
        return self.kind == NON_ARCHIMEDEAN


@dataclass(frozen=True)
class BoundaryValue:
    """Lexicographic boundary-valuation value.

    Archimedean mode pairs the w estimate with minus the stable transform
    order; non-archimedean mode pairs the integer e-ratio with the w estimate
    of the uniformizer-normalized quotient.
    """

    mode: str  # ARCHIMEDEAN or NON_ARCHIMEDEAN
    first: ValueEstimate
    second: ValueEstimate

    def compare(self, other: "BoundaryValue") -> Optional[int]:
        if self.mode != other.mode:
            raise ValueError("cannot compare boundary values of different modes")
        head = self.first.compare(other.first)
        if head is None:
            return None
        if head != 0:
            return head
        return self.second.compare(other.second)

    def as_pair(self) -> tuple:
        return (self.first, self.second)

    def __str__(self) -> str:
        return f"({self.first}, {self.second})"
