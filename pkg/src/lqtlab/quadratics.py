"""Exact arithmetic in real quadratic fields.

A value is (p + q*sqrt(D)) / r with integer p, q, positive integer r and
positive squarefree D.  Square parts of D are absorbed into q on
construction and gcd(p, q, r) = 1, so representations are canonical and
equality is structural.  Floors and comparisons are exact: the sign of
p + q*sqrt(D) is decided by comparing p^2 against q^2 D, and
floor(q*sqrt(D)) = isqrt(q^2 D) for positive q because sqrt(D) is irrational.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

from .errors import ParseError


def _squarefree_split(n: int) -> tuple[int, int]:
    """n = square * squarefree; returns (sqrt(square), squarefree)."""
    if n <= 0:
        raise ValueError("radicand must be positive")
    square_root, rest = 1, 1
    d = 2
    while d * d <= n:
        exp = 0
        while n % d == 0:
            n //= d
            exp += 1
        square_root *= d ** (exp // 2)
        if exp % 2:
            rest *= d
        d += 1
    return square_root, rest * n


class QuadraticIrrational:
    """Exact element (p + q*sqrt(D))/r of a real quadratic field."""

    __slots__ = ("p", "q", "D", "r")

    def __init__(self, p: int, q: int, D: int, r: int = 1):
        if r == 0:
            raise ZeroDivisionError("zero denominator")
        if r < 0:
            p, q, r = -p, -q, -r
        if q:
            square, rest = _squarefree_split(D)
            q *= square
            D = rest
            if D == 1:
                p, q = p + q, 0
        if q == 0:
            D = 1
        g = gcd(gcd(abs(p), abs(q)), r)
        if g > 1:
            p, q, r = p // g, q // g, r // g
        self.p, self.q, self.D, self.r = p, q, D, r

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_fraction(cls, value) -> "QuadraticIrrational":
        f = Fraction(value)
        return cls(f.numerator, 0, 1, f.denominator)

    @classmethod
    def sqrt_of(cls, n: int) -> "QuadraticIrrational":
        return cls(0, 1, n)

    # -- predicates ---------------------------------------------------------

    def is_rational(self) -> bool:
        return self.q == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return Fraction(self.p, self.r)

    # -- coercion helpers ----------------------------------------------------

    def _coerce(self, other) -> "QuadraticIrrational":
        if isinstance(other, QuadraticIrrational):
            if self.q and other.q and self.D != other.D:
                raise ValueError(f"incompatible radicands {self.D} and {other.D}")
            return other
        return QuadraticIrrational.from_fraction(other)

    def _field_d(self, other: "QuadraticIrrational") -> int:
        return self.D if self.q else other.D

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        D = self._field_d(other)
        return QuadraticIrrational(
            self.p * other.r + other.p * self.r,
            self.q * other.r + other.q * self.r,
            D,
            self.r * other.r,
        )

    __radd__ = __add__

    def __neg__(self):
        return QuadraticIrrational(-self.p, -self.q, self.D, self.r)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        D = self._field_d(other)
        return QuadraticIrrational(
            self.p * other.p + self.q * other.q * D,
            self.p * other.q + self.q * other.p,
            D,
            self.r * other.r,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.p == 0 and other.q == 0:
            raise ZeroDivisionError("division by zero")
        D = self._field_d(other)
        # 1/((p + q sqrt D)/r) = r (p - q sqrt D) / (p^2 - q^2 D)
        norm = other.p * other.p - other.q * other.q * D
        inverse = QuadraticIrrational(other.r * other.p, -other.r * other.q, D, norm)
        return self * inverse

    def __rtruediv__(self, other):
        return QuadraticIrrational.from_fraction(other) / self

    def __pow__(self, n: int) -> "QuadraticIrrational":
        if n < 0:
            return QuadraticIrrational.from_fraction(1) / (self ** (-n))
        result = QuadraticIrrational.from_fraction(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- order ---------------------------------------------------------------

    def sign(self) -> int:
        if self.q == 0:
            return (self.p > 0) - (self.p < 0)
        if self.p == 0:
            return 1 if self.q > 0 else -1
        if self.p > 0 and self.q > 0:
            return 1
        if self.p < 0 and self.q < 0:
            return -1
        # mixed signs: compare |p| against |q| sqrt(D); equality is impossible
        if self.p * self.p > self.q * self.q * self.D:
            return 1 if self.p > 0 else -1
        return 1 if self.q > 0 else -1

    def compare(self, other) -> int:
        return (self - other).sign()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = QuadraticIrrational.from_fraction(other)
        if not isinstance(other, QuadraticIrrational):
            return NotImplemented
        if self.q and other.q and self.D != other.D:
            return False
        return (self.p, self.q, self.r) == (other.p, other.q, other.r) and (
            self.q == 0 or self.D == other.D
        )

    def __hash__(self):
        return hash((self.p, self.q, self.D, self.r))

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def floor(self) -> int:
        if self.q == 0:
            return self.p // self.r
        if self.q > 0:
            numerator_floor = self.p + isqrt(self.q * self.q * self.D)
        else:
            numerator_floor = self.p - isqrt(self.q * self.q * self.D) - 1
        # p + q sqrt(D) is irrational, so no integer sits between it and its floor
        return numerator_floor // self.r

    def fractional_part(self) -> "QuadraticIrrational":
        return self - self.floor()

    # -- approximation ---------------------------------------------------------

    def bounds(self, scale_bits: int = 64) -> tuple[Fraction, Fraction]:
        """Rigorous rational enclosure with width below q/2^scale_bits roughly."""
        if self.q == 0:
            exact = Fraction(self.p, self.r)
            return exact, exact
        shift = 1 << scale_bits
        root_lo = isqrt(self.D * shift * shift)  # root_lo <= sqrt(D)*shift < root_lo+1
        lo_num, hi_num = root_lo, root_lo + 1
        if self.q > 0:
            lo = Fraction(self.p * shift + self.q * lo_num, self.r * shift)
            hi = Fraction(self.p * shift + self.q * hi_num, self.r * shift)
        else:
            lo = Fraction(self.p * shift + self.q * hi_num, self.r * shift)
            hi = Fraction(self.p * shift + self.q * lo_num, self.r * shift)
        return lo, hi

    def __float__(self) -> float:
        lo, hi = self.bounds(80)
        return float((lo + hi) / 2)

    def __str__(self) -> str:
        if self.q == 0:
            return str(Fraction(self.p, self.r))
        if self.q == 1:
            radical = f"sqrt({self.D})"
        elif self.q == -1:
            radical = f"-sqrt({self.D})"
        else:
            radical = f"{self.q}*sqrt({self.D})"
        if self.p == 0:
            body = radical
        elif self.q > 0:
            body = f"{self.p}+{radical}"
        else:
            body = f"{self.p}{radical}"
        if self.r == 1:
            return body if (self.p == 0 or "+" not in body and body.count("-") <= 1) else f"({body})"
        return f"({body})/{self.r}"

    def __repr__(self) -> str:
        return f"QuadraticIrrational({self.p}, {self.q}, {self.D}, {self.r})"


def parse_sigma(text: str) -> QuadraticIrrational:
    """Parse sigma syntax: "sqrt(8)", "(1+sqrt(5))/2", "(0+2*sqrt(2))/1"."""
    s = text.replace(" ", "")
    if not s:
        raise ParseError("empty sigma expression")
    r = 1
    if not s.startswith("(") and "/" in s:
        body, _, den = s.rpartition("/")
        if not den.isdigit() or int(den) == 0:
            raise ParseError(f"bad denominator {den!r}")
        if "/" in body:
            raise ParseError(f"multiple denominators in {text!r}")
        s, r = body, int(den)
    if s.startswith("("):
        depth, idx = 0, 0
        for idx, ch in enumerate(s):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
                if depth == 0:
                    break
        if depth != 0:
            raise ParseError(f"unbalanced parentheses in {text!r}")
        body, rest = s[1:idx], s[idx + 1 :]
        if rest:
            if not rest.startswith("/"):
                raise ParseError(f"expected '/denominator' after {body!r}")
            den = rest[1:]
            if not den.isdigit() or int(den) == 0:
                raise ParseError(f"bad denominator {den!r}")
            r = int(den)
        s = body
    p, q, D = 0, 0, 1
    pos = 0
    while pos < len(s):
        sign = 1
        while pos < len(s) and s[pos] in "+-":
            if s[pos] == "-":
                sign = -sign
            pos += 1
        start = pos
        while pos < len(s) and s[pos].isdigit():
            pos += 1
        coeff = int(s[start:pos]) if pos > start else 1
        if pos < len(s) and s[pos] == "*":
            pos += 1
        if s.startswith("sqrt(", pos):
            close = s.find(")", pos)
            if close < 0:
                raise ParseError(f"unterminated sqrt in {text!r}")
            radicand = s[pos + 5 : close]
            if not radicand.isdigit() or int(radicand) <= 0:
                raise ParseError(f"bad radicand {radicand!r}")
            if D != 1 and D != int(radicand):
                raise ParseError("mixed radicands in sigma expression")
            q += sign * coeff
            D = int(radicand)
            pos = close + 1
        else:
            if pos == start:
                raise ParseError(f"cannot parse sigma near {s[pos:]!r}")
            p += sign * coeff
    return QuadraticIrrational(p, q, D, r)
