"""Sparse multivariate polynomials over the rationals.

A polynomial is a finite map from exponent tuples to nonzero Fraction
coefficients; the empty map is zero.  Coefficients are exact, so the order of
an element (its minimum total degree) is exactly the order function of the
localized ring at the origin: every nonzero coefficient is a unit there.

Text syntax, used by the CLI and config files:

    x^3*y^2 + y^5 - 1/2*x

Coefficients are integers or integer fractions, variables are referenced by
their declared names, ``^`` denotes powers and ``*`` separates factors.
Parentheses are allowed for grouping.  Whitespace is ignored.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DimensionMismatchError, NotDivisibleError, ParseError

INFINITY = float("inf")

Exponent = tuple  # tuple[int, ...], one entry per variable


class Polynomial:
    """Immutable sparse polynomial in ``dim`` variables."""

    __slots__ = ("dim", "_terms", "_hash")

    def __init__(self, dim: int, terms: Mapping[Exponent, Fraction] | None = None):
        if dim < 1:
            raise DimensionMismatchError(f"dimension must be >= 1, got {dim}")
        clean: dict[Exponent, Fraction] = {}
        for exps, coeff in (terms or {}).items():
            c = Fraction(coeff)
            if c == 0:
                continue
            key = tuple(int(e) for e in exps)
            if len(key) != dim:
                raise DimensionMismatchError(
                    f"monomial {key} has {len(key)} exponents, expected {dim}"
                )
            if any(e < 0 for e in key):
                raise ValueError(f"negative exponent in monomial {key}")
            clean[key] = c
        self.dim = dim
        self._terms = clean
        self._hash: int | None = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def _raw(cls, dim: int, terms: dict) -> "Polynomial":
        """Internal constructor for already-normalized term dicts (no checks)."""
        poly = object.__new__(cls)
        poly.dim = dim
        poly._terms = terms
        poly._hash = None
        return poly

    @classmethod
    def zero(cls, dim: int) -> "Polynomial":
        return cls(dim, {})

    @classmethod
    def constant(cls, dim: int, value) -> "Polynomial":
        return cls(dim, {(0,) * dim: Fraction(value)})

    @classmethod
    def variable(cls, dim: int, index: int) -> "Polynomial":
        if not 0 <= index < dim:
            raise DimensionMismatchError(f"variable index {index} out of range for dim {dim}")
        exps = [0] * dim
        exps[index] = 1
        return cls(dim, {tuple(exps): Fraction(1)})

    @classmethod
    def monomial(cls, dim: int, exps: Sequence[int], coeff=1) -> "Polynomial":
        return cls(dim, {tuple(exps): Fraction(coeff)})

    # -- inspection --------------------------------------------------------

    def items(self) -> Iterable[tuple[Exponent, Fraction]]:
        return self._terms.items()

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def is_unit(self) -> bool:
        """True when the element is invertible at the origin (nonzero constant term)."""
        return (0,) * self.dim in self._terms

    def term_count(self) -> int:
        return len(self._terms)

    def order(self):
        """Minimum total degree over the terms; INFINITY for the zero polynomial."""
        if not self._terms:
            return INFINITY
        return min(sum(exps) for exps in self._terms)

    def total_degree(self):
        if not self._terms:
            return -1
        return max(sum(exps) for exps in self._terms)

    def support_variables(self) -> set:
        used = set()
        for exps in self._terms:
            for i, e in enumerate(exps):
                if e:
                    used.add(i)
        return used

    def single_term(self) -> tuple[Exponent, Fraction] | None:
        """The (exponents, coefficient) pair if the polynomial has exactly one term."""
        if len(self._terms) == 1:
            return next(iter(self._terms.items()))
        return None

    # -- ring operations ---------------------------------------------------

    def _check_dim(self, other: "Polynomial") -> None:
        if self.dim != other.dim:
            raise DimensionMismatchError(f"dimension {self.dim} vs {other.dim}")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check_dim(other)
        terms = dict(self._terms)
        for exps, coeff in other._terms.items():
            acc = terms.get(exps)
            acc = coeff if acc is None else acc + coeff
            if acc:
                terms[exps] = acc
            else:
                terms.pop(exps, None)
        return Polynomial._raw(self.dim, terms)

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.dim, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check_dim(other)
        if not self._terms or not other._terms:
            return Polynomial.zero(self.dim)
        terms: dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                acc = terms.get(key)
                acc = c1 * c2 if acc is None else acc + c1 * c2
                if acc:
                    terms[key] = acc
                else:
                    terms.pop(key, None)
        return Polynomial._raw(self.dim, terms)

    __rmul__ = __mul__

    def scale(self, factor) -> "Polynomial":
        f = Fraction(factor)
        if f == 0:
            return Polynomial.zero(self.dim)
        return Polynomial._raw(self.dim, {e: c * f for e, c in self._terms.items()})

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        if n == 0:
            return Polynomial.constant(self.dim, 1)
        single = self.single_term()
        if single is not None:
            exps, coeff = single
            return Polynomial._raw(self.dim, {tuple(e * n for e in exps): coeff**n})
        result = None
        base = self
        k = n
        while k:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.dim == other.dim
            and self._terms == other._terms
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.dim, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"Polynomial({self.dim}, {format_polynomial(self)!r})"

    def truncate(self, max_degree: int) -> "Polynomial":
        """Drop all terms of total degree above ``max_degree``."""
        return Polynomial._raw(
            self.dim, {e: c for e, c in self._terms.items() if sum(e) <= max_degree}
        )


def substitute(
    f: Polynomial, images: Sequence[Polynomial], max_degree: int | None = None
) -> Polynomial:
    """Replace variable i by images[i] everywhere in f, fully expanded.

    Substitution is a ring homomorphism, so it distributes over + and *.
    When ``max_degree`` is given and every image has positive order, terms of
    total degree above the cut cannot influence lower-degree output terms and
    are dropped as they appear.
    """
    if len(images) != f.dim:
        raise DimensionMismatchError(f"{len(images)} images for {f.dim} variables")
    dim_out = images[0].dim
    for g in images:
        if g.dim != dim_out:
            raise DimensionMismatchError("images live in different rings")
    power_cache: list[dict[int, Polynomial]] = [{} for _ in range(f.dim)]

    def image_power(i: int, n: int) -> Polynomial:
        cached = power_cache[i].get(n)
        if cached is None:
            cached = _power(images[i], n, max_degree)
            power_cache[i][n] = cached
        return cached

    acc: dict[Exponent, Fraction] = {}
    one = (0,) * dim_out
    for exps, coeff in f.items():
        term = None
        for i, e in enumerate(exps):
            if e:
                p = image_power(i, e)
                term = p if term is None else term * p
                if max_degree is not None:
                    term = term.truncate(max_degree)
        if term is None:
            prev = acc.get(one)
            total = coeff if prev is None else prev + coeff
            if total:
                acc[one] = total
            else:
                acc.pop(one, None)
        else:
            for te, tc in term.items():
                prev = acc.get(te)
                total = tc * coeff if prev is None else prev + tc * coeff
                if total:
                    acc[te] = total
                else:
                    acc.pop(te, None)
    return Polynomial._raw(dim_out, acc)


def _power(base: Polynomial, n: int, max_degree: int | None) -> Polynomial:
    """base**n, truncating intermediates when a degree cut is requested."""
    if max_degree is None or base.single_term() is not None:
        result = base**n
        return result.truncate(max_degree) if max_degree is not None else result
    result = None
    factor = base.truncate(max_degree)
    k = n
    while k:
        if k & 1:
            result = factor if result is None else (result * factor).truncate(max_degree)
        k >>= 1
        if k:
            factor = (factor * factor).truncate(max_degree)
    return result if result is not None else Polynomial.constant(base.dim, 1)


def divide_by_variable_power(f: Polynomial, index: int, power: int) -> Polynomial:
    """Exact division by variable^power, reducing that exponent in every term."""
    if power == 0:
        return f
    if power < 0:
        raise ValueError("negative power")
    terms = {}
    for exps, coeff in f.items():
        if exps[index] < power:
            raise NotDivisibleError(
                f"term {exps} not divisible by variable {index} to the power {power}"
            )
        key = tuple(e - power if i == index else e for i, e in enumerate(exps))
        terms[key] = coeff
    return Polynomial._raw(f.dim, terms)


# -- text format -----------------------------------------------------------

_TOKEN = re.compile(r"\s*(\d+|[A-Za-z_][A-Za-z_0-9]*|\^|\*|\+|\-|/|\(|\))")


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    length = len(text)
    while pos < length:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character at {text[pos:pos + 8]!r}")
        tokens.append(m.group(1))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens: list[str], names: Sequence[str]):
        self.tokens = tokens
        self.pos = 0
        self.names = list(names)
        self.dim = len(self.names)

    def peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of expression")
        self.pos += 1
        return tok

    def parse(self) -> Polynomial:
        poly = self.expr()
        if self.peek() is not None:
            raise ParseError(f"trailing input at {self.peek()!r}")
        return poly

    def expr(self) -> Polynomial:
        poly = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            poly = poly + rhs if op == "+" else poly - rhs
        return poly

    def term(self) -> Polynomial:
        negate = False
        while self.peek() in ("+", "-"):
            if self.take() == "-":
                negate = not negate
        poly = self.factor()
        while self.peek() == "*":
            self.take()
            poly = poly * self.factor()
        return -poly if negate else poly

    def factor(self) -> Polynomial:
        poly = self.atom()
        if self.peek() == "^":
            self.take()
            exp_tok = self.take()
            if not exp_tok.isdigit():
                raise ParseError(f"exponent must be a nonnegative integer, got {exp_tok!r}")
            poly = poly ** int(exp_tok)
        return poly

    def atom(self) -> Polynomial:
        tok = self.take()
        if tok == "(":
            poly = self.expr()
            if self.take() != ")":
                raise ParseError("missing closing parenthesis")
            return poly
        if tok.isdigit():
            value = Fraction(int(tok))
            if self.peek() == "/":
                self.take()
                den_tok = self.take()
                if not den_tok.isdigit() or int(den_tok) == 0:
                    raise ParseError(f"bad fraction denominator {den_tok!r}")
                value /= int(den_tok)
            return Polynomial.constant(self.dim, value)
        if tok in self.names:
            return Polynomial.variable(self.dim, self.names.index(tok))
        raise ParseError(f"unknown variable {tok!r} (declared: {', '.join(self.names)})")


def parse_polynomial(text: str, names: Sequence[str]) -> Polynomial:
    """Parse the CLI/config polynomial syntax against declared variable names."""
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty polynomial expression")
    return _Parser(tokens, names).parse()


def format_polynomial(f: Polynomial, names: Sequence[str] | None = None) -> str:
    """Canonical text form; parse_polynomial(format_polynomial(f)) == f."""
    if names is None:
        names = _default_names(f.dim)
    if f.is_zero():
        return "0"
    pieces = []
    for exps in sorted(f._terms, key=lambda e: (sum(e), e), reverse=True):
        coeff = f._terms[exps]
        factors = [
            names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(exps) if e
        ]
        mag = abs(coeff)
        if not factors:
            body = _format_fraction(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([_format_fraction(mag)] + factors)
        if not pieces:
            pieces.append(body if coeff > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(pieces)


def _format_fraction(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _default_names(dim: int) -> list[str]:
    base = ["x", "y", "z", "u", "v", "w"]
    if dim <= len(base):
        return base[:dim]
    return base + [f"t{i}" for i in range(dim - len(base))]
