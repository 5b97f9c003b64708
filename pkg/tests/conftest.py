"""Shared helpers for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from lqtlab import ExplicitSequence, Move, Polynomial, parse_polynomial

XY = ["x", "y"]
XYZ = ["x", "y", "z"]


def P(text: str) -> Polynomial:
    return parse_polynomial(text, XY)


def P3(text: str) -> Polynomial:
    return parse_polynomial(text, XYZ)


def random_polynomial(rng: random.Random, dim: int, max_terms: int = 3, max_deg: int = 3) -> Polynomial:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        exps = tuple(rng.randint(0, max_deg) for _ in range(dim))
        terms[exps] = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]))
    if not terms:
        return Polynomial.constant(dim, 1)
    return Polynomial(dim, terms)


def draw_feasible_case(
    rng: random.Random,
    horizon: int,
    dim: int | None = None,
    max_deg: int = 3,
    term_cap: int = 300,
    shift_prob: float = 0.25,
):
    """Random (sequence, element) with monomial/shift-1 moves whose transforms
    stay desk-sized.

    Shifted moves expand a term binomially in the shifted variable, so a shift
    is only planned on a variable whose simulated exponent bound keeps the
    projected term count under the cap.  The simulation is pure integer
    bookkeeping; the returned case is then computed exactly by the engine.
    """
    d = dim if dim is not None else rng.choice([2, 3])
    bounds = [max_deg] * d
    terms_bound = 4
    plan = []
    for _ in range(horizon):
        pivot = rng.randrange(d)
        shift_var = None
        if rng.random() < shift_prob:
            candidates = [
                v for v in range(d) if v != pivot and terms_bound * (bounds[v] + 1) <= term_cap
            ]
            if candidates:
                shift_var = rng.choice(candidates)
                terms_bound *= bounds[shift_var] + 1
        bounds[pivot] = min(sum(bounds), 1 << 40)
        plan.append((pivot, shift_var))
    moves = []
    for pivot, shift_var in plan:
        shifts = [Fraction(0)] * d
        if shift_var is not None:
            shifts[shift_var] = Fraction(1)
        moves.append(Move(pivot, tuple(shifts)))
    return ExplicitSequence(d, moves), random_polynomial(rng, d, max_deg=max_deg)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(987654321)


ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
