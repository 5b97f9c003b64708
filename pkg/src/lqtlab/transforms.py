"""Quadratic-transform moves, move sequences, and element tracking.

One move rewrites the current ring's parameters in terms of the next ring's:
the pivot variable maps to itself and every other variable j maps to
pivot * (variable_j + shift_j).  This realizes the passage to the localization
of R[m/pivot] at the rational center determined by the shifts.

Tracking an element through a sequence records, at every stage, its order,
the transform of the principal ideal it generates, and the transform's order.
The element's order at stage n is assembled from the accumulated pivot powers:
the stage-n image of the element factors exactly as

    image(a) = product_i image(pivot_i)^k_i  *  a_n,     k_i = order of a_i,

so order multiplicativity turns the stage order into an exact integer sum with
no polynomial blowup.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import (
    DimensionMismatchError,
    SequenceExhaustedError,
    ZeroElementError,
)
from .polynomials import Polynomial, divide_by_variable_power, substitute


@dataclass(frozen=True)
class Move:
    """A single local quadratic transform: pivot index plus rational shifts."""

    pivot: int
    shifts: tuple

    def __post_init__(self):
        object.__setattr__(self, "shifts", tuple(Fraction(s) for s in self.shifts))
        if not 0 <= self.pivot < len(self.shifts):
            raise DimensionMismatchError(
                f"pivot {self.pivot} out of range for dimension {len(self.shifts)}"
            )
        if self.shifts[self.pivot] != 0:
            raise ValueError("the pivot variable cannot be shifted")

    @property
    def dim(self) -> int:
        return len(self.shifts)

    def images(self) -> list[Polynomial]:
        """Stage-(n+1) expressions of the stage-n variables."""
        dim = self.dim
        pivot_poly = Polynomial.variable(dim, self.pivot)
        out = []
        for j in range(dim):
            if j == self.pivot:
                out.append(pivot_poly)
            else:
                image = Polynomial.variable(dim, j)
                if self.shifts[j]:
                    image = image + Polynomial.constant(dim, self.shifts[j])
                out.append(pivot_poly * image)
        return out

    def is_monomial(self) -> bool:
        return all(s == 0 for s in self.shifts)


def apply_move(f: Polynomial, move: Move) -> Polynomial:
    """Re-express f in the parameters of the next stage."""
    if f.dim != move.dim:
        raise DimensionMismatchError(f"element dim {f.dim} vs move dim {move.dim}")
    return substitute(f, move.images())


def transform_principal(f: Polynomial, move: Move) -> tuple[Polynomial, int]:
    """Transform of the principal ideal fR across one move.

    Returns (g, k) with k = order(f) and apply_move(f) = pivot^k * g exactly.
    """
    if f.is_zero():
        raise ZeroElementError("cannot transform the zero ideal")
    k = f.order()
    moved = apply_move(f, move)
    return divide_by_variable_power(moved, move.pivot, k), k


class TransformSequence:
    """A conceptually infinite sequence of moves over a fixed ring.

    Subclasses provide move(n).  Rule-driven families may also expose exact
    per-stage pivot values (normalized so the stage-0 pivot has value 1),
    which unlock the certified/exact evaluation paths.
    """

    family_name: str | None = None

    def __init__(self, dim: int, names: Sequence[str] | None = None):
        if dim < 2:
            raise DimensionMismatchError("sequences require dimension >= 2")
        self.dim = dim
        self.names = list(names) if names is not None else _default_names(dim)
        if len(self.names) != dim:
            raise DimensionMismatchError("variable name count must match dimension")

    def move(self, n: int) -> Move:
        raise NotImplementedError

    # -- optional exact rule metadata ------------------------------------

    @property
    def has_exact_pivot_values(self) -> bool:
        return False

    def pivot_value(self, n: int):
        """Exact value of the stage-n pivot, when the rule provides it."""
        raise NotImplementedError

    def pivot_value_prefix_sum(self, n: int):
        """Exact sum of pivot values for stages 0..n-1."""
        raise NotImplementedError

    def tau_exact(self):
        """Exact total pivot-value sum, or None when the rule cannot certify one.

        Returns a Fraction/QuadraticIrrational for convergent families and the
        string "diverges" when the tail is provably unbounded.
        """
        return None

    def variable_untouched_after(self, index: int, stage: int) -> bool:
        """True when variable ``index`` is provably never a pivot and never
        shifted at any stage >= ``stage``.  Explicit lists can never promise
        this; periodic and rule-driven sequences can."""
        return False

    def unit_value_group(self):
        """Description of the known value group of the hull's units, if any:
        "dyadic" or a list of exact generators."""
        return None


class ExplicitSequence(TransformSequence):
    """A finite move list; asking past the end is an error, never a repeat."""

    def __init__(self, dim: int, moves: Sequence[Move], names: Sequence[str] | None = None):
        super().__init__(dim, names)
        self.moves = list(moves)
        for mv in self.moves:
            if mv.dim != dim:
                raise DimensionMismatchError("move dimension does not match sequence")

    def move(self, n: int) -> Move:
        if n < 0 or n >= len(self.moves):
            raise SequenceExhaustedError(
                f"explicit sequence has {len(self.moves)} moves, move {n} requested"
            )
        return self.moves[n]


class PeriodicSequence(TransformSequence):
    """Endless repetition of a fixed block of moves."""

    def __init__(self, dim: int, period: Sequence[Move], names: Sequence[str] | None = None):
        super().__init__(dim, names)
        if not period:
            raise ValueError("period must contain at least one move")
        self.period = list(period)
        for mv in self.period:
            if mv.dim != dim:
                raise DimensionMismatchError("move dimension does not match sequence")

    def move(self, n: int) -> Move:
        if n < 0:
            raise SequenceExhaustedError("negative stage")
        return self.period[n % len(self.period)]

    def variable_untouched_after(self, index: int, stage: int) -> bool:
        return all(
            mv.pivot != index and mv.shifts[index] == 0 for mv in self.period
        )


@dataclass
class StageRecord:
    """Per-stage tracking data for one element."""

    stage: int
    order_of_element: int
    transform: Polynomial
    order_of_transform: int


@dataclass
class TrackedElement:
    """An element together with its order and ideal-transform data per stage."""

    element: Polynomial
    origin: int
    horizon: int
    stages: list = field(default_factory=list)

    def record(self, n: int) -> StageRecord:
        return self.stages[n - self.origin]

    def order_at(self, n: int) -> int:
        return self.record(n).order_of_element

    def transform_order_at(self, n: int) -> int:
        return self.record(n).order_of_transform

    def transform_orders(self) -> list[int]:
        return [rec.order_of_transform for rec in self.stages]

    def final_transform_order(self) -> int:
        return self.stages[-1].order_of_transform


def pivot_image_orders(seq: TransformSequence, origin: int, target: int) -> list[int]:
    """order at stage ``target`` of the image of each pivot x_i, origin <= i < target.

    Computed by a backward recurrence on per-variable orders: a shifted
    variable contributes a unit factor (order 0), an unshifted one its own
    image order.
    """
    dim = seq.dim
    orders = [1] * dim  # stage-`target` variables
    per_stage_pivot: dict[int, int] = {}
    for j in range(target - 1, origin - 1, -1):
        mv = seq.move(j)
        pivot_order = orders[mv.pivot]
        new_orders = []
        for v in range(dim):
            if v == mv.pivot:
                new_orders.append(pivot_order)
            elif mv.shifts[v] != 0:
                new_orders.append(pivot_order)
            else:
                new_orders.append(pivot_order + orders[v])
        per_stage_pivot[j] = pivot_order
        orders = new_orders
    return [per_stage_pivot[i] for i in range(origin, target)]


def track(
    a: Polynomial, seq: TransformSequence, origin: int = 0, horizon: int = 64
) -> TrackedElement:
    """Track an element from its origin stage to the horizon."""
    if a.is_zero():
        raise ZeroElementError("cannot track the zero element")
    if a.dim != seq.dim:
        raise DimensionMismatchError(f"element dim {a.dim} vs sequence dim {seq.dim}")
    if horizon < origin:
        raise ValueError("horizon must not precede the origin stage")

    tracked = TrackedElement(element=a, origin=origin, horizon=horizon)
    current = a
    transform_orders: list[int] = []
    for n in range(origin, horizon + 1):
        k = current.order()
        pivot_orders = pivot_image_orders(seq, origin, n)
        order_of_element = (
            sum(ki * pi for ki, pi in zip(transform_orders, pivot_orders)) + k
        )
        tracked.stages.append(
            StageRecord(
                stage=n,
                order_of_element=order_of_element,
                transform=current,
                order_of_transform=k,
            )
        )
        if n < horizon:
            current, _ = transform_principal(current, seq.move(n))
            transform_orders.append(k)
    return tracked


def element_order_by_image(
    a: Polynomial, seq: TransformSequence, origin: int, target: int
):
    """Order of a's stage-``target`` image computed by brute-force substitution.

    Independent of track(); intended for cross-checks.  Polynomial size can
    grow under shifted moves, so callers working at scale should prefer the
    tracked order.
    """
    image = a
    for n in range(origin, target):
        image = apply_move(image, seq.move(n))
    return image.order()


def _default_names(dim: int) -> list[str]:
    base = ["x", "y", "z", "u", "v", "w"]
    if dim <= len(base):
        return base[:dim]
    return base + [f"t{i}" for i in range(dim - len(base))]
