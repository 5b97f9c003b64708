"""Built-in sequence families and block-structured constructions.

The sigma-driven families alternate runs of pivot-x moves with a power-of-two
run of pivot-y moves, re-centering twice per block at a shifted point.  Each
block consumes the integer part of a running quadratic irrational and rescales
it by a power of two:

    sigma_{j+1} = 2^{e_j} * (sigma_j - floor(sigma_j)),   2^{e_j} * frac > 2,

so every per-stage pivot value is an exact dyadic rational and the full pivot
value sum telescopes to sigma.  Block boundaries and per-block data are
materialized as records, which is what the verifier replays.

Simpler families used as desk-scale witnesses:

* directional: constant pivot x; pivot values are all 1, so their sum is
  provably unbounded (value positive and constant), the non-archimedean case.
* fibonacci / fibonacci3d: alternating pivots; stage orders follow the
  Fibonacci recurrence, the pivot values are exact powers of 1/phi, and the
  pivot value sum is exactly phi^2 = phi + 1.
* cic3d: the sigma-driven family with a third variable riding along
  (z -> pivot*z at every stage), giving a frozen transform of order one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import SigmaOutOfRangeError, UnknownFamilyError
from .quadratics import QuadraticIrrational
from .transforms import Move, TransformSequence


def _check_sigma(sigma: QuadraticIrrational) -> None:
    if sigma.is_rational():
        raise SigmaOutOfRangeError(f"sigma must be irrational, got {sigma}")
    if sigma.compare(2) <= 0:
        raise SigmaOutOfRangeError(f"sigma must exceed 2, got {sigma} ~ {float(sigma):.6f}")


def minimal_block_exponent(sigma: QuadraticIrrational) -> int:
    """Least e >= 2 with 2^e * (sigma - floor(sigma)) > 2."""
    frac = sigma.fractional_part()
    e = 2
    while (frac * (2**e)).compare(2) <= 0:
        e += 1
    return e


@dataclass(frozen=True)
class BlockRecord:
    """One block of the sigma-driven construction."""

    index: int
    sigma: QuadraticIrrational
    floor: int
    d: int
    e: int
    start: int
    end: int
    entry_value: Fraction  # pivot value at the first stage of the block
    exit_value: Fraction  # pivot value at the first stage of the next block

    @property
    def length(self) -> int:
        return self.end - self.start

    def sigma_next(self) -> QuadraticIrrational:
        return self.sigma.fractional_part() * (2**self.e)


def example76_block(sigma: QuadraticIrrational) -> tuple[list[Move], BlockRecord]:
    """Moves of one finite block: d + 1 pivot-x stages (the last one shifted),
    then 2^e - 1 pivot-y stages and a final shifted pivot-x stage."""
    _check_sigma(sigma)
    floor = sigma.floor()
    d = floor - 2
    e = minimal_block_exponent(sigma)
    plain_x = Move(0, (0, 0))
    shifted_x = Move(0, (0, 1))
    plain_y = Move(1, (0, 0))
    moves = [plain_x] * d + [shifted_x] + [plain_y] * (2**e - 1) + [shifted_x]
    record = BlockRecord(
        index=0,
        sigma=sigma,
        floor=floor,
        d=d,
        e=e,
        start=0,
        end=len(moves),
        entry_value=Fraction(1),
        exit_value=Fraction(1, 2**e),
    )
    return moves, record


class SigmaBlockSequence(TransformSequence):
    """Infinite concatenation of blocks driven by the sigma recursion.

    Exact per-stage pivot values (dyadic rationals) are materialized along
    with the block records; the total pivot-value sum is sigma itself.
    """

    family_name = "example77"

    def __init__(self, sigma: QuadraticIrrational, dim: int = 2, names=None):
        _check_sigma(sigma)
        super().__init__(dim, names or (["x", "y"] if dim == 2 else ["x", "y", "z"]))
        self.sigma = sigma
        self._blocks: list[BlockRecord] = []
        self._moves: list[Move] = []
        self._pivot_values: list[Fraction] = []
        self._prefix_sums: list[Fraction] = [Fraction(0)]
        self._next_sigma = sigma
        self._next_value = Fraction(1)

    def _lift(self, move: Move) -> Move:
        if self.dim == 2:
            return move
        return Move(move.pivot, tuple(move.shifts) + (0,) * (self.dim - 2))

    def _generate_block(self) -> None:
        sigma_j = self._next_sigma
        moves, base = example76_block(sigma_j)
        start = len(self._moves)
        q_j = self._next_value
        record = BlockRecord(
            index=len(self._blocks),
            sigma=sigma_j,
            floor=base.floor,
            d=base.d,
            e=base.e,
            start=start,
            end=start + len(moves),
            entry_value=q_j,
            exit_value=q_j / 2**base.e,
        )
        self._blocks.append(record)
        self._moves.extend(self._lift(mv) for mv in moves)
        values = [q_j] * (base.d + 1) + [q_j / 2**base.e] * (2**base.e)
        for v in values:
            self._pivot_values.append(v)
            self._prefix_sums.append(self._prefix_sums[-1] + v)
        self._next_sigma = record.sigma_next()
        self._next_value = record.exit_value

    def ensure_stage(self, n: int) -> None:
        while len(self._moves) <= n:
            self._generate_block()

    def ensure_blocks(self, count: int) -> None:
        while len(self._blocks) < count:
            self._generate_block()

    def block_record(self, j: int) -> BlockRecord:
        self.ensure_blocks(j + 1)
        return self._blocks[j]

    def move(self, n: int) -> Move:
        if n < 0:
            raise ValueError("negative stage")
        self.ensure_stage(n)
        return self._moves[n]

    @property
    def has_exact_pivot_values(self) -> bool:
        return True

    def pivot_value(self, n: int) -> Fraction:
        self.ensure_stage(n)
        return self._pivot_values[n]

    def pivot_value_prefix_sum(self, n: int) -> Fraction:
        if n > 0:
            self.ensure_stage(n - 1)
        return self._prefix_sums[n]

    def tau_exact(self) -> QuadraticIrrational:
        return self.sigma

    def defect_after_blocks(self, count: int) -> QuadraticIrrational:
        """sigma minus the pivot-value sum of the first ``count`` blocks, exact."""
        self.ensure_blocks(count)
        boundary = self._blocks[count - 1].end if count else 0
        return self.sigma - self.pivot_value_prefix_sum(boundary)

    def variable_untouched_after(self, index: int, stage: int) -> bool:
        return index >= 2

    def unit_value_group(self):
        return "dyadic"


def example77_sequence(sigma: QuadraticIrrational) -> SigmaBlockSequence:
    return SigmaBlockSequence(sigma, dim=2)


def cic3d_sequence(sigma: QuadraticIrrational) -> SigmaBlockSequence:
    """The sigma-driven family with an extra variable z -> pivot*z at every stage."""
    seq = SigmaBlockSequence(sigma, dim=3)
    seq.family_name = "cic3d"
    return seq


class DirectionalSequence(TransformSequence):
    """Constant pivot x, never shifted: the canonical non-archimedean family."""

    family_name = "directional"

    def __init__(self, dim: int = 2, names=None):
        super().__init__(dim, names)
        self._move = Move(0, (0,) * dim)

    def move(self, n: int) -> Move:
        if n < 0:
            raise ValueError("negative stage")
        return self._move

    @property
    def has_exact_pivot_values(self) -> bool:
        return True

    def pivot_value(self, n: int) -> Fraction:
        return Fraction(1)

    def pivot_value_prefix_sum(self, n: int) -> Fraction:
        return Fraction(n)

    def tau_exact(self):
        # every pivot value is exactly 1, so the partial sums are unbounded
        return "diverges"

    def variable_untouched_after(self, index: int, stage: int) -> bool:
        return index != 0

    def unit_value_group(self):
        return [Fraction(1)]


class FibonacciSequence(TransformSequence):
    """Alternating pivots x, y with no shifts; stage orders are Fibonacci numbers."""

    family_name = "fibonacci"

    def __init__(self, dim: int = 2, names=None):
        super().__init__(dim, names)
        self._moves = [Move(0, (0,) * dim), Move(1, (0,) * dim)]
        golden = QuadraticIrrational(1, 1, 5, 2)
        self._inverse_golden = 1 / golden
        self._tau = golden * golden  # phi^2 = phi + 1
        self._values = [QuadraticIrrational.from_fraction(1)]
        self._prefix = [
            QuadraticIrrational.from_fraction(0),
            QuadraticIrrational.from_fraction(1),
        ]

    def move(self, n: int) -> Move:
        if n < 0:
            raise ValueError("negative stage")
        return self._moves[n % 2]

    @property
    def has_exact_pivot_values(self) -> bool:
        return True

    def pivot_value(self, n: int) -> QuadraticIrrational:
        while len(self._values) <= n:
            self._values.append(self._values[-1] * self._inverse_golden)
            self._prefix.append(self._prefix[-1] + self._values[-1])
        return self._values[n]

    def pivot_value_prefix_sum(self, n: int) -> QuadraticIrrational:
        if n > 0:
            self.pivot_value(n - 1)
        return self._prefix[n]

    def tau_exact(self) -> QuadraticIrrational:
        return self._tau

    def variable_untouched_after(self, index: int, stage: int) -> bool:
        return index >= 2

    def unit_value_group(self):
        return [Fraction(1), QuadraticIrrational(1, 1, 5, 2)]


def builtin_family(name: str) -> TransformSequence:
    if name == "fibonacci":
        return FibonacciSequence(2)
    if name == "fibonacci3d":
        seq = FibonacciSequence(3)
        seq.family_name = "fibonacci3d"
        return seq
    if name == "directional":
        return DirectionalSequence(2)
    raise UnknownFamilyError(f"no built-in family named {name!r}")


# -- block verification ---------------------------------------------------------


@dataclass
class BlockCheck:
    """Verification outcome for one block."""

    index: int
    d: int
    e: int
    floor: int
    sub_block_sum: Fraction
    block_sum: Fraction
    exit_value: Fraction
    defect_upper: Fraction  # bound the defect after this block must stay below
    passed: bool
    failures: list

    def summary(self) -> str:
        state = "pass" if self.passed else "FAIL: " + "; ".join(self.failures)
        return (
            f"block {self.index}: d={self.d} e={self.e} floor={self.floor} "
            f"sum={self.block_sum} exit={self.exit_value} [{state}]"
        )


@dataclass
class BlockSumReport:
    sigma: QuadraticIrrational
    checks: list
    passed: bool
    first_failed_block: Optional[int]

    def lines(self) -> list[str]:
        out = [check.summary() for check in self.checks]
        verdict = "all blocks pass" if self.passed else f"first failure in block {self.first_failed_block}"
        out.append(verdict)
        return out


def _expected_block_moves(record: BlockRecord, dim: int) -> list[Move]:
    pad = (0,) * (dim - 2)
    plain_x = Move(0, (0, 0) + pad)
    shifted_x = Move(0, (0, 1) + pad)
    plain_y = Move(1, (0, 0) + pad)
    return [plain_x] * record.d + [shifted_x] + [plain_y] * (2**record.e - 1) + [shifted_x]


def verify_block_sums(
    seq: SigmaBlockSequence, blocks: int, moves: Optional[Sequence[Move]] = None
) -> BlockSumReport:
    """Replay the block schedule and check the construction identities.

    Per block j (entry pivot value q_j): the moves match the d/e pattern, the
    sub-block pivot-value sum is (floor - 1) * q_j, the whole block sums to
    floor * q_j, the next pivot value is q_j / 2^e, the rescaled remainder
    exceeds 2, and the defect after the block equals exit_value * sigma_next
    and stays strictly between 2 * exit_value and q_j.

    ``moves`` overrides the sequence's own move stream, letting callers verify
    an externally supplied (possibly corrupted) move list against the schedule.
    """
    seq.ensure_blocks(blocks)
    checks: list[BlockCheck] = []
    first_fail: Optional[int] = None
    for j in range(blocks):
        record = seq.block_record(j)
        failures: list[str] = []

        expected = _expected_block_moves(record, seq.dim)
        for offset, expected_move in enumerate(expected):
            stage = record.start + offset
            provided = None
            if moves is None:
                provided = seq.move(stage)
            elif stage < len(moves):
                provided = moves[stage]
            if provided is None:
                failures.append(f"move stream ends at stage {stage}")
                break
            if provided != expected_move:
                failures.append(f"move mismatch at stage {stage}")
                break

        if record.d != record.floor - 2:
            failures.append("run length d is not floor - 2")
        frac = record.sigma.fractional_part()
        if record.e < 2 or (frac * 2**record.e).compare(2) <= 0:
            failures.append("exponent does not satisfy 2^e * frac > 2 with e >= 2")
        elif record.e > 2 and (frac * 2 ** (record.e - 1)).compare(2) > 0:
            failures.append("exponent is not minimal")

        q_j = record.entry_value
        sub_sum = sum(
            (seq.pivot_value(n) for n in range(record.start, record.start + record.d + 1)),
            Fraction(0),
        )
        block_sum = sum(
            (seq.pivot_value(n) for n in range(record.start, record.end)), Fraction(0)
        )
        if sub_sum != (record.floor - 1) * q_j:
            failures.append("sub-block sum != (floor - 1) * entry value")
        if block_sum != record.floor * q_j:
            failures.append("block sum != floor * entry value")
        if seq.pivot_value(record.end) != record.exit_value or record.exit_value != q_j / 2**record.e:
            failures.append("exit pivot value != entry value / 2^e")

        sigma_next = record.sigma_next()
        if sigma_next.compare(2) <= 0:
            failures.append("rescaled remainder does not exceed 2")
        defect = seq.sigma - seq.pivot_value_prefix_sum(record.end)
        if defect != sigma_next * record.exit_value:
            failures.append("defect != exit value * rescaled remainder")
        if not (defect.compare(2 * record.exit_value) > 0 and defect.compare(q_j) < 0):
            failures.append("defect outside (2 * exit value, entry value)")

        passed = not failures
        if not passed and first_fail is None:
            first_fail = j
        checks.append(
            BlockCheck(
                index=j,
                d=record.d,
                e=record.e,
                floor=record.floor,
                sub_block_sum=sub_sum,
                block_sum=block_sum,
                exit_value=record.exit_value,
                defect_upper=q_j,
                passed=passed,
                failures=failures,
            )
        )
    return BlockSumReport(
        sigma=seq.sigma, checks=checks, passed=first_fail is None, first_failed_block=first_fail
    )
