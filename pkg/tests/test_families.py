from fractions import Fraction

import pytest

from lqtlab import (
    Move,
    QuadraticIrrational,
    SequenceAnalyzer,
    SigmaOutOfRangeError,
    UnknownFamilyError,
    builtin_family,
    cic3d_sequence,
    example76_block,
    example77_sequence,
    parse_sigma,
    verify_block_sums,
)
from lqtlab.families import minimal_block_exponent

from conftest import P, P3

SQRT8 = parse_sigma("sqrt(8)")
SQRT10 = parse_sigma("sqrt(10)")

# block schedule for sigma = sqrt(8), derived from the exact recursion
# sigma_{j+1} = 2^{e_j} (sigma_j - floor(sigma_j)) with minimal e_j >= 2
SQRT8_SCHEDULE = [
    # (floor, d, e, start, end, entry value)
    (2, 0, 2, 0, 5, Fraction(1)),
    (3, 1, 3, 5, 15, Fraction(1, 4)),
    (2, 0, 2, 15, 20, Fraction(1, 32)),
    (2, 0, 6, 20, 85, Fraction(1, 128)),
    (2, 0, 3, 85, 94, Fraction(1, 8192)),
    (3, 1, 2, 94, 100, Fraction(1, 65536)),
]


class TestSingleBlock:
    def test_sqrt8_block_shape(self):
        moves, record = example76_block(SQRT8)
        assert (record.d, record.e, record.floor) == (0, 2, 2)
        assert len(moves) == 5
        assert moves == [Move(0, (0, 1))] + [Move(1, (0, 0))] * 3 + [Move(0, (0, 1))]
        assert record.exit_value == Fraction(1, 4)

    def test_sqrt10_block_shape(self):
        moves, record = example76_block(SQRT10)
        assert (record.d, record.floor) == (1, 3)
        assert moves[0] == Move(0, (0, 0))
        assert moves[1] == Move(0, (0, 1))
        # first run of pivot-x stages contributes floor - 1 per unit value
        assert (record.d + 1) * record.entry_value == record.floor - 1

    def test_minimal_exponent(self):
        assert minimal_block_exponent(SQRT8) == 2
        assert minimal_block_exponent(SQRT10) == 4  # frac ~ 0.1623 needs 2^4
        # frac(sqrt(8)) ~ 0.828 would admit e = 1, but the floor is e >= 2
        assert minimal_block_exponent(SQRT8) >= 2

    @pytest.mark.parametrize("bad", ["5", "2", "sqrt(2)", "(5)/2"])
    def test_sigma_out_of_range(self, bad):
        with pytest.raises(SigmaOutOfRangeError):
            example76_block(parse_sigma(bad))

    def test_rational_sigma_rejected(self):
        with pytest.raises(SigmaOutOfRangeError):
            example77_sequence(QuadraticIrrational(5, 0, 1, 2))


class TestBlockSequence:
    def test_sqrt8_schedule(self):
        seq = example77_sequence(SQRT8)
        for j, (floor, d, e, start, end, entry) in enumerate(SQRT8_SCHEDULE):
            record = seq.block_record(j)
            assert (record.floor, record.d, record.e) == (floor, d, e)
            assert (record.start, record.end) == (start, end)
            assert record.entry_value == entry

    def test_first_rescaled_remainder(self):
        seq = example77_sequence(SQRT8)
        sigma1 = seq.block_record(1).sigma
        assert sigma1 == QuadraticIrrational(-8, 8, 2)
        assert sigma1.floor() == 3

    def test_pivot_values_are_dyadic(self):
        seq = example77_sequence(SQRT8)
        seq.ensure_blocks(6)
        for n in range(seq.block_record(5).end):
            den = seq.pivot_value(n).denominator
            assert den & (den - 1) == 0  # power of two

    def test_defect_identity_and_bounds(self):
        seq = example77_sequence(SQRT8)
        for j in range(1, 7):
            record = seq.block_record(j - 1)
            defect = seq.defect_after_blocks(j)
            assert defect == record.sigma_next() * record.exit_value
            assert defect.compare(2 * record.exit_value) > 0
            assert defect.compare(record.entry_value) < 0

    def test_partial_sums_converge_from_below(self):
        seq = example77_sequence(SQRT8)
        seq.ensure_blocks(6)
        previous = Fraction(-1)
        for j in range(1, 7):
            partial = seq.pivot_value_prefix_sum(seq.block_record(j - 1).end)
            assert partial > previous
            assert SQRT8.compare(partial) > 0
            previous = partial

    def test_tau_is_sigma(self):
        assert example77_sequence(SQRT8).tau_exact() == SQRT8

    def test_rescaled_remainders_stay_above_two(self):
        for sigma in (SQRT8, SQRT10, parse_sigma("(1+3*sqrt(3))/2")):
            seq = example77_sequence(sigma)
            seq.ensure_blocks(8)
            for j in range(8):
                assert seq.block_record(j).sigma.compare(2) > 0


class TestVerification:
    def test_all_blocks_pass(self):
        report = verify_block_sums(example77_sequence(SQRT8), 6)
        assert report.passed and report.first_failed_block is None
        assert [c.index for c in report.checks] == list(range(6))
        assert all(c.passed for c in report.checks)
        assert report.checks[0].block_sum == 2
        assert report.checks[1].block_sum == Fraction(3, 4)

    def test_sqrt10_blocks_pass(self):
        report = verify_block_sums(example77_sequence(SQRT10), 4)
        assert report.passed

    def test_tampered_sequence_fails_in_the_right_block(self):
        seq = example77_sequence(SQRT8)
        seq.ensure_blocks(4)
        moves = [seq.move(n) for n in range(seq.block_record(3).end)]
        removed = moves[:7] + moves[8:]  # drop a pivot-y stage inside block 1
        report = verify_block_sums(seq, 4, moves=removed)
        assert not report.passed
        assert report.first_failed_block == 1

    def test_truncated_stream_fails(self):
        seq = example77_sequence(SQRT8)
        moves = [seq.move(n) for n in range(7)]
        report = verify_block_sums(seq, 2, moves=moves)
        assert not report.passed
        assert report.first_failed_block == 1

    def test_report_lines_are_stable(self):
        report = verify_block_sums(example77_sequence(SQRT8), 2)
        lines = report.lines()
        assert lines[-1] == "all blocks pass"
        assert lines[0].startswith("block 0:")


class TestCrossValidation:
    def test_ratio_estimate_matches_block_prediction_sqrt8(self):
        # the first-stage parameter y acquires value d_0 + 1 = 1
        analyzer = SequenceAnalyzer(example77_sequence(SQRT8), horizon=30)
        est = analyzer.w_ratio(P("y"))
        assert est.contains(1)

    def test_ratio_estimate_matches_block_prediction_sqrt10(self):
        # d_0 = 1 for sqrt(10), so y carries value 2
        analyzer = SequenceAnalyzer(example77_sequence(SQRT10), horizon=40)
        est = analyzer.w_ratio(P("y"))
        assert est.contains(2)

    def test_exact_pivot_values_inside_ratio_windows(self):
        seq = builtin_family("fibonacci")
        analyzer = SequenceAnalyzer(seq, horizon=40)
        estimates = analyzer._pivot_estimates()
        for n in range(0, 24, 3):
            assert estimates[n].contains(seq.pivot_value(n))


class TestThreeDimensionalFamily:
    def test_moves_carry_the_extra_variable(self):
        seq = cic3d_sequence(SQRT8)
        assert seq.dim == 3
        mv = seq.move(0)
        assert mv.shifts[2] == 0
        assert seq.variable_untouched_after(2, 0)

    def test_extra_variable_has_stable_order_one(self):
        analyzer = SequenceAnalyzer(cic3d_sequence(SQRT8), horizon=64)
        e = analyzer.e_value(P3("z"))
        assert (e.value, e.certified) == (1, True)

    def test_value_group_is_dyadic(self):
        assert cic3d_sequence(SQRT8).unit_value_group() == "dyadic"


class TestBuiltinFamilies:
    def test_names(self):
        assert builtin_family("fibonacci").dim == 2
        assert builtin_family("fibonacci3d").dim == 3
        assert builtin_family("directional").dim == 2

    def test_unknown(self):
        with pytest.raises(UnknownFamilyError):
            builtin_family("nope")

    def test_fibonacci_pivot_values(self):
        seq = builtin_family("fibonacci")
        phi = QuadraticIrrational(1, 1, 5, 2)
        assert seq.pivot_value(0) == 1
        assert seq.pivot_value(1) == 1 / phi
        assert seq.pivot_value(2) == 1 / (phi * phi)
        assert seq.tau_exact() == phi * phi

    def test_directional_certifies_divergence(self):
        seq = builtin_family("directional")
        assert seq.tau_exact() == "diverges"
        assert seq.pivot_value(17) == 1
