from fractions import Fraction

import pytest

from lqtlab import (
    ArchimedeanSequenceError,
    BadUniformizerError,
    DYADIC_RATIONALS,
    ExplicitSequence,
    InvalidNormalizerError,
    Move,
    NonArchimedeanSequenceError,
    NotStabilizedError,
    PeriodicSequence,
    Polynomial,
    QuadraticIrrational,
    SequenceAnalyzer,
    UndecidedEqualityError,
    ValueEstimate,
    builtin_family,
    cic3d_sequence,
    parse_sigma,
    rational_dependence,
)

from conftest import P, P3, draw_feasible_case

PHI = QuadraticIrrational(1, 1, 5, 2)


@pytest.fixture
def directional():
    return SequenceAnalyzer(builtin_family("directional"))


@pytest.fixture
def fibonacci():
    return SequenceAnalyzer(builtin_family("fibonacci"), horizon=40)


@pytest.fixture
def fibonacci3d():
    return SequenceAnalyzer(builtin_family("fibonacci3d"), horizon=40)


class TestStableTransformOrders:
    def test_pivot_is_certified_zero(self, directional):
        e = directional.e_value(P("x"))
        assert (e.value, e.certified) == (0, True)

    def test_frozen_parameter_is_certified(self, directional):
        e = directional.e_value(P("y"))
        assert (e.value, e.certified) == (1, True)

    def test_mixed_element_is_heuristic(self, directional):
        # oracle: y-adic order of x^3*y^2 + y^5 = y^2*(x^3 + y^3) is 2
        e = directional.e_value(P("x^3*y^2 + y^5"))
        assert e.value == 2
        assert not e.certified

    def test_quotients(self, directional):
        assert directional.e_of_quotient(P("y"), P("y")).value == 0
        assert directional.e_of_quotient(P("y^2"), P("y")).value == 1
        assert directional.e_of_quotient(P("x"), P("y")).value == -1

    def test_not_stabilized_raises(self):
        # product of factors y + x^i: factor i becomes a unit after i stages,
        # so the transform order keeps dropping through the whole window
        f = P("y + x")
        for i in range(2, 13):
            f = f * P(f"y + x^{i}")
        analyzer = SequenceAnalyzer(builtin_family("directional"), horizon=10, window=8)
        with pytest.raises(NotStabilizedError):
            analyzer.e_value(f)
        # with enough horizon the same element stabilizes (and is certified:
        # the transform order reaches zero)
        settled = SequenceAnalyzer(builtin_family("directional"), horizon=24)
        assert settled.e_value(f).value == 0

    def test_additivity_on_random_pairs(self, rng):
        checked = 0
        while checked < 150:
            seq, f = draw_feasible_case(rng, 24)
            _, g = draw_feasible_case(rng, 24, dim=f.dim)
            analyzer = SequenceAnalyzer(seq, horizon=24, window=6)
            try:
                ef = analyzer.e_value(f)
                eg = analyzer.e_value(g)
                efg = analyzer.e_value(f * g)
            except NotStabilizedError:
                continue
            assert efg.value == ef.value + eg.value
            checked += 1


class TestPrimaryProxy:
    def test_accepts_pivot(self, directional):
        assert directional.n_primary_check(P("x")) is True

    def test_rejects_positive_stable_order(self, directional):
        assert directional.n_primary_check(P("y")) is False

    def test_rejects_unit(self, directional):
        assert directional.n_primary_check(P("1")) is False

    def test_invalid_normalizer_raises(self):
        analyzer = SequenceAnalyzer(builtin_family("directional"), normalizer=P("y"))
        with pytest.raises(InvalidNormalizerError):
            analyzer.w_ratio(P("x"))


class TestRatioEstimates:
    def test_normalizer_is_exactly_one(self, directional, fibonacci):
        for analyzer in (directional, fibonacci):
            est = analyzer.w_ratio(analyzer.normalizer)
            assert est.kind == ValueEstimate.RATIONAL
            assert est.value == 1

    def test_diverges_on_frozen_parameter(self, directional):
        est = directional.w_ratio(P("y"))
        assert est.is_plus_infinity()
        assert est.certified  # certified classification + certified stable order

    def test_golden_ratio_window(self, fibonacci):
        est = fibonacci.w_ratio(P("y"))
        assert est.is_finite()
        assert est.width() < Fraction(1, 10**6)
        assert est.contains(PHI)

    def test_unit_offset_sum(self, directional):
        est = directional.w_ratio(P("x + y"))
        assert est.kind == ValueEstimate.RATIONAL and est.value == 1

    def test_quotient_ratio(self, directional):
        est = directional.w_ratio(P("x^3*y^2 + y^5"), P("y^2"))
        assert est.kind == ValueEstimate.RATIONAL and est.value == 3

    def test_zero_rejected(self, directional):
        from lqtlab import ZeroElementError

        with pytest.raises(ZeroElementError):
            directional.w_ratio(Polynomial.zero(2))


class TestSeriesEstimates:
    def test_normalizer(self, fibonacci):
        est = fibonacci.w_series(P("x"))
        assert est.is_exact() and est.value == 1

    def test_sigma_family_series(self):
        analyzer = SequenceAnalyzer(cic3d_sequence(parse_sigma("sqrt(8)")))
        est = analyzer.w_series(P3("z"))
        assert est.is_exact()
        assert est.value == parse_sigma("sqrt(8)")

    def test_product_series(self, fibonacci3d):
        est = fibonacci3d.w_series(P3("x*y"))
        assert est.is_exact()
        assert est.value == PHI + 1

    def test_rejects_non_archimedean(self, directional):
        with pytest.raises(NonArchimedeanSequenceError):
            directional.w_series(P("y"))

    def test_heuristic_interval_encloses_limit(self):
        per = PeriodicSequence(2, [Move(0, (0, 0)), Move(1, (0, 0))])
        analyzer = SequenceAnalyzer(per, horizon=48)
        est = analyzer.w_series(P("x*y"))
        assert est.is_finite()
        assert est.contains(PHI + 1)


class TestTau:
    def test_directional_diverges_certified(self, directional):
        est = directional.tau()
        assert est.is_plus_infinity() and est.certified

    def test_fibonacci_exact(self, fibonacci):
        est = fibonacci.tau()
        assert est.is_exact() and est.certified
        assert est.value == PHI * PHI
        assert ValueEstimate.interval(Fraction(2617, 1000), Fraction(2619, 1000)).contains(
            est.value
        )

    def test_sigma_family_exact(self):
        sigma = parse_sigma("sqrt(8)")
        analyzer = SequenceAnalyzer(cic3d_sequence(sigma), horizon=64)
        est = analyzer.tau()
        assert est.is_exact() and est.certified
        assert est.value == sigma
        assert est.width() < Fraction(1, 1000)

    def test_periodic_heuristic_interval(self):
        per = PeriodicSequence(2, [Move(0, (0, 0)), Move(1, (0, 0))])
        analyzer = SequenceAnalyzer(per, horizon=48)
        est = analyzer.tau()
        assert est.is_finite() and not est.certified
        assert est.contains(PHI * PHI)
        assert est.width() < Fraction(1, 100)

    def test_rescaled_normalizer_rescales_tau(self):
        analyzer = SequenceAnalyzer(builtin_family("fibonacci"), normalizer=P("x^2"), horizon=40)
        est = analyzer.tau()
        assert est.is_exact()
        assert est.value * 2 == PHI * PHI


class TestClassification:
    def test_directional(self, directional):
        result = directional.classify()
        assert result.is_non_archimedean() and result.certified

    def test_fibonacci(self, fibonacci):
        result = fibonacci.classify()
        assert result.is_archimedean() and result.certified

    def test_sigma_family(self):
        analyzer = SequenceAnalyzer(cic3d_sequence(parse_sigma("sqrt(8)")))
        result = analyzer.classify()
        assert result.is_archimedean() and result.certified

    def test_explicit_directional_heuristic(self):
        seq = ExplicitSequence(2, [Move(0, (0, 0))] * 65)
        result = SequenceAnalyzer(seq).classify()
        assert result.is_non_archimedean() and not result.certified

    def test_periodic_fibonacci_heuristic(self):
        per = PeriodicSequence(2, [Move(0, (0, 0)), Move(1, (0, 0))])
        result = SequenceAnalyzer(per, horizon=48).classify()
        assert result.is_archimedean() and not result.certified


class TestBoundaryValues:
    def test_unit_pair(self, fibonacci):
        bv = fibonacci.boundary_value_arch(P("1"))
        assert bv.first.value == 0 and bv.second.value == 0

    def test_normalizer_pair(self, fibonacci):
        bv = fibonacci.boundary_value_arch(P("x"))
        assert bv.first.value == 1 and bv.second.value == 0

    def test_rank_two_witness_pair(self, fibonacci3d):
        bv = fibonacci3d.boundary_value_arch(P3("z"), P3("x*y"))
        assert bv.first.is_exact() and bv.first.value == 0
        assert bv.second.value == -1

    def test_lex_comparison(self, fibonacci3d):
        v_q = fibonacci3d.boundary_value_arch(P3("z"), P3("x*y"))
        v_one = fibonacci3d.boundary_value_arch(P3("1"))
        v_x = fibonacci3d.boundary_value_arch(P3("x"))
        assert v_q.compare(v_one) < 0  # the quotient sits below the ring: not in V
        assert v_one.compare(v_x) < 0
        assert v_q.compare(v_q) == 0

    def test_multiplicativity(self, fibonacci3d):
        va = fibonacci3d.boundary_value_arch(P3("x"))
        vb = fibonacci3d.boundary_value_arch(P3("z"))
        vab = fibonacci3d.boundary_value_arch(P3("x*z"))
        assert vab.first.value == (va.first + vb.first).value
        assert vab.second.value == va.second.value + vb.second.value

    def test_arch_pair_rejected_on_nonarch(self, directional):
        with pytest.raises(NonArchimedeanSequenceError):
            directional.boundary_value_arch(P("x"))

    def test_lex_sign_matches_eventual_order_sign(self, fibonacci3d):
        from lqtlab import track

        zero_pair = fibonacci3d.boundary_value_arch(P3("1"))
        cases = [(P3("x^2*y"), P3("x")), (P3("z"), P3("x*y")), (P3("x"), P3("x"))]
        for a, b in cases:
            pair = fibonacci3d.boundary_value_arch(a, b)
            lex = pair.compare(zero_pair)
            ta = track(a, fibonacci3d.seq, 0, 40)
            tb = track(b, fibonacci3d.seq, 0, 40)
            diffs = [ta.order_at(n) - tb.order_at(n) for n in range(33, 41)]
            eventual = {(d > 0) - (d < 0) for d in diffs}
            assert len(eventual) == 1
            # the quotient sits in the boundary ring iff its pair is >= (0, 0)
            assert (lex >= 0) == (eventual.pop() >= 0)

    def test_nonarch_uniformizer_pair(self, directional):
        bv = directional.boundary_value_nonarch(P("y"), P("y"))
        assert bv.first.value == 1 and bv.second.value == 0

    def test_nonarch_mixed_pair(self, directional):
        bv = directional.boundary_value_nonarch(P("x^3*y^2 + y^5"), P("y"))
        assert bv.first.value == 2
        assert bv.second.kind == ValueEstimate.RATIONAL and bv.second.value == 3

    def test_bad_uniformizer(self, directional):
        with pytest.raises(BadUniformizerError):
            directional.boundary_value_nonarch(P("y"), P("y^2"))
        with pytest.raises(BadUniformizerError):
            directional.boundary_value_nonarch(P("y"), P("x"))

    def test_nonarch_pair_rejected_on_arch(self, fibonacci):
        with pytest.raises(ArchimedeanSequenceError):
            fibonacci.boundary_value_nonarch(P("y"), P("y"))


class TestInfiniteValuePrime:
    def test_members(self, directional):
        assert directional.p_infinity_check(P("y")) is True
        assert directional.p_infinity_check(P("x")) is False
        assert directional.p_infinity_check(P("x + y")) is False

    def test_requires_non_archimedean(self, fibonacci):
        with pytest.raises(ArchimedeanSequenceError):
            fibonacci.p_infinity_check(P("y"))


class TestAlmostIntegralWitness:
    def test_positive_witness(self, fibonacci3d):
        assert fibonacci3d.almost_integral_witness(P3("z"), P3("x*y")) is True

    def test_zero_stable_order_fails(self, fibonacci3d):
        assert fibonacci3d.almost_integral_witness(P3("x"), P3("x")) is False

    def test_distinct_values_fail(self, fibonacci3d):
        assert fibonacci3d.almost_integral_witness(P3("z"), P3("x")) is False

    def test_denominator_must_pass_proxy(self, fibonacci3d):
        with pytest.raises(InvalidNormalizerError):
            fibonacci3d.almost_integral_witness(P3("x"), P3("z"))

    def test_overlap_without_certification_is_undecided(self):
        per = PeriodicSequence(3, [Move(0, (0, 0, 0)), Move(1, (0, 0, 0))])
        analyzer = SequenceAnalyzer(per, horizon=40)
        with pytest.raises(UndecidedEqualityError):
            analyzer.almost_integral_witness(P3("z"), P3("x*y"))


class TestRationalDependence:
    def test_quadratic_vs_dyadic_is_independent(self):
        tau = ValueEstimate.exact(parse_sigma("sqrt(8)"))
        assert rational_dependence(tau, DYADIC_RATIONALS).kind == "independent"

    def test_phi_squared_in_unit_lattice(self):
        tau = ValueEstimate.exact(PHI * PHI)
        result = rational_dependence(tau, [Fraction(1), PHI])
        assert (result.kind, result.multiple) == ("dependent", 1)

    def test_rational_vs_dyadic(self):
        # 5/2 is already dyadic, so the least multiple is 1
        result = rational_dependence(ValueEstimate.exact_rational(Fraction(5, 2)), DYADIC_RATIONALS)
        assert (result.kind, result.multiple) == ("dependent", 1)
        result = rational_dependence(ValueEstimate.exact_rational(Fraction(5, 6)), DYADIC_RATIONALS)
        assert (result.kind, result.multiple) == ("dependent", 3)

    def test_interval_is_unknown(self):
        tau = ValueEstimate.interval(Fraction(1), Fraction(2))
        assert rational_dependence(tau, DYADIC_RATIONALS).kind == "unknown"

    def test_irrational_outside_rational_lattice(self):
        result = rational_dependence(ValueEstimate.exact(PHI), [Fraction(1)])
        assert result.kind == "independent"

    def test_lattice_with_index(self):
        # {3, 5} spans all of Z, so twice 1/2 already lands in the lattice
        result = rational_dependence(
            ValueEstimate.exact_rational(Fraction(1, 2)), [Fraction(3), Fraction(5)]
        )
        assert (result.kind, result.multiple) == ("dependent", 2)
        # {4, 6} spans 2Z, which forces the multiple up to 4
        result = rational_dependence(
            ValueEstimate.exact_rational(Fraction(1, 2)), [Fraction(4), Fraction(6)]
        )
        assert (result.kind, result.multiple) == ("dependent", 4)


class TestTauUpperBound:
    def test_tight_on_alternating_family(self, fibonacci):
        report = fibonacci.tau_upper_bound([P("x"), P("y")])
        assert report.relation == "tight"
        assert report.bound.value == PHI * PHI

    def test_dependent_inputs_flagged(self, fibonacci):
        report = fibonacci.tau_upper_bound([P("x"), P("x")])
        assert report.bound.value == 2
        assert report.relation == "exceeded"

    def test_three_elements(self, fibonacci):
        report = fibonacci.tau_upper_bound([P("x"), P("y"), P("x*y^2")])
        assert report.bound.value == (PHI * 3 + 2) * Fraction(1, 2)
        assert report.relation == "respected"

    def test_requires_two(self, fibonacci):
        with pytest.raises(ValueError):
            fibonacci.tau_upper_bound([P("x")])


class TestPerStageInvariants:
    def test_subadditivity_of_stage_orders(self, rng):
        from lqtlab import track

        for _ in range(100):
            seq, f = draw_feasible_case(rng, 16)
            _, g = draw_feasible_case(rng, 16, dim=f.dim)
            if (f + g).is_zero():
                continue
            tf = track(f, seq, 0, 16)
            tg = track(g, seq, 0, 16)
            ts = track(f + g, seq, 0, 16)
            for n in range(17):
                assert ts.order_at(n) >= min(tf.order_at(n), tg.order_at(n))

    def test_rank_one_family_has_zero_stable_orders(self, fibonacci, rng):
        # on the alternating family the union is a valuation ring, so every
        # element's transform order stabilizes at zero
        for _ in range(25):
            f = None
            while f is None or f.is_zero():
                _, f = draw_feasible_case(rng, 1, dim=2, max_deg=2)
            assert fibonacci.e_value(f).value == 0
