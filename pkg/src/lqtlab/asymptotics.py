"""Asymptotic invariants of a transform sequence.

Everything here is a statement about limits, evaluated from a finite horizon,
so every result carries explicit epistemics:

* certified results follow from structural facts that hold at every future
  stage (a transform that reached the unit ideal stays there; a single-term
  transform in variables the rule never touches again is frozen; rule-driven
  families expose exact per-stage pivot values and exact tails), and
* heuristic results come from window stabilization and divergence guards.

The normalizer fixes the scale: all w-values are ratios against its stage
orders, so w(normalizer) = 1 by construction.  A normalizer is accepted when
its transform order stabilizes at zero and its stage orders stay positive,
the computable proxy for generating a primary ideal of the union's maximal
ideal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence, Union

from .errors import (
    ArchimedeanSequenceError,
    BadUniformizerError,
    InvalidNormalizerError,
    NonArchimedeanSequenceError,
    NotStabilizedError,
    UndecidedEqualityError,
    ZeroElementError,
)
from .polynomials import Polynomial
from .quadratics import QuadraticIrrational
from .transforms import TrackedElement, TransformSequence, track
from .values import (
    ARCHIMEDEAN,
    CERTIFIED,
    CONVERGING,
    HEURISTIC,
    NON_ARCHIMEDEAN,
    UNDECIDED,
    UNDECIDED_CLASS,
    BoundaryValue,
    Classification,
    EValue,
    ValueEstimate,
)

DEFAULT_HORIZON = 64
DEFAULT_WINDOW = 8
DEFAULT_GUARD = 10**6
DEFAULT_CAUCHY_TOL = Fraction(1, 10**6)

DYADIC_RATIONALS = "dyadic"

Exact = Union[Fraction, QuadraticIrrational]

_UNSET = object()


class SequenceAnalyzer:
    """Evaluates the asymptotic invariants of one sequence at a fixed horizon.

    All query methods are pure; tracked elements and the classification are
    cached on the instance.
    """

    def __init__(
        self,
        seq: TransformSequence,
        normalizer: Polynomial | None = None,
        origin: int = 0,
        horizon: int = DEFAULT_HORIZON,
        window: int = DEFAULT_WINDOW,
        guard: int = DEFAULT_GUARD,
        cauchy_tol: Fraction = DEFAULT_CAUCHY_TOL,
    ):
        self.seq = seq
        self.origin = origin
        self.horizon = horizon
        self.window = max(2, window)
        self.guard = guard
        self.cauchy_tol = Fraction(cauchy_tol)
        self.normalizer = (
            normalizer if normalizer is not None else Polynomial.variable(seq.dim, 0)
        )
        self._tracks: dict = {}
        self._classification: Classification | None = None
        self._normalizer_ok: bool | None = None
        self._normalizer_scale = _UNSET
        self._pivot_estimate_cache: list | None = None

    # -- tracking ------------------------------------------------------------

    def tracked(self, a: Polynomial, origin: int | None = None) -> TrackedElement:
        if a.is_zero():
            raise ZeroElementError("cannot analyze the zero element")
        key = (a, self.origin if origin is None else origin)
        hit = self._tracks.get(key)
        if hit is None:
            hit = track(a, self.seq, key[1], self.horizon)
            self._tracks[key] = hit
        return hit

    # -- stabilized transform orders ------------------------------------------

    def e_value(self, a: Polynomial, origin: int | None = None) -> EValue:
        """Stable order of the transforms of the principal ideal generated by a."""
        tracked = self.tracked(a, origin)
        orders = tracked.transform_orders()
        final = orders[-1]
        if final == 0:
            # the transform reached the unit ideal; units stay units
            return EValue(0, CERTIFIED)
        last = tracked.stages[-1].transform
        if last.single_term() is not None and all(
            self.seq.variable_untouched_after(v, tracked.horizon)
            for v in last.support_variables()
        ):
            # frozen monomial transform: every future move multiplies it by
            # pivot^order and the division removes exactly that factor
            return EValue(final, CERTIFIED)
        if len(orders) >= self.window and len(set(orders[-self.window :])) == 1:
            return EValue(final, HEURISTIC, self.window)
        raise NotStabilizedError(
            f"transform orders {orders[-self.window:]} not constant over the last "
            f"{self.window} stages (horizon {self.horizon})"
        )

    def e_of_quotient(self, a: Polynomial, b: Polynomial) -> EValue:
        ea = self.e_value(a)
        eb = self.e_value(b)
        certainty = CERTIFIED if ea.certified and eb.certified else HEURISTIC
        window = max(ea.window, eb.window)
        return EValue(ea.value - eb.value, certainty, window)

    def n_primary_check(self, a: Polynomial) -> bool:
        """Computable proxy for "a generates a primary ideal of the maximal ideal":
        the transform order stabilizes at zero while stage orders stay positive."""
        e = self.e_value(a)
        if e.value != 0:
            return False
        tracked = self.tracked(a)
        tail = tracked.stages[-self.window :]
        return all(rec.order_of_element > 0 for rec in tail)

    # -- normalizer ------------------------------------------------------------

    def _ensure_normalizer(self) -> None:
        if self._normalizer_ok is None:
            try:
                self._normalizer_ok = self.n_primary_check(self.normalizer)
            except NotStabilizedError as exc:
                self._normalizer_ok = False
                raise InvalidNormalizerError(
                    f"normalizer did not stabilize: {exc}"
                ) from exc
        if not self._normalizer_ok:
            raise InvalidNormalizerError(
                "normalizer must have stable transform order 0 and positive stage orders"
            )

    def _normalizer_unit_scale(self) -> Optional[Exact]:
        """Exact rule-normalized w of the normalizer, when certifiable."""
        if self._normalizer_scale is _UNSET:
            self._normalizer_scale = None
            if self.seq.has_exact_pivot_values:
                try:
                    e = self.e_value(self.normalizer)
                except NotStabilizedError:
                    e = None
                if e is not None and e.certified and e.value == 0:
                    tracked = self.tracked(self.normalizer)
                    total: Exact = Fraction(0)
                    for rec in tracked.stages:
                        if rec.order_of_transform:
                            total = total + self.seq.pivot_value(rec.stage) * rec.order_of_transform
                    self._normalizer_scale = total
        return self._normalizer_scale

    # -- w as a ratio limit -------------------------------------------------------

    def _ratio_values(
        self, a: Polynomial, b: Polynomial | None = None
    ) -> list[Fraction]:
        ta = self.tracked(a)
        tb = self.tracked(b) if b is not None else None
        tx = self.tracked(self.normalizer)
        out = []
        for n in range(self.origin, self.horizon + 1):
            num = ta.order_at(n) - (tb.order_at(n) if tb is not None else 0)
            out.append(Fraction(num, tx.order_at(n)))
        return out

    def w_ratio(self, a: Polynomial, b: Polynomial | None = None) -> ValueEstimate:
        """Estimate of the order-ratio limit of a (or of the quotient a/b)."""
        if a.is_zero() or (b is not None and b.is_zero()):
            raise ZeroElementError("w is estimated for nonzero elements only")
        self._ensure_normalizer()
        cls = self.classify()

        if cls.is_non_archimedean():
            try:
                e_q = self.e_value(a) if b is None else self.e_of_quotient(a, b)
            except NotStabilizedError:
                e_q = None
            if e_q is not None and e_q.value > 0:
                return ValueEstimate.plus_infinity(certified=cls.certified and e_q.certified)
            if e_q is not None and e_q.value < 0:
                return ValueEstimate.minus_infinity(certified=cls.certified and e_q.certified)

        ratios = self._ratio_values(a, b)
        windowed = ratios[-self.window :]
        if len(set(windowed)) == 1:
            return ValueEstimate.exact_rational(windowed[0], status=CONVERGING, certified=False)
        if abs(ratios[-1]) > self.guard:
            return (
                ValueEstimate.plus_infinity()
                if ratios[-1] > 0
                else ValueEstimate.minus_infinity()
            )
        increasing = all(p < q for p, q in zip(windowed, windowed[1:]))
        decreasing = all(p > q for p, q in zip(windowed, windowed[1:]))
        if cls.is_non_archimedean() and (increasing or decreasing):
            return (
                ValueEstimate.plus_infinity() if increasing else ValueEstimate.minus_infinity()
            )
        lo, hi = min(windowed), max(windowed)
        status = CONVERGING if hi - lo <= self.cauchy_tol else UNDECIDED
        return ValueEstimate.interval(lo, hi, status=status, certified=False)

    # -- w as a pivot-value series ---------------------------------------------------

    def _exact_tau_raw(self):
        """Rule-normalized exact tau: an Exact, "diverges", or None."""
        if not self.seq.has_exact_pivot_values:
            return None
        return self.seq.tau_exact()

    def w_exact(self, a: Polynomial) -> Optional[Union[Exact, str]]:
        """Exact w(a) via per-stage data and exact rule metadata.

        Returns an exact value, the string "+infinity" (non-archimedean, stable
        positive transform order), or None when no certified route exists.
        """
        raw_tau = self._exact_tau_raw()
        if raw_tau is None:
            return None
        scale = self._normalizer_unit_scale()
        if scale is None:
            return None
        try:
            e = self.e_value(a)
        except NotStabilizedError:
            return None
        if not e.certified:
            return None
        tracked = self.tracked(a)
        partial: Exact = Fraction(0)
        for rec in tracked.stages:
            if rec.order_of_transform:
                partial = partial + self.seq.pivot_value(rec.stage) * rec.order_of_transform
        if e.value == 0:
            total = partial
        else:
            if raw_tau == "diverges":
                return "+infinity"
            tail = raw_tau - self.seq.pivot_value_prefix_sum(self.horizon + 1)
            total = partial + tail * e.value
        result = total / scale
        if isinstance(result, QuadraticIrrational) and result.is_rational():
            return result.as_fraction()
        return result

    def w_series(self, a: Polynomial) -> ValueEstimate:
        """Enclosure of w(a) built from the transform orders and pivot values."""
        if a.is_zero():
            raise ZeroElementError("w is estimated for nonzero elements only")
        self._ensure_normalizer()
        cls = self.classify()
        if cls.is_non_archimedean():
            raise NonArchimedeanSequenceError(
                "the pivot-value series only encloses w on archimedean sequences"
            )

        raw_tau = self._exact_tau_raw()
        scale = self._normalizer_unit_scale()
        if raw_tau is not None and raw_tau != "diverges" and scale is not None:
            exact = self.w_exact(a)
            if exact is not None and exact != "+infinity":
                return ValueEstimate.exact(exact, certified=True)
            tracked = self.tracked(a)
            partial: Exact = Fraction(0)
            for rec in tracked.stages:
                if rec.order_of_transform:
                    partial = partial + self.seq.pivot_value(rec.stage) * rec.order_of_transform
            # future transform orders never exceed the last one seen
            tail = raw_tau - self.seq.pivot_value_prefix_sum(self.horizon + 1)
            last_order = tracked.final_transform_order()
            lo_bound, _ = _exact_to_bounds(partial / scale)
            _, hi_bound = _exact_to_bounds((partial + tail * last_order) / scale)
            return ValueEstimate.interval(lo_bound, hi_bound, status=CONVERGING, certified=True)

        ratio = self.w_ratio(a)
        if not ratio.is_finite():
            return ratio
        series_lo = self._heuristic_series_lower_bound(a)
        lo = max(series_lo, ratio.lo) if series_lo is not None else ratio.lo
        if lo > ratio.hi:
            return ratio
        return ValueEstimate.interval(lo, ratio.hi, status=ratio.status, certified=False)

    def _heuristic_series_lower_bound(self, a: Polynomial) -> Optional[Fraction]:
        estimates = self._pivot_estimates()
        tracked = self.tracked(a)
        total = Fraction(0)
        for rec in tracked.stages:
            idx = rec.stage - self.origin
            if rec.order_of_transform and idx < len(estimates):
                total += rec.order_of_transform * estimates[idx].lo
        return total

    def w_estimate(self, a: Polynomial, b: Polynomial | None = None) -> ValueEstimate:
        """Best available estimate of w(a) or w(a/b): exact when certifiable."""
        wa = self.w_exact(a)
        wb = self.w_exact(b) if b is not None else Fraction(0)
        if wa is not None and wb is not None and wa != "+infinity" and wb != "+infinity":
            diff = _sub_exacts(wa, wb)
            return ValueEstimate.exact(diff, certified=True)
        if wa == "+infinity" and wb is not None and wb != "+infinity":
            return ValueEstimate.plus_infinity(certified=True)
        return self.w_ratio(a, b)

    # -- tau ------------------------------------------------------------------------

    def _pivot_estimates(self) -> list[ValueEstimate]:
        """Heuristic per-stage pivot value estimates from ratio windows."""
        if self._pivot_estimate_cache is not None:
            return self._pivot_estimate_cache
        tx = self.tracked(self.normalizer)
        out = []
        for n in range(self.origin, self.horizon):
            pivot_var = Polynomial.variable(self.seq.dim, self.seq.move(n).pivot)
            tp = self.tracked(pivot_var, origin=n)
            start = max(n, self.horizon - self.window)
            rs = [
                Fraction(tp.order_at(j), tx.order_at(j))
                for j in range(start, self.horizon + 1)
            ]
            if len(set(rs)) == 1:
                out.append(ValueEstimate.exact_rational(rs[0], status=CONVERGING, certified=False))
            else:
                out.append(ValueEstimate.interval(min(rs), max(rs), certified=False))
        self._pivot_estimate_cache = out
        return out

    def tau(self) -> ValueEstimate:
        """Sum of the pivot w-values: exact for rule-driven families, else estimated."""
        self._ensure_normalizer()
        raw = self._exact_tau_raw()
        if raw is not None:
            if raw == "diverges":
                return ValueEstimate.plus_infinity(certified=True)
            scale = self._normalizer_unit_scale()
            if scale is not None:
                return ValueEstimate.exact(raw / scale, certified=True)
        return self._tau_heuristic()

    def tau_partial_sum(self, upto: int) -> Optional[Fraction]:
        """Exact partial sum of pivot values for stages below ``upto`` (metadata only)."""
        if not self.seq.has_exact_pivot_values:
            return None
        return self.seq.pivot_value_prefix_sum(upto)

    def _tau_heuristic(self) -> ValueEstimate:
        estimates = self._pivot_estimates()
        if not estimates:
            return ValueEstimate.interval(0, 0, status=UNDECIDED)
        partial_lo = sum((est.lo for est in estimates), Fraction(0))
        partial_hi = sum((est.hi for est in estimates), Fraction(0))
        if partial_hi > self.guard:
            return ValueEstimate.plus_infinity()
        for var in range(self.seq.dim):
            probe = self._ratio_values(Polynomial.variable(self.seq.dim, var))
            if abs(probe[-1]) > self.guard:
                return ValueEstimate.plus_infinity()
        # compare pivot-value mass of the last two window-sized chunks: a
        # chunk ratio below 1 extrapolates to a geometric tail bound
        w = self.window
        if len(estimates) >= 2 * w:
            last_hi = sum((est.hi for est in estimates[-w:]), Fraction(0))
            prev_lo = sum((est.lo for est in estimates[-2 * w : -w]), Fraction(0))
            if prev_lo > 0:
                rho = last_hi / prev_lo
                if rho < Fraction(9, 10):
                    tail_hi = last_hi * rho / (1 - rho)
                    return ValueEstimate.interval(
                        partial_lo, partial_hi + tail_hi, status=CONVERGING, certified=False
                    )
                if rho >= 1 and all(est.lo > 0 for est in estimates[-w:]):
                    # pivot-value mass is not decaying at the horizon
                    return ValueEstimate.plus_infinity()
        return ValueEstimate.interval(partial_lo, partial_hi, status=UNDECIDED, certified=False)

    # -- classification ------------------------------------------------------------

    def classify(self) -> Classification:
        if self._classification is not None:
            return self._classification
        self._ensure_normalizer()
        raw = self._exact_tau_raw()
        if raw == "diverges":
            result = Classification(
                NON_ARCHIMEDEAN, True, ValueEstimate.plus_infinity(certified=True)
            )
        elif raw is not None and self._normalizer_unit_scale() is not None:
            tau = ValueEstimate.exact(raw / self._normalizer_unit_scale(), certified=True)
            result = Classification(ARCHIMEDEAN, True, tau)
        else:
            tau = self._tau_heuristic()
            if tau.is_plus_infinity():
                result = Classification(NON_ARCHIMEDEAN, False, tau)
            elif tau.status == CONVERGING:
                result = Classification(ARCHIMEDEAN, False, tau)
            else:
                result = Classification(UNDECIDED_CLASS, False, tau)
        self._classification = result
        return result

    # -- boundary valuation ----------------------------------------------------------

    def boundary_value_arch(
        self, a: Polynomial, b: Polynomial | None = None
    ) -> BoundaryValue:
        """Lexicographic pair (w, -stable transform order) for a or a/b."""
        cls = self.classify()
        if cls.is_non_archimedean():
            raise NonArchimedeanSequenceError(
                "archimedean boundary pair requested on a non-archimedean sequence"
            )
        if cls.kind == UNDECIDED_CLASS:
            raise NotStabilizedError("classification undecided at this horizon")
        e_q = self.e_value(a) if b is None else self.e_of_quotient(a, b)
        w_est = self.w_estimate(a, b)
        return BoundaryValue(
            ARCHIMEDEAN, w_est, ValueEstimate.exact_rational(-e_q.value)
        )

    def boundary_value_nonarch(self, a: Polynomial, z: Polynomial) -> BoundaryValue:
        """Lexicographic pair (e(a)/e(z), w(a / z^(e(a)/e(z)))) for non-archimedean runs."""
        cls = self.classify()
        if cls.is_archimedean():
            raise ArchimedeanSequenceError(
                "composite boundary pair requested on an archimedean sequence"
            )
        e_a = self.e_value(a)
        e_z = self.e_value(z)
        if e_z.value <= 0:
            raise BadUniformizerError(f"uniformizer has stable order {e_z.value}, need > 0")
        if e_a.value % e_z.value != 0:
            raise BadUniformizerError(
                f"uniformizer order {e_z.value} does not divide probe order {e_a.value}"
            )
        kappa = e_a.value // e_z.value
        second = self.w_ratio(a, z**kappa) if kappa >= 0 else self.w_ratio(a * z ** (-kappa))
        return BoundaryValue(
            NON_ARCHIMEDEAN, ValueEstimate.exact_rational(kappa), second
        )

    def p_infinity_check(self, a: Polynomial) -> bool:
        """Membership in the prime of infinite w-value (non-archimedean only)."""
        cls = self.classify()
        if not cls.is_non_archimedean():
            raise ArchimedeanSequenceError(
                "the infinite-value prime exists only on non-archimedean sequences"
            )
        return self.w_ratio(a).is_plus_infinity()

    # -- complete integral closure ------------------------------------------------------

    def almost_integral_witness(self, a: Polynomial, y: Polynomial) -> bool:
        """True when a/y witnesses failure of complete integral closedness:
        equal w-values, y with stable order 0 and positive orders, a without."""
        cls = self.classify()
        if cls.is_non_archimedean():
            raise NonArchimedeanSequenceError(
                "the witness criterion applies to archimedean sequences"
            )
        if not self.n_primary_check(y):
            raise InvalidNormalizerError(
                "witness denominator must pass the stable-order-zero proxy check"
            )
        e_a = self.e_value(a)
        if e_a.value <= 0:
            return False
        wa_exact = self.w_exact(a)
        wy_exact = self.w_exact(y)
        if wa_exact is not None and wy_exact is not None:
            return _sub_exacts(wa_exact, wy_exact) == 0
        # without exact values, only rigorous (certified) enclosures may decide,
        # and then only inequality: equality is infinitely sensitive
        wa = self.w_series(a)
        wy = self.w_series(y)
        if wa.certified and wy.certified:
            comparison = wa.compare(wy)
            if comparison is not None:
                return comparison == 0
        raise UndecidedEqualityError(
            "equality of w-values needs exact arithmetic or disjoint certified "
            "enclosures; the estimates at this horizon decide neither"
        )

    def tau_upper_bound(self, ys: Sequence[Polynomial]) -> "TauBoundReport":
        """Bound (sum of w(y_i)) / (r - 1), assuming the caller asserts the
        rational independence of the w-values; compared against tau as a
        diagnostic."""
        if len(ys) < 2:
            raise ValueError("need at least two elements for the bound")
        total = self.w_estimate(ys[0])
        for y in ys[1:]:
            total = total + self.w_estimate(y)
        bound = total.scale(Fraction(1, len(ys) - 1))
        tau = self.tau()
        if not tau.is_finite():
            relation = "exceeded"
        else:
            cmp = tau.compare(bound)
            if cmp is None:
                relation = "inconclusive"
            elif cmp > 0:
                relation = "exceeded"
            elif cmp == 0:
                relation = "tight"
            else:
                relation = "respected"
        return TauBoundReport(bound=bound, tau=tau, relation=relation)


@dataclass(frozen=True)
class TauBoundReport:
    bound: ValueEstimate
    tau: ValueEstimate
    relation: str  # tight / respected / exceeded / inconclusive


# -- rational dependence -------------------------------------------------------------


@dataclass(frozen=True)
class DependenceResult:
    kind: str  # "dependent" / "independent" / "unknown"
    multiple: Optional[int] = None


def rational_dependence(tau: ValueEstimate, group) -> DependenceResult:
    """Least positive integer multiple of tau landing in the group, if any.

    ``group`` is DYADIC_RATIONALS or a list of exact generators
    (ValueEstimate, Fraction, or QuadraticIrrational).  Interval inputs give
    "unknown": dependence is infinitely sensitive to equality.
    """
    if not tau.is_exact():
        return DependenceResult("unknown")
    value = tau.value
    if group == DYADIC_RATIONALS:
        if isinstance(value, QuadraticIrrational):
            return DependenceResult("independent")
        odd = value.denominator
        while odd % 2 == 0:
            odd //= 2
        return DependenceResult("dependent", odd)
    generators = []
    for gen in group:
        if isinstance(gen, ValueEstimate):
            if not gen.is_exact():
                return DependenceResult("unknown")
            generators.append(gen.value)
        else:
            generators.append(gen)
    try:
        target_vec, gen_vecs = _common_field_vectors(value, generators)
    except ValueError:
        return DependenceResult("unknown")
    return _lattice_least_multiple(target_vec, gen_vecs)


def _common_field_vectors(target, generators):
    """Coordinates (rational part, radical coefficient) in one quadratic field."""
    radicand = None
    values = [target] + list(generators)
    for v in values:
        if isinstance(v, QuadraticIrrational) and not v.is_rational():
            if radicand is None:
                radicand = v.D
            elif radicand != v.D:
                raise ValueError("mixed radicands")
    vectors = []
    for v in values:
        if isinstance(v, QuadraticIrrational):
            vectors.append((Fraction(v.p, v.r), Fraction(v.q, v.r)))
        else:
            vectors.append((Fraction(v), Fraction(0)))
    return vectors[0], vectors[1:]


def _lattice_least_multiple(target, generators) -> DependenceResult:
    """Least d >= 1 with d*target in the integer span of the generators."""
    denominators = [target[0].denominator, target[1].denominator]
    for g in generators:
        denominators.extend((g[0].denominator, g[1].denominator))
    m = 1
    for d in denominators:
        m = m * d // gcd(m, d)
    t = (int(target[0] * m), int(target[1] * m))
    gens = [(int(g[0] * m), int(g[1] * m)) for g in generators]
    gens = [g for g in gens if g != (0, 0)]
    if not gens:
        return DependenceResult("dependent", 1) if t == (0, 0) else DependenceResult("independent")

    g0 = 0
    for g in gens:
        g0 = gcd(g0, g[0])
    if g0 == 0:
        # all generators lie on the second axis
        c = 0
        for g in gens:
            c = gcd(c, g[1])
        if t[0] != 0:
            return DependenceResult("independent")
        if t[1] == 0:
            return DependenceResult("dependent", 1)
        return DependenceResult("dependent", c // gcd(c, t[1]))

    u = _combination_with_first_coordinate(gens, g0)
    c = 0
    for g in gens:
        factor = g[0] // g0
        c = gcd(c, g[1] - factor * u[1])
    d1 = g0 // gcd(g0, t[0])
    rho = d1 * t[1] - (d1 * t[0] // g0) * u[1]
    if c == 0:
        if rho == 0:
            return DependenceResult("dependent", d1)
        return DependenceResult("independent")
    k = c // gcd(c, rho) if rho else 1
    return DependenceResult("dependent", d1 * k)


def _combination_with_first_coordinate(gens, g0):
    """An integer combination of the generators whose first coordinate is g0."""
    acc = gens[0]
    for g in gens[1:]:
        acc = _euclid_combine(acc, g)
    if acc[0] < 0:
        acc = (-acc[0], -acc[1])
    assert acc[0] == g0, "gcd combination failed"
    return acc


def _euclid_combine(a, b):
    """Vector with first coordinate gcd(a[0], b[0]) inside the span of a, b."""
    if b[0] == 0:
        return a
    if a[0] == 0:
        return b
    # extended euclid on first coordinates
    old_r, r = a[0], b[0]
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return (old_r, old_s * a[1] + old_t * b[1])


# -- helpers -----------------------------------------------------------------------


def _sub_exacts(a: Exact, b: Exact) -> Exact:
    result = a - b
    if isinstance(result, QuadraticIrrational) and result.is_rational():
        return result.as_fraction()
    return result


def _exact_to_bounds(value: Exact) -> tuple[Fraction, Fraction]:
    if isinstance(value, QuadraticIrrational):
        return value.bounds(96)
    f = Fraction(value)
    return f, f
