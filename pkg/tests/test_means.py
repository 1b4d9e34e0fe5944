"""Means of positive reals and the bounds on |A^s - L_s^s|."""

import numpy as np
import pytest

from ostrowski.bounds import (
    bound_holder_hadamard,
    midpoint_power_mean,
    midpoint_sconvex_abs,
)
from ostrowski.core import DomainError, EndpointData, Interval, make_conjugate
from ostrowski.means import (
    arithmetic_mean,
    logarithmic_mean,
    means_gap,
    means_gap_bound,
    p_logarithmic_mean,
    slope_endpoint_data,
)
from ostrowski.toolkit import make_breckner, true_deviation

S3_GRID = [
    (a, a * ratio, s)
    for a in (0.5, 1.0, 2.0)
    for ratio in (1.5, 2.0, 4.0)
    for s in np.arange(0.1, 0.91, 0.1)
]


class TestElementaryMeans:
    def test_arithmetic(self):
        assert arithmetic_mean(1.0, 2.0) == 1.5
        assert arithmetic_mean(3.7, 3.7) == 3.7
        assert arithmetic_mean(0.1, 10.0) == pytest.approx(5.05)

    def test_arithmetic_rejects_nonpositive(self):
        with pytest.raises(DomainError):
            arithmetic_mean(0.0, 1.0)
        with pytest.raises(DomainError):
            arithmetic_mean(1.0, -2.0)

    def test_logarithmic(self):
        assert logarithmic_mean(2.5, 2.5) == 2.5
        assert logarithmic_mean(1.0, 2.0) == pytest.approx(
            1.4426950408889634, rel=1e-14
        )

    def test_logarithmic_below_arithmetic(self):
        rng = np.random.default_rng(42)
        for _ in range(100):
            a = rng.uniform(0.01, 10.0)
            b = a + rng.uniform(1e-6, 10.0)
            assert logarithmic_mean(a, b) <= arithmetic_mean(a, b)

    def test_power_logarithmic(self):
        assert p_logarithmic_mean(4.0, 4.0, 0.5) == 4.0
        assert p_logarithmic_mean(1.0, 2.0, 0.5) == pytest.approx(
            1.4858425557811644, rel=1e-12
        )

    def test_order_one_collapses_to_arithmetic(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            a = rng.uniform(0.01, 10.0)
            b = a + rng.uniform(1e-6, 10.0)
            assert p_logarithmic_mean(a, b, 1.0) == pytest.approx(
                arithmetic_mean(a, b), rel=1e-12
            )

    @pytest.mark.parametrize("r", [-1.0, 0.0])
    def test_excluded_orders(self, r):
        with pytest.raises(DomainError):
            p_logarithmic_mean(1.0, 2.0, r)

    def test_nonpositive_rejected(self):
        with pytest.raises(DomainError):
            logarithmic_mean(-1.0, 2.0)
        with pytest.raises(DomainError):
            p_logarithmic_mean(1.0, 0.0, 0.5)


class TestMeansGap:
    def test_frozen_example(self):
        assert means_gap(1.0, 2.0, 0.5) == pytest.approx(
            0.005793454894128984, abs=1e-12
        )

    def test_continuity_toward_s_one(self):
        # A^1 equals the order-1 mean exactly, so the gap vanishes as s -> 1
        assert means_gap(1.0, 2.0, 0.999) == pytest.approx(0.0, abs=1e-4)

    def test_matches_midpoint_deviation_of_power_function(self):
        tol = 1e-11
        for a, b, s in ((1.0, 2.0, 0.5), (0.5, 2.0, 0.3), (2.0, 8.0, 0.7)):
            gap = means_gap(a, b, s, oracle_tol=None)
            oracle = true_deviation(
                make_breckner(0.0, 1.0, 0.0, s), Interval(a, b), (a + b) / 2, tol
            )
            assert abs(gap - oracle) <= 10 * tol

    def test_s_one_rejected(self):
        with pytest.raises(DomainError):
            means_gap(1.0, 2.0, 1.0)

    def test_unordered_rejected(self):
        with pytest.raises(DomainError):
            means_gap(2.0, 1.0, 0.5)


class TestMeansGapBound:
    def test_frozen_p1(self):
        res = means_gap_bound(1.0, 2.0, 0.5, "p1")
        assert res.value == pytest.approx(0.14714045207910317, rel=1e-12)
        assert res.theorem_id == "p1"

    def test_frozen_p2(self):
        res = means_gap_bound(1.0, 2.0, 0.5, "p2", p=2.0)
        assert res.value == pytest.approx(0.13971946208343752, rel=1e-12)

    def test_frozen_p3(self):
        res = means_gap_bound(1.0, 2.0, 0.5, "p3", q=2.0)
        assert res.value == pytest.approx(0.12456214868187001, rel=1e-12)

    def test_missing_variant_parameter(self):
        with pytest.raises(DomainError, match="p2 requires"):
            means_gap_bound(1.0, 2.0, 0.5, "p2")
        with pytest.raises(DomainError, match="p3 requires"):
            means_gap_bound(1.0, 2.0, 0.5, "p3")

    def test_unknown_variant(self):
        with pytest.raises(DomainError):
            means_gap_bound(1.0, 2.0, 0.5, "p9")

    def test_domination_grid(self):
        for a, b, s in S3_GRID:
            s = float(s)
            gap = means_gap(a, b, s, oracle_tol=None)
            for res in (
                means_gap_bound(a, b, s, "p1"),
                means_gap_bound(a, b, s, "p2", p=2.0),
                means_gap_bound(a, b, s, "p3", q=2.0),
            ):
                assert gap <= res.value + 1e-9, (a, b, s, res.theorem_id)


class TestConsistencyWithGeneralBounds:
    def test_p1_equals_midpoint_sconvex_abs(self):
        # the first gap bound is exactly the midpoint bound fed with the
        # exact slope magnitudes of t^s
        for a, b, s in S3_GRID:
            s = float(s)
            ep = slope_endpoint_data(a, b, s)
            direct = means_gap_bound(a, b, s, "p1").value
            general = midpoint_sconvex_abs(Interval(a, b), s, ep).value
            assert direct == pytest.approx(general, rel=1e-12)

    def test_p2_equals_holder_hadamard_at_midpoint(self):
        for a, b, s in S3_GRID:
            s = float(s)
            ep = slope_endpoint_data(a, b, s)
            direct = means_gap_bound(a, b, s, "p2", p=2.0).value
            general = bound_holder_hadamard(
                Interval(a, b), (a + b) / 2.0, s, make_conjugate(2.0), ep
            ).value
            assert direct == pytest.approx(general, rel=1e-12)

    def test_p3_equals_midpoint_power_mean(self):
        for a, b, s in S3_GRID:
            s = float(s)
            ep = slope_endpoint_data(a, b, s)
            direct = means_gap_bound(a, b, s, "p3", q=2.0).value
            general = midpoint_power_mean(Interval(a, b), 2.0, ep).value
            assert direct == pytest.approx(general, rel=1e-12)


class TestSlopeEndpointData:
    def test_values(self):
        ep = slope_endpoint_data(1.0, 4.0, 0.5)
        assert ep.da == pytest.approx(0.5)
        assert ep.db == pytest.approx(0.25)
        assert ep.dx == pytest.approx(0.5 * 2.5 ** (-0.5))

    def test_matches_exact_derivative(self):
        fn = make_breckner(0.0, 1.0, 0.0, 0.5)
        ep = slope_endpoint_data(1.0, 2.0, 0.5)
        assert ep.da == pytest.approx(abs(fn.deriv(1.0)), rel=1e-15)
        assert ep.db == pytest.approx(abs(fn.deriv(2.0)), rel=1e-15)
