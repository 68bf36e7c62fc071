import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rfid_sampler import (
    TimingModel,
    cost_ratio_limit,
    expected_protocol_bits,
    lower_bound_bits,
    lower_bound_seconds,
    mu,
    reliability_number,
    rho,
    seed_success_lower_bound,
    success_probability,
    success_probability_approx,
)


class TestTiming:
    def test_t96_exact(self):
        assert TimingModel().transmission_time(96) == pytest.approx(3897.5e-6, abs=0)

    def test_linear_in_bits(self):
        t = TimingModel()
        assert t.transmission_time(48) == pytest.approx(t.transmission_time(96) / 2)
        assert t.transmission_time(0) == 0.0

    def test_from_rate_close_to_quoted_constant(self):
        derived = TimingModel.from_rate().transmission_time(96)
        assert derived == pytest.approx(3897.5e-6, rel=1e-4)

    def test_negative_bits_rejected(self):
        with pytest.raises(ValueError):
            TimingModel().transmission_time(-1)


class TestLowerBound:
    def test_gamma_formula(self):
        assert lower_bound_bits([10] * 100) == pytest.approx(1000 * math.log2(math.e))
        assert lower_bound_bits([1]) == pytest.approx(math.log2(math.e))

    def test_single_sample_time(self):
        assert lower_bound_seconds([1]) == pytest.approx(58.6e-6, rel=1e-2)

    def test_ratio_limit(self):
        assert cost_ratio_limit() == pytest.approx(1.8842, abs=1e-4)

    def test_expected_bits_dominated_by_ec(self):
        got = expected_protocol_bits([1000], [100])
        assert got == pytest.approx(
            math.e * 100 + math.log2(96 / math.log2(1000)) + math.log2(100)
        )

    def test_ratio_decreases_toward_limit(self):
        ratios = [
            expected_protocol_bits([10 * c], [c]) / lower_bound_bits([c])
            for c in (10, 100, 1000, 10_000)
        ]
        assert all(a > b for a, b in zip(ratios, ratios[1:]))
        assert ratios[-1] == pytest.approx(cost_ratio_limit(), rel=1e-2)

    def test_validation(self):
        with pytest.raises(ValueError):
            lower_bound_bits([])
        with pytest.raises(ValueError):
            expected_protocol_bits([5], [6])


class TestSeedBounds:
    def test_anchor_values(self):
        assert mu(1) == pytest.approx(0.3996, abs=1e-4)
        assert rho(1) == pytest.approx(0.1991, abs=1e-4)

    def test_success_floor_above_04(self):
        assert seed_success_lower_bound(1) > 0.4
        assert seed_success_lower_bound(100) > 0.4

    @given(c=st.integers(1, 5000))
    @settings(max_examples=200, deadline=None)
    def test_strictly_decreasing(self, c):
        assert mu(c + 1) < mu(c)
        assert rho(c + 1) < rho(c)


class TestReliability:
    @pytest.mark.parametrize("alpha,eps,expected", [
        (0.9, 0.01, 44),
        (0.7, 0.01, 13),
        (0.05, 0.01, 2),
    ])
    def test_reference_points(self, alpha, eps, expected):
        assert reliability_number(alpha, eps) == expected

    def test_monotone_in_alpha(self):
        cs = [reliability_number(a / 100, 0.01) for a in range(5, 91, 5)]
        assert cs == sorted(cs)

    def test_guarantee_holds(self):
        for alpha in (0.3, 0.6, 0.9):
            c = reliability_number(alpha, 0.01)
            assert success_probability_approx(alpha, c) >= 0.99

    def test_validation(self):
        for bad in (0.0, 1.0, -1.0):
            with pytest.raises(ValueError):
                reliability_number(bad, 0.01)
            with pytest.raises(ValueError):
                reliability_number(0.5, bad)


class TestSuccessProbability:
    def test_exact_known_values(self):
        # one missing of two, sample one: succeed half the time
        assert success_probability(2, 1, 1) == pytest.approx(0.5)
        # sampling more tags than are missing always succeeds
        assert success_probability(10, 3, 4) == 1.0
        # without replacement beats the with-replacement approximation
        exact = success_probability(100, 70, 5)
        approx = success_probability_approx(0.7, 5)
        assert exact >= approx

    def test_all_present(self):
        assert success_probability(50, 0, 1) == 1.0

    @given(
        n=st.integers(1, 200),
        data=st.data(),
    )
    @settings(max_examples=100, deadline=None)
    def test_bounds_and_monotonicity(self, n, data):
        missing = data.draw(st.integers(0, n))
        c = data.draw(st.integers(1, n))
        p = success_probability(n, missing, c)
        assert 0.0 <= p <= 1.0
        if c < n:
            assert success_probability(n, missing, c + 1) >= p
