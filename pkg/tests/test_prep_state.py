import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prepspace.errors import DimensionMismatch, NegativeProbability, NotNormalized
from prepspace.prep_state import (
    CartesianChart,
    Preparation,
    TangentDisplacement,
    from_cartesian,
    gauge_fix,
    new_preparation,
    prep_distance_check,
    shift_all_phases,
    to_cartesian,
    wrap_angle,
)


class TestNewPreparation:
    def test_basis_state(self):
        s = new_preparation([1, 0], [0, 0])
        assert s.n == 2
        np.testing.assert_allclose(s.p, [1, 0])

    def test_equal_superposition(self):
        s = new_preparation([0.5, 0.5], [0, np.pi])
        np.testing.assert_allclose(s.p, [0.5, 0.5])
        np.testing.assert_allclose(s.phi, [0, np.pi])

    def test_not_normalized(self):
        with pytest.raises(NotNormalized):
            new_preparation([0.7, 0.7], [0, 0])

    def test_negative_probability(self):
        with pytest.raises(NegativeProbability):
            new_preparation([1.1, -0.1], [0, 0])

    def test_length_mismatch(self):
        with pytest.raises(DimensionMismatch):
            new_preparation([1, 0], [0, 0, 0])

    def test_single_outcome_rejected(self):
        with pytest.raises(DimensionMismatch):
            new_preparation([1.0], [0.0])

    def test_rescales_small_deviation(self):
        s = new_preparation([0.5 + 2e-10, 0.5], [0, 0])
        assert math.isclose(float(s.p.sum()), 1.0, abs_tol=1e-15)

    def test_immutable(self):
        s = new_preparation([0.5, 0.5], [0, 0])
        with pytest.raises(ValueError):
            s.p[0] = 0.3


class TestChartMaps:
    def test_basis_state(self):
        c = to_cartesian(new_preparation([1, 0], [0, 0]))
        np.testing.assert_allclose(c.x, [1, 0])
        np.testing.assert_allclose(c.y, [0, 0])

    def test_phase_pi(self):
        c = to_cartesian(new_preparation([0.5, 0.5], [0, np.pi]))
        np.testing.assert_allclose(c.x, [0.70710678, -0.70710678])
        np.testing.assert_allclose(c.y, [0, 0], atol=1e-15)

    def test_quarter_phase(self):
        c = to_cartesian(new_preparation([0.25, 0.75], [0, np.pi / 2]))
        np.testing.assert_allclose(c.x, [0.5, 0], atol=1e-15)
        np.testing.assert_allclose(c.y, [0, 0.86602540], atol=1e-8)

    def test_from_cartesian_basis(self):
        s = from_cartesian(CartesianChart([1, 0], [0, 0]))
        np.testing.assert_allclose(s.p, [1, 0])
        np.testing.assert_allclose(s.phi, [0, 0])

    def test_from_cartesian_imaginary(self):
        s = from_cartesian(CartesianChart([0, 0], [1, 0]))
        np.testing.assert_allclose(s.p, [1, 0])
        np.testing.assert_allclose(s.phi, [np.pi / 2, 0])

    def test_from_cartesian_equal(self):
        r = math.sqrt(0.5)
        s = from_cartesian(CartesianChart([r, r], [0, 0]))
        np.testing.assert_allclose(s.p, [0.5, 0.5], atol=1e-12)
        np.testing.assert_allclose(s.phi, [0, 0])

    def test_from_cartesian_rejects_unnormalized(self):
        with pytest.raises(NotNormalized):
            from_cartesian(CartesianChart([1, 1], [0, 0]))

    def test_round_trip_preserves_sum(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            z = rng.standard_normal(4) + 1j * rng.standard_normal(4)
            z /= np.linalg.norm(z)
            chart = CartesianChart(z.real, z.imag)
            back = to_cartesian(from_cartesian(chart))
            np.testing.assert_allclose(back.x, chart.x, atol=1e-12)
            np.testing.assert_allclose(back.y, chart.y, atol=1e-12)


class TestGaugeFix:
    def test_common_constant_removed(self):
        s = gauge_fix(new_preparation([0.5, 0.5], [1.0, 1.0]))
        np.testing.assert_allclose(s.phi, [0, 0])

    def test_reference_is_last_component(self):
        s = gauge_fix(new_preparation([0.5, 0.5], [np.pi / 2, np.pi]))
        np.testing.assert_allclose(s.phi, [-np.pi / 2, 0])

    def test_dead_component_reset(self):
        s = gauge_fix(new_preparation([1, 0], [2.0, 5.0]))
        np.testing.assert_allclose(s.phi, [0, 0])

    def test_idempotent_exactly(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            s = new_preparation(rng.dirichlet(np.ones(3)), rng.uniform(-9, 9, 3))
            once = gauge_fix(s)
            twice = gauge_fix(once)
            assert np.array_equal(once.phi, twice.phi)
            assert np.array_equal(once.p, twice.p)


class TestDistanceCheck:
    def test_identical(self):
        s = new_preparation([0.3, 0.7], [0.1, 0.4])
        assert prep_distance_check(s, s) == 0.0

    def test_gauge_invariance(self):
        s = new_preparation([0.3, 0.7], [0.1, 0.4])
        assert prep_distance_check(s, shift_all_phases(s, 0.3)) < 1e-12

    def test_probability_difference(self):
        a = new_preparation([0.5, 0.5], [0, 0])
        b = new_preparation([0.6, 0.4], [0, 0])
        assert math.isclose(prep_distance_check(a, b), 0.1, rel_tol=1e-12)

    def test_dimension_mismatch(self):
        a = new_preparation([0.5, 0.5], [0, 0])
        b = new_preparation([0.3, 0.3, 0.4], [0, 0, 0])
        with pytest.raises(DimensionMismatch):
            prep_distance_check(a, b)


class TestWrapAngle:
    @pytest.mark.parametrize(
        "raw, expected",
        [(0.0, 0.0), (np.pi, np.pi), (-np.pi, np.pi), (3 * np.pi / 2, -np.pi / 2),
         (2 * np.pi, 0.0), (-0.1, -0.1)],
    )
    def test_values(self, raw, expected):
        assert math.isclose(wrap_angle(raw), expected, abs_tol=1e-12)

    @given(st.floats(min_value=-50, max_value=50))
    @settings(max_examples=200, deadline=None)
    def test_range_and_equivalence(self, x):
        w = wrap_angle(x)
        assert -np.pi < w <= np.pi
        assert math.isclose(math.cos(w), math.cos(x), abs_tol=1e-9)
        assert math.isclose(math.sin(w), math.sin(x), abs_tol=1e-9)


class TestTangentDisplacement:
    def test_zero_sum_enforced(self):
        with pytest.raises(NotNormalized):
            TangentDisplacement([0.1, 0.1], [0, 0])

    def test_valid(self):
        d = TangentDisplacement([0.1, -0.1], [0.2, 0.0])
        assert d.n == 2


@given(
    st.lists(st.floats(min_value=0.01, max_value=1.0), min_size=2, max_size=6),
    st.floats(min_value=-20, max_value=20),
)
@settings(max_examples=100, deadline=None)
def test_gauge_shift_never_matters(weights, shift):
    p = np.asarray(weights) / np.sum(weights)
    phi = np.linspace(-2, 2, len(weights))
    s = new_preparation(p, phi)
    assert prep_distance_check(s, shift_all_phases(s, shift)) < 1e-11


def test_round_trip_recovers_polar_up_to_gauge():
    rng = np.random.default_rng(5)
    for _ in range(50):
        s = new_preparation(rng.dirichlet(np.ones(4)), rng.uniform(-np.pi, np.pi, 4))
        back = from_cartesian(to_cartesian(s))
        assert prep_distance_check(s, back) < 1e-12
