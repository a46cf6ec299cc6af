import math

import numpy as np
import pytest

from prepspace.errors import BoundaryState, DimensionMismatch
from prepspace.frame_transform import frame_from_unitary, random_frame
from prepspace.metric import (
    cartesian_line_element2,
    displacement_to_cartesian,
    fubini_study_angle,
    invariance_residual,
    line_element2,
    phase_variance2,
    statistical_distance2,
)
from prepspace.prep_state import (
    Preparation,
    TangentDisplacement,
    new_preparation,
    to_cartesian,
)

HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)


def random_state_and_displacement(n, rng, min_p=1e-2):
    while True:
        p = rng.dirichlet(np.ones(n))
        if p.min() >= min_p:
            break
    s = new_preparation(p, rng.uniform(-np.pi, np.pi, n))
    dp = rng.normal(size=n)
    dp -= dp.mean()
    return s, TangentDisplacement(dp, rng.normal(size=n))


class TestStatisticalDistance:
    def test_symmetric_split(self):
        # eps^2 (1/2 + 1/2) for p = (1/2, 1/2)
        assert math.isclose(statistical_distance2([0.5, 0.5], [0.01, -0.01]), 1e-4, rel_tol=1e-12)

    def test_zero_displacement(self):
        assert statistical_distance2([0.25, 0.75], [0, 0]) == 0.0

    def test_uneven_probabilities(self):
        val = statistical_distance2([0.25, 0.75], [0.01, -0.01])
        expected = 1e-4 * (1 / (4 * 0.25) + 1 / (4 * 0.75))
        assert math.isclose(val, expected, rel_tol=1e-12)

    def test_boundary_rejected(self):
        with pytest.raises(BoundaryState):
            statistical_distance2([1.0, 0.0], [0.01, -0.01])

    def test_boundary_allowed_when_not_moving(self):
        assert statistical_distance2([1.0, 0.0], [0.0, 0.0]) == 0.0

    def test_norm_breaking_displacement_rejected(self):
        from prepspace.errors import NotNormalized

        with pytest.raises(NotNormalized):
            statistical_distance2([0.5, 0.5], [0.01, 0.01])


class TestPhaseVariance:
    def test_common_constant_is_gauge(self):
        assert phase_variance2([0.3, 0.3, 0.4], [1.7, 1.7, 1.7]) < 1e-30

    def test_two_level_value(self):
        delta = 0.3
        assert math.isclose(phase_variance2([0.5, 0.5], [delta, 0]), delta**2 / 4, rel_tol=1e-12)

    def test_point_mass_measures_nothing(self):
        assert phase_variance2([1.0, 0.0], [0.0, 5.0]) == 0.0

    def test_matches_pairwise_form(self):
        rng = np.random.default_rng(1)
        for _ in range(50):
            n = int(rng.integers(2, 6))
            p = rng.dirichlet(np.ones(n))
            dphi = rng.normal(size=n)
            direct = phase_variance2(p, dphi)
            pairwise = sum(
                p[i] * p[j] * (dphi[i] - dphi[j]) ** 2
                for i in range(n)
                for j in range(i + 1, n)
            )
            assert math.isclose(direct, pairwise, rel_tol=1e-10, abs_tol=1e-12)

    def test_never_negative(self):
        rng = np.random.default_rng(2)
        for _ in range(200):
            p = rng.dirichlet(np.ones(3))
            assert phase_variance2(p, np.full(3, rng.uniform(-9, 9))) >= 0.0


class TestLineElement:
    def test_zero(self):
        s = new_preparation([0.5, 0.5], [0, 0])
        assert line_element2(s, TangentDisplacement([0, 0], [0, 0])).total == 0.0

    def test_sum_of_parts(self):
        s = new_preparation([0.5, 0.5], [0, 0])
        d = TangentDisplacement([0.01, -0.01], [0.02, 0])
        breakdown = line_element2(s, d)
        assert math.isclose(breakdown.classical_part, 1e-4, rel_tol=1e-12)
        assert math.isclose(breakdown.variance_part, 1e-4, rel_tol=1e-12)
        assert math.isclose(breakdown.total, 2e-4, rel_tol=1e-12)

    def test_polar_cartesian_agreement(self):
        rng = np.random.default_rng(3)
        for _ in range(100):
            n = int(rng.integers(2, 5))
            s, d = random_state_and_displacement(n, rng, min_p=1e-4)
            dx, dy = displacement_to_cartesian(s, d)
            cart = cartesian_line_element2(to_cartesian(s), dx, dy)
            assert abs(line_element2(s, d).total - cart) < 1e-10


class TestFubiniStudyAngle:
    def test_same_state(self):
        s = new_preparation([0.3, 0.7], [0.2, 0.4])
        assert fubini_study_angle(s, s) < 1e-12

    def test_orthogonal(self):
        a = new_preparation([1, 0], [0, 0])
        b = new_preparation([0, 1], [0, 0])
        assert math.isclose(fubini_study_angle(a, b), np.pi / 2, abs_tol=1e-12)

    def test_opposite_phases_orthogonal(self):
        a = new_preparation([0.5, 0.5], [0, 0])
        b = new_preparation([0.5, 0.5], [0, np.pi])
        assert math.isclose(fubini_study_angle(a, b), np.pi / 2, abs_tol=1e-12)

    def test_gauge_invariant(self):
        rng = np.random.default_rng(4)
        s1, _ = random_state_and_displacement(3, rng)
        s2, _ = random_state_and_displacement(3, rng)
        shifted = Preparation(s2.p, s2.phi + 1.23)
        assert math.isclose(
            fubini_study_angle(s1, s2), fubini_study_angle(s1, shifted), abs_tol=1e-13
        )

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            fubini_study_angle(
                new_preparation([1, 0], [0, 0]), new_preparation([1, 0, 0], [0, 0, 0])
            )

    def test_second_order_agreement_with_line_element(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            s, d = random_state_and_displacement(3, rng, min_p=5e-2)
            eps = 1e-4
            moved = Preparation(s.p + eps * d.dp, s.phi + eps * d.dphi)
            angle2 = fubini_study_angle(s, moved) ** 2
            ds2 = eps**2 * line_element2(s, d).total
            assert abs(angle2 - ds2) < 1e-10 * max(1.0, ds2 / eps**3)


class TestInvarianceResidual:
    def test_identity_frame_exact(self):
        # The only residual left for the identity is chart-reconstruction
        # round-off divided by the probe scale, so use the coarser probe.
        rng = np.random.default_rng(6)
        s, d = random_state_and_displacement(3, rng)
        f = frame_from_unitary(np.eye(3))
        assert invariance_residual(f, s, d, h=1e-4) < 1e-12

    def test_hadamard(self):
        s = new_preparation([0.3, 0.7], [0.4, -0.2])
        d = TangentDisplacement([0.5, -0.5], [0.3, 1.0])
        f = frame_from_unitary(HADAMARD)
        assert invariance_residual(f, s, d, h=1e-5) < 1e-6

    def test_random_frames(self):
        rng = np.random.default_rng(7)
        for n in (2, 3, 4):
            for k in range(10):
                s, d = random_state_and_displacement(n, rng)
                f = random_frame(n, 1000 * n + k)
                assert invariance_residual(f, s, d, h=1e-5) < 1e-6

    def test_residual_shrinks_with_h(self):
        rng = np.random.default_rng(8)
        s, d = random_state_and_displacement(3, rng)
        f = random_frame(3, 99)
        coarse = invariance_residual(f, s, d, h=1e-3)
        fine = invariance_residual(f, s, d, h=1e-5)
        assert fine < coarse
