"""The Riemannian line element on preparation space and its cross-checks.

The squared element between neighboring preparations splits into a classical
part (the chi-squared / Fisher statistical distance between the probability
vectors) and a variance part (the probability-weighted variance of the phase
displacement, which kills the gauge direction).  Both parts are nonnegative
and the total is invariant under valid frame changes; the total also matches
the squared Fubini-Study angle between the corresponding rays to second
order.  Those two statements are what :func:`invariance_residual` and the
property suite measure numerically.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BoundaryState, DimensionMismatch, NotNormalized
from .frame_transform import FrameChange, apply_frame
from .hilbert_oracle import to_amplitudes
from .prep_state import (
    EPS_PROB,
    Preparation,
    CartesianChart,
    TangentDisplacement,
    wrap_angle,
)


@dataclass(frozen=True)
class LineElementBreakdown:
    """Squared line element split into its classical and phase-variance parts."""

    classical_part: float
    variance_part: float

    @property
    def total(self) -> float:
        return self.classical_part + self.variance_part


def statistical_distance2(p, dp) -> float:
    """Classical squared statistical distance sum_i dp_i^2 / (4 p_i).

    Requires p_i >= EPS_PROB wherever dp_i != 0 (the metric is genuinely
    singular on the boundary) and sum(dp) = 0 within 1e-9.
    """
    p = np.asarray(p, dtype=float)
    dp = np.asarray(dp, dtype=float)
    if p.shape != dp.shape:
        raise DimensionMismatch(f"p has shape {p.shape}, dp has shape {dp.shape}")
    total = float(np.sum(dp))
    if abs(total) > 1e-9:
        raise NotNormalized(f"sum(dp) = {total:.3e} does not preserve normalization")
    moving = dp != 0.0
    if np.any(p[moving] < EPS_PROB):
        raise BoundaryState("dp is nonzero at a component with vanishing probability")
    if not np.any(moving):
        return 0.0
    return float(np.sum(dp[moving] ** 2 / (4.0 * p[moving])))


def phase_variance2(p, dphi) -> float:
    """Probability-weighted variance of the phase displacement.

    Evaluated in the centered form sum_i p_i (dphi_i - mean)^2, which is
    algebraically identical to sum p dphi^2 - (sum p dphi)^2 on the simplex
    but cannot go negative through round-off.
    """
    p = np.asarray(p, dtype=float)
    dphi = np.asarray(dphi, dtype=float)
    if p.shape != dphi.shape:
        raise DimensionMismatch(f"p has shape {p.shape}, dphi has shape {dphi.shape}")
    mean = float(np.sum(p * dphi)) / float(np.sum(p))
    return float(np.sum(p * (dphi - mean) ** 2))


def line_element2(s: Preparation, d: TangentDisplacement) -> LineElementBreakdown:
    """Squared line element of a displacement at a preparation."""
    if s.n != d.n:
        raise DimensionMismatch(f"state is {s.n}-dim, displacement is {d.n}-dim")
    return LineElementBreakdown(
        classical_part=statistical_distance2(s.p, d.dp),
        variance_part=phase_variance2(s.p, d.dphi),
    )


def displacement_to_cartesian(s: Preparation, d: TangentDisplacement):
    """Push a (dp, dphi) displacement forward to the Cartesian chart."""
    r = np.sqrt(s.p)
    c, si = np.cos(s.phi), np.sin(s.phi)
    dx = d.dp * c / (2.0 * r) - r * si * d.dphi
    dy = d.dp * si / (2.0 * r) + r * c * d.dphi
    return dx, dy


def cartesian_line_element2(chart: CartesianChart, dx, dy) -> float:
    """The same squared element in Cartesian variables:
    sum (dx^2 + dy^2) - [sum (x dy - y dx)]^2."""
    dx = np.asarray(dx, dtype=float)
    dy = np.asarray(dy, dtype=float)
    gauge = float(np.sum(chart.x * dy - chart.y * dx))
    return float(np.sum(dx * dx + dy * dy) - gauge * gauge)


def fubini_study_angle(s1: Preparation, s2: Preparation) -> float:
    """Angle between the rays of the two preparations, arccos |<psi1|psi2>| in [0, pi/2].

    For nearly parallel rays the arccos form loses half the significant digits,
    so the angle is then evaluated as arcsin of the norm of psi2's component
    orthogonal to psi1, which is the same quantity.
    """
    if s1.n != s2.n:
        raise DimensionMismatch(f"dimensions differ: {s1.n} vs {s2.n}")
    a1 = to_amplitudes(s1).amplitudes
    a2 = to_amplitudes(s2).amplitudes
    a1 = a1 / np.linalg.norm(a1)
    a2 = a2 / np.linalg.norm(a2)
    overlap = complex(np.vdot(a1, a2))
    mag = abs(overlap)
    if mag < 0.7:
        return float(np.arccos(mag))
    perp = a2 - overlap * a1
    return float(np.arcsin(min(1.0, float(np.linalg.norm(perp)))))


def _finite_ds2(pa, phia, pb, phib) -> float:
    # Squared-element estimate for a finitely separated pair: metric
    # coefficients at the midpoint, displacement from the (wrapped) coordinate
    # differences.  Third-order accurate in the separation.
    p_mid = 0.5 * (pa + pb)
    dp = pb - pa
    dphi = wrap_angle(phib - phia)
    return statistical_distance2(p_mid, dp) + phase_variance2(p_mid, dphi)


def invariance_residual(f: FrameChange, s: Preparation, d: TangentDisplacement, h: float) -> float:
    """Relative violation of line-element invariance under a frame change.

    Transforms the pair (s, s + h*d) by the frame and compares the squared
    element of the transformed pair against that of the original pair, both
    evaluated with the same midpoint finite-difference estimator, so the
    comparison degrades only at O(h^2).  Identity frames give 0 exactly.
    """
    if s.n != d.n:
        raise DimensionMismatch(f"state is {s.n}-dim, displacement is {d.n}-dim")
    if h <= 0.0:
        raise ValueError("step h must be positive")
    s2 = Preparation(s.p + h * d.dp, s.phi + h * d.dphi)
    if np.any(s2.p < 0.0):
        raise BoundaryState("h * dp pushes a probability negative; state is too close to the boundary")
    a = apply_frame(f, s)
    b = apply_frame(f, s2)
    ds2 = _finite_ds2(s.p, s.phi, s2.p, s2.phi)
    ds2_new = _finite_ds2(a.p, a.phi, b.p, b.phi)
    if ds2 == 0.0:
        return abs(ds2_new)
    return abs(ds2_new - ds2) / ds2
