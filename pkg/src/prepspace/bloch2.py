"""Two-level specialization: the preparation space is a sphere of radius 1/2.

Sphere coordinates are theta = 2 arccos(sqrt(p_1)) and the relative phase
phi = phi_1 - phi_2.  Frame changes act as rotations; the colatitude obeys
the spherical cosine law

    cos(theta') = cos(alpha) cos(theta) + sin(alpha) sin(theta) cos(phi - beta)

for the rotation whose conditional probabilities are w_11 = w_22 =
cos^2(alpha/2), w_12 = w_21 = sin^2(alpha/2) and whose phase offsets satisfy
beta = beta_11 - beta_12.  Only that combination is pinned; the remaining
offsets here are completed as beta_11 = beta, beta_12 = beta_21 = 0,
beta_22 = pi - beta, which the orthogonality constraints force (up to
residual freedom) for this w.  The new longitude depends on the completion,
so longitude checks go through the general frame transform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch
from .frame_transform import FrameChange
from .prep_state import Preparation, wrap_angle


@dataclass(frozen=True)
class SpherePoint:
    """Colatitude theta in [0, pi] and longitude phi in (-pi, pi]; phi = 0 at the poles."""

    theta: float
    phi: float

    def __post_init__(self):
        theta = float(self.theta)
        if not 0.0 <= theta <= math.pi:
            raise ValueError(f"theta = {theta!r} outside [0, pi]")
        phi = wrap_angle(float(self.phi))
        if theta == 0.0 or theta == math.pi:
            phi = 0.0
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", phi)


def to_sphere(s: Preparation) -> SpherePoint:
    """Sphere coordinates of a two-level preparation."""
    if s.n != 2:
        raise DimensionMismatch(f"expected a two-level state, got n = {s.n}")
    root = min(1.0, math.sqrt(s.p[0]))
    theta = 2.0 * math.acos(root)
    return SpherePoint(theta, wrap_angle(s.phi[0] - s.phi[1]))


def from_sphere(pt: SpherePoint) -> Preparation:
    """The gauge-fixed two-level preparation at a sphere point."""
    half = pt.theta / 2.0
    p = np.array([math.cos(half) ** 2, math.sin(half) ** 2])
    return Preparation(p, np.array([pt.phi, 0.0]))


def sphere_line_element2(pt: SpherePoint, dtheta: float, dphi: float) -> float:
    """Squared line element (1/4)(dtheta^2 + sin^2(theta) dphi^2): a sphere of radius 1/2."""
    return 0.25 * (dtheta**2 + math.sin(pt.theta) ** 2 * dphi**2)


def rotation_frame(alpha: float, beta: float) -> FrameChange:
    """The two-level frame change corresponding to a rotation by (alpha, beta)."""
    if not 0.0 <= alpha <= math.pi:
        raise ValueError(f"alpha = {alpha!r} outside [0, pi]")
    c2 = math.cos(alpha / 2.0) ** 2
    s2 = math.sin(alpha / 2.0) ** 2
    w = np.array([[c2, s2], [s2, c2]])
    b = np.array([[beta, 0.0], [0.0, math.pi - beta]])
    return FrameChange(w, b)


def cosine_law_theta(pt: SpherePoint, alpha: float, beta: float) -> float:
    """New colatitude under a rotation by (alpha, beta), by the spherical cosine law."""
    if not 0.0 <= alpha <= math.pi:
        raise ValueError(f"alpha = {alpha!r} outside [0, pi]")
    c = math.cos(alpha) * math.cos(pt.theta) + math.sin(alpha) * math.sin(pt.theta) * math.cos(
        pt.phi - beta
    )
    return math.acos(max(-1.0, min(1.0, c)))


def evolve_two_level(pt0: SpherePoint, E1: float, E2: float, t: float) -> SpherePoint:
    """Closed-form evolution under the diagonal Hamiltonian diag(E1, E2).

    The colatitude is constant and the longitude advances at -(E1 - E2), so
    trajectories are circles of constant theta.
    """
    if pt0.theta == 0.0 or pt0.theta == math.pi:
        return pt0
    return SpherePoint(pt0.theta, wrap_angle(pt0.phi - (E1 - E2) * t))
