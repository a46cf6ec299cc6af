"""Preparation states in the polar (p, phi) and Cartesian (x, y) charts.

A preparation assigns to each of the n outcomes of a measurement context a
probability p_i and a phase phi_i (radians).  Only phase differences are
physical; a common additive constant is gauge.  Probabilities live on the
unit simplex, and the polar chart is singular on its boundary, so phases of
components with vanishing probability are treated as undefined and reported
as zero by convention.

Phases are stored unwrapped so that time evolution can keep them continuous;
wrapping into (-pi, pi] happens only in :func:`gauge_fix` and in comparisons.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NegativeProbability, NotNormalized

# Below this probability a phase counts as undefined (and is conventionally 0).
EPS_PROB = 1e-12

# Construction accepts probability sums within this of 1 and rescales.
NORM_TOL = 1e-9


def wrap_angle(x):
    """Wrap angle(s) into (-pi, pi]."""
    wrapped = np.pi - np.remainder(np.pi - np.asarray(x, dtype=float), 2.0 * np.pi)
    if np.isscalar(x):
        return float(wrapped)
    return wrapped


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class Preparation:
    """Probabilities and phases of one preparation relative to one measurement context.

    Instances are immutable.  Use :func:`new_preparation` to construct one with
    validation and rescaling; direct construction is for trusted internal values
    (for example integrator output, whose raw probability sums are themselves
    under test).
    """

    p: np.ndarray
    phi: np.ndarray

    def __post_init__(self):
        p = _readonly(self.p)
        phi = _readonly(self.phi)
        if p.ndim != 1 or phi.shape != p.shape:
            raise DimensionMismatch(
                f"p and phi must be equal-length vectors, got {p.shape} and {phi.shape}"
            )
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "phi", phi)

    @property
    def n(self) -> int:
        return self.p.shape[0]


@dataclass(frozen=True)
class CartesianChart:
    """The same state in Cartesian-like variables x_i = sqrt(p_i) cos(phi_i), y_i = sqrt(p_i) sin(phi_i)."""

    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        x = _readonly(self.x)
        y = _readonly(self.y)
        if x.ndim != 1 or y.shape != x.shape:
            raise DimensionMismatch(
                f"x and y must be equal-length vectors, got {x.shape} and {y.shape}"
            )
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @property
    def n(self) -> int:
        return self.x.shape[0]


@dataclass(frozen=True)
class TangentDisplacement:
    """Infinitesimal displacement (dp, dphi) at a preparation; sum(dp) = 0 keeps normalization."""

    dp: np.ndarray
    dphi: np.ndarray

    def __post_init__(self):
        dp = _readonly(self.dp)
        dphi = _readonly(self.dphi)
        if dp.ndim != 1 or dphi.shape != dp.shape:
            raise DimensionMismatch(
                f"dp and dphi must be equal-length vectors, got {dp.shape} and {dphi.shape}"
            )
        total = float(np.sum(dp))
        if abs(total) > 1e-12 * max(1.0, float(np.max(np.abs(dp)))):
            raise NotNormalized(f"sum(dp) = {total:.3e} does not preserve normalization")
        object.__setattr__(self, "dp", dp)
        object.__setattr__(self, "dphi", dphi)

    @property
    def n(self) -> int:
        return self.dp.shape[0]


def new_preparation(p, phi) -> Preparation:
    """Validate and build a Preparation; p is rescaled to sum exactly 1.

    Raises DimensionMismatch, NegativeProbability, or NotNormalized (probability
    sum off by more than 1e-9).
    """
    p = np.asarray(p, dtype=float)
    phi = np.asarray(phi, dtype=float)
    if p.ndim != 1 or phi.shape != p.shape:
        raise DimensionMismatch(f"p has shape {p.shape}, phi has shape {phi.shape}")
    if p.shape[0] < 2:
        raise DimensionMismatch("need at least two outcomes")
    if np.any(p < 0.0):
        raise NegativeProbability(f"negative probability: min p = {p.min():.3e}")
    total = float(p.sum())
    if abs(total - 1.0) > NORM_TOL:
        raise NotNormalized(f"probabilities sum to {total!r}, not 1")
    return Preparation(p / total, phi)


def to_cartesian(prep: Preparation) -> CartesianChart:
    """Map (p, phi) to x_i = sqrt(p_i) cos(phi_i), y_i = sqrt(p_i) sin(phi_i)."""
    r = np.sqrt(prep.p)
    return CartesianChart(r * np.cos(prep.phi), r * np.sin(prep.phi))


def from_cartesian(c: CartesianChart) -> Preparation:
    """Inverse chart map: p_i = x_i^2 + y_i^2, phi_i = atan2(y_i, x_i).

    Phases of components with p_i < EPS_PROB are set to 0.  The probability sum
    must be within 1e-9 of 1; it is not rescaled (conservation of the raw sum
    under transforms is a tested invariant).
    """
    p = c.x * c.x + c.y * c.y
    total = float(p.sum())
    if abs(total - 1.0) > NORM_TOL:
        raise NotNormalized(f"x^2 + y^2 sums to {total!r}, not 1")
    phi = np.arctan2(c.y, c.x)
    phi = np.where(p < EPS_PROB, 0.0, phi)
    return Preparation(p, phi)


def gauge_fix(prep: Preparation) -> Preparation:
    """Remove the unphysical common phase constant.

    Subtracts the phase of the reference component from all phases and wraps
    each into (-pi, pi].  The reference is the highest-index component with
    p_i >= EPS_PROB; components below EPS_PROB get phase 0.  Idempotent.
    """
    alive = prep.p >= EPS_PROB
    ref = int(np.max(np.nonzero(alive)[0]))
    phi = wrap_angle(prep.phi - prep.phi[ref])
    phi = np.where(alive, phi, 0.0)
    return Preparation(prep.p, phi)


def shift_all_phases(prep: Preparation, c: float) -> Preparation:
    """Add the same constant to every phase (a pure gauge change)."""
    return Preparation(prep.p, prep.phi + c)


def prep_distance_check(a: Preparation, b: Preparation) -> float:
    """Gauge-invariant comparison: max over components of |dp_i| and wrapped |dphi_i|.

    Both states are gauge fixed first, so the result is 0 exactly when the two
    preparations are physically identical.
    """
    if a.n != b.n:
        raise DimensionMismatch(f"dimensions differ: {a.n} vs {b.n}")
    ga = gauge_fix(a)
    gb = gauge_fix(b)
    dp = np.max(np.abs(ga.p - gb.p))
    dphi = np.max(np.abs(wrap_angle(ga.phi - gb.phi)))
    return float(max(dp, dphi))
