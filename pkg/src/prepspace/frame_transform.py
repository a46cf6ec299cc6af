"""Changes of measurement context and their canonical structure.

A frame change is parameterized by an n x n matrix w of conditional
probabilities and an n x n matrix beta of phase offsets.  Validity means the
orthogonality-style constraints: w is doubly stochastic and, for every pair
of distinct columns (and rows), the weighted cosine and sine sums

    sum_i sqrt(w_ij w_ik) cos(beta_ik - beta_ij) = 0
    sum_i sqrt(w_ij w_ik) sin(beta_ik - beta_ij) = 0

vanish.  Packing g_ij = sqrt(w_ij) e^(i beta_ij), these constraints are
exactly the statement that both g†g and gg† equal the identity, which is how
the validator evaluates them.  Equivalently g is the transpose of a unitary
matrix u (u_ji = sqrt(w_ij) e^(i beta_ij)); applying the frame to a state
agrees with the amplitude transformation psi'_i = sum_j conj(u_ji) psi_j.

Composition convention, fixed by that amplitude law: applying f1 then f2
equals the single frame built from the matrix product u1 @ u2.

Where w_ij = 0 the offset beta_ij is meaningless; it is stored as 0 and its
terms drop out of every sum with weight sqrt(w_ij) = 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BoundaryState, DimensionMismatch, InvalidFrame
from .linalg import haar_unitary, require_unitary
from .prep_state import Preparation, CartesianChart, from_cartesian

# Construction-time validity bound for the constraint residuals.  Property
# tests assert the looser 1e-8 after arithmetic has propagated round-off.
FRAME_TOL = 1e-10

# frame_jacobian needs a strictly interior base point, and its phase blocks
# divide by p'_i, so the transformed point must clear a floor as well.
EPS_INTERIOR = 1e-6
EPS_PRIME_FLOOR = 1e-9


def _readonly_matrix(m, name: str) -> np.ndarray:
    m = np.array(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"{name} must be a square matrix, got shape {m.shape}")
    m.setflags(write=False)
    return m


@dataclass(frozen=True)
class FrameChange:
    """A change of measurement context: conditional probabilities w and phase offsets beta."""

    w: np.ndarray
    beta: np.ndarray

    def __post_init__(self):
        w = _readonly_matrix(self.w, "w")
        beta = _readonly_matrix(self.beta, "beta")
        if w.shape != beta.shape:
            raise DimensionMismatch(f"w is {w.shape}, beta is {beta.shape}")
        if np.any(w < 0.0):
            raise InvalidFrame(f"negative conditional probability: min w = {w.min():.3e}")
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "beta", beta)

    @property
    def n(self) -> int:
        return self.w.shape[0]


@dataclass(frozen=True)
class RealPairTransform:
    """The real coefficient pair a_ij = sqrt(w_ij) cos(beta_ij), b_ij = sqrt(w_ij) sin(beta_ij)."""

    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        a = _readonly_matrix(self.a, "a")
        b = _readonly_matrix(self.b, "b")
        if a.shape != b.shape:
            raise DimensionMismatch(f"a is {a.shape}, b is {b.shape}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def n(self) -> int:
        return self.a.shape[0]


@dataclass(frozen=True)
class FrameValidation:
    """Constraint residual report; valid iff max_residual <= tolerance."""

    max_residual: float
    tolerance: float = FRAME_TOL

    @property
    def valid(self) -> bool:
        return self.max_residual <= self.tolerance


@dataclass(frozen=True)
class SymplecticMatrices:
    """Jacobian M of a frame change at a state, with the canonical block matrix J."""

    M: np.ndarray
    J: np.ndarray

    def residual(self) -> float:
        """Max-norm of M J M^T - J; zero for a canonical transformation."""
        return float(np.max(np.abs(self.M @ self.J @ self.M.T - self.J)))


def _packed(f: FrameChange) -> np.ndarray:
    return np.sqrt(f.w) * np.exp(1j * f.beta)


def frame_from_unitary(u: np.ndarray, tol: float = 1e-10) -> FrameChange:
    """Build the (w, beta) parameterization from a unitary: w_ij = |u_ji|^2, beta_ij = arg u_ji."""
    u = require_unitary(u, tol)
    g = u.T
    w = np.abs(g) ** 2
    beta = np.where(w == 0.0, 0.0, np.angle(g))
    return FrameChange(w, beta)


def to_unitary(f: FrameChange) -> np.ndarray:
    """Inverse of frame_from_unitary: u_ji = sqrt(w_ij) e^(i beta_ij)."""
    return _packed(f).T


def validate_frame(f: FrameChange) -> FrameValidation:
    """Evaluate all constraint residuals; reports, never raises.

    The entries of g†g - I and gg† - I (g_ij = sqrt(w_ij) e^(i beta_ij)) are
    exactly the doubly-stochastic sums (diagonal) and the paired cosine/sine
    sums (real and imaginary parts of the off-diagonal entries).
    """
    g = _packed(f)
    eye = np.eye(f.n)
    res = max(
        np.max(np.abs(g.conj().T @ g - eye)),
        np.max(np.abs(g @ g.conj().T - eye)),
    )
    return FrameValidation(float(res))


def _require_valid(f: FrameChange) -> None:
    report = validate_frame(f)
    if not report.valid:
        raise InvalidFrame(
            f"constraint residual {report.max_residual:.3e} exceeds {report.tolerance:.1e}"
        )


def _transform_xy(w, beta, p, phi):
    """Raw chart transform x'_i + i y'_i = sum_j sqrt(w_ij p_j) e^(i (phi_j - beta_ij)).

    Defined for any nonnegative p, not just simplex points; the Jacobian probes
    below rely on that.
    """
    amp = np.sqrt(w * p[None, :])
    ang = phi[None, :] - beta
    x = np.sum(amp * np.cos(ang), axis=1)
    y = np.sum(amp * np.sin(ang), axis=1)
    return x, y


def apply_frame(f: FrameChange, s: Preparation) -> Preparation:
    """Transform a preparation into the new measurement context.

    Probabilities and phases come from the Cartesian intermediate, with phases
    recovered by the two-argument arctangent (the tangent quotient would lose
    the quadrant and blow up when its denominator vanishes).  The raw
    probability sum is conserved, not renormalized.
    """
    if f.n != s.n:
        raise DimensionMismatch(f"frame is {f.n}-dim, state is {s.n}-dim")
    _require_valid(f)
    x, y = _transform_xy(f.w, f.beta, s.p, s.phi)
    return from_cartesian(CartesianChart(x, y))


def probability_split(f: FrameChange, s: Preparation):
    """Split the transformed probabilities into classical mixing plus interference.

    classical_i = sum_j w_ij p_j is the mutually-exclusive mixing rule;
    interference_i is whatever apply_frame produces beyond it, and sums to zero.
    """
    classical = f.w @ s.p
    p_prime = apply_frame(f, s).p
    return classical, p_prime - classical


def to_real_pair(f: FrameChange) -> RealPairTransform:
    """The equivalent real coefficient pair acting on the Cartesian chart."""
    r = np.sqrt(f.w)
    return RealPairTransform(r * np.cos(f.beta), r * np.sin(f.beta))


def real_pair_validate(t: RealPairTransform) -> FrameValidation:
    """Residuals of the real-pair orthogonality constraints (both index orders)."""
    a, b = t.a, t.b
    eye = np.eye(t.n)
    res = max(
        np.max(np.abs(a.T @ a + b.T @ b - eye)),
        np.max(np.abs(a.T @ b - b.T @ a)),
        np.max(np.abs(a @ a.T + b @ b.T - eye)),
        np.max(np.abs(a @ b.T - b @ a.T)),
    )
    return FrameValidation(float(res))


def frame_jacobian(f: FrameChange, s: Preparation) -> SymplecticMatrices:
    """Closed-form Jacobian of the frame map at an interior state.

    With z_ij = sqrt(w_ij p_j) e^(i (phi_j - beta_ij)) and Z_i = sum_k z_ik,
    the auxiliary sums C_ij + i S_ij = z_ij conj(Z_i) give the blocks

        dp'_i/dp_j    = C_ij / p_j          dp'_i/dphi_j   = -2 S_ij
        dphi'_i/dp_j  = S_ij / (2 p_j p'_i) dphi'_i/dphi_j = C_ij / p'_i

    where p'_i = |Z_i|^2 = sum_k C_ik.  M J M^T = J holds for a valid frame.
    """
    if f.n != s.n:
        raise DimensionMismatch(f"frame is {f.n}-dim, state is {s.n}-dim")
    _require_valid(f)
    p, phi = s.p, s.phi
    if np.min(p) < EPS_INTERIOR:
        raise BoundaryState(f"state not interior: min p = {np.min(p):.3e} < {EPS_INTERIOR:.0e}")

    amp = np.sqrt(f.w * p[None, :])
    z = amp * np.exp(1j * (phi[None, :] - f.beta))
    Z = z.sum(axis=1)
    cs = z * np.conj(Z)[:, None]
    C, S = cs.real, cs.imag
    p_prime = np.abs(Z) ** 2
    if np.min(p_prime) < EPS_PRIME_FLOOR:
        raise BoundaryState(
            f"transformed state is on the boundary: min p' = {np.min(p_prime):.3e}"
        )

    n = f.n
    M = np.empty((2 * n, 2 * n))
    M[:n, :n] = C / p[None, :]
    M[:n, n:] = -2.0 * S
    M[n:, :n] = 0.5 * S / (p[None, :] * p_prime[:, None])
    M[n:, n:] = C / p_prime[:, None]
    return SymplecticMatrices(M, _canonical_j(n))


def _canonical_j(n: int) -> np.ndarray:
    eye = np.eye(n)
    J = np.zeros((2 * n, 2 * n))
    J[:n, n:] = eye
    J[n:, :n] = -eye
    return J


def random_frame(n: int, seed: int) -> FrameChange:
    """Deterministic Haar-random frame for a given seed."""
    if n < 2:
        raise DimensionMismatch("need at least two outcomes")
    rng = np.random.default_rng(seed)
    return frame_from_unitary(haar_unitary(n, rng))
