"""Standard complex-amplitude quantum mechanics, used as the cross-check oracle.

Everything in here is the textbook formulation: unit state vectors, unitary
basis changes, eigendecomposition propagators, expectation values.  The
canonical (p, phi) machinery elsewhere in the package is verified against
this module, so it deliberately shares no numerics with the canonical path:
propagation goes through a Hermitian eigendecomposition rather than any step
integrator, keeping the oracle's error independent of the integrator's.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotNormalized
from .linalg import require_unitary
from .operators import hermitian
from .prep_state import EPS_PROB, Preparation


@dataclass(frozen=True)
class AmplitudeVector:
    """A unit vector of complex amplitudes."""

    amplitudes: np.ndarray

    def __post_init__(self):
        a = np.array(self.amplitudes, dtype=complex)
        if a.ndim != 1:
            raise DimensionMismatch(f"amplitudes must be a vector, got shape {a.shape}")
        norm2 = float(np.sum(np.abs(a) ** 2))
        if abs(norm2 - 1.0) > 1e-9:
            raise NotNormalized(f"squared norm is {norm2!r}, not 1")
        a.setflags(write=False)
        object.__setattr__(self, "amplitudes", a)

    @property
    def n(self) -> int:
        return self.amplitudes.shape[0]


def to_amplitudes(s: Preparation) -> AmplitudeVector:
    """psi_i = sqrt(p_i) e^(i phi_i)."""
    return AmplitudeVector(np.sqrt(s.p) * np.exp(1j * s.phi))


def to_preparation(v: AmplitudeVector) -> Preparation:
    """p_i = |psi_i|^2, phi_i = arg psi_i (0 where the probability is negligible)."""
    p = np.abs(v.amplitudes) ** 2
    phi = np.where(p < EPS_PROB, 0.0, np.angle(v.amplitudes))
    return Preparation(p, phi)


def apply_unitary(u: np.ndarray, v: AmplitudeVector) -> AmplitudeVector:
    """Basis change psi'_i = sum_j conj(u_ji) psi_j, i.e. psi' = u† psi."""
    u = require_unitary(u)
    if u.shape[0] != v.n:
        raise DimensionMismatch(f"matrix is {u.shape[0]}-dim, state is {v.n}-dim")
    return AmplitudeVector(u.conj().T @ v.amplitudes)


def propagate(H, v0: AmplitudeVector, t: float) -> AmplitudeVector:
    """psi(t) = e^(-iHt) psi0 via Hermitian eigendecomposition."""
    H = hermitian(H)
    if H.n != v0.n:
        raise DimensionMismatch(f"operator is {H.n}-dim, state is {v0.n}-dim")
    evals, vecs = np.linalg.eigh(H.matrix)
    coeffs = vecs.conj().T @ v0.amplitudes
    return AmplitudeVector(vecs @ (np.exp(-1j * evals * t) * coeffs))


def expectation(F, v: AmplitudeVector) -> float:
    """<psi|F|psi>; the imaginary residue must be below 1e-12 and is discarded."""
    F = hermitian(F)
    if F.n != v.n:
        raise DimensionMismatch(f"operator is {F.n}-dim, state is {v.n}-dim")
    val = complex(np.vdot(v.amplitudes, F.matrix @ v.amplitudes))
    assert abs(val.imag) <= 1e-12
    return val.real


def commutator_rate(F, H, v: AmplitudeVector) -> float:
    """(1/i) <psi|[F, H]|psi>, the textbook rate of change of <F>."""
    F = hermitian(F)
    H = hermitian(H)
    if F.n != H.n or F.n != v.n:
        raise DimensionMismatch("operator/state dimensions differ")
    comm = F.matrix @ H.matrix - H.matrix @ F.matrix
    val = complex(np.vdot(v.amplitudes, comm @ v.amplitudes)) / 1j
    assert abs(val.imag) <= 1e-12
    return val.real
