"""Small shared linear-algebra helpers: unitarity checks and seeded random matrices."""

from __future__ import annotations

import numpy as np

from .errors import NotUnitary

UNITARY_TOL = 1e-10


def unitarity_residual(u: np.ndarray) -> float:
    """Max-norm deviation of u from unitarity: max entry of |u†u - I| and |uu† - I|."""
    u = np.asarray(u, dtype=complex)
    eye = np.eye(u.shape[0])
    return float(
        max(
            np.max(np.abs(u.conj().T @ u - eye)),
            np.max(np.abs(u @ u.conj().T - eye)),
        )
    )


def require_unitary(u: np.ndarray, tol: float = UNITARY_TOL) -> np.ndarray:
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise NotUnitary(f"expected a square matrix, got shape {u.shape}")
    res = unitarity_residual(u)
    if res > tol:
        raise NotUnitary(f"unitarity residual {res:.3e} exceeds {tol:.1e}")
    return u


def haar_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed n x n unitary from a QR-orthonormalized complex Ginibre matrix.

    The usual phase correction (dividing out the phases of R's diagonal) makes the
    QR output Haar rather than merely unitary.
    """
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_hermitian(n: int, rng: np.random.Generator, norm: float | None = None) -> np.ndarray:
    """Random Hermitian matrix; if `norm` is given, rescaled to that spectral norm."""
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    h = (g + g.conj().T) / 2.0
    if norm is not None:
        h *= norm / np.linalg.norm(h, 2)
    return h
