"""Hermitian operators used as Hamiltonians and observables."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotHermitian

HERMITIAN_TOL = 1e-12


@dataclass(frozen=True)
class HermitianOperator:
    """An n x n complex Hermitian matrix (units 1/time for Hamiltonians, hbar = 1)."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise NotHermitian(f"expected a square matrix, got shape {m.shape}")
        res = float(np.max(np.abs(m - m.conj().T)))
        if res > HERMITIAN_TOL:
            raise NotHermitian(f"Hermiticity residual {res:.3e} exceeds {HERMITIAN_TOL:.1e}")
        # Symmetrize so the real part is exactly symmetric and the imaginary
        # part exactly antisymmetric; downstream sum cancellations rely on it.
        m = (m + m.conj().T) / 2.0
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]


def hermitian(m) -> HermitianOperator:
    """Coerce a matrix (or pass through an existing operator) with validation."""
    if isinstance(m, HermitianOperator):
        return m
    return HermitianOperator(np.asarray(m))
