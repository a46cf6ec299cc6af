"""Canonical equations of motion in preparation space.

The mean value of an observable F at a preparation,

    f(p, phi) = sum_ij F_ij sqrt(p_i p_j) e^(-i (phi_i - phi_j)),

is a real scalar, and the flow generated by the mean energy is Hamilton-like:
pdot_i = dH/dphi_i, phidot_i = -dH/dp_i.  Time integration defaults to the
implicit midpoint rule, which is symplectic and second order, matching the
canonical structure of the transformation law; a renormalized classic RK4 is
available for cross-checks.

The polar chart is singular where any p_i -> 0 even though the flow itself is
regular there (in the Cartesian chart it is linear).  Whenever a step starts
or lands below EPS_CHART, the integrator transparently performs that step in
the Cartesian chart and converts back, recording the switch time on the
trajectory.  Hamiltonians are time independent, and hbar = 1 throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import BoundaryCrossing, BoundaryState, DimensionMismatch, StepRejected
from .operators import HermitianOperator, hermitian
from .prep_state import EPS_PROB, Preparation, TangentDisplacement, new_preparation

# Below this probability the vector field itself is considered unusable.
EPS_DYN = 1e-8

# The integrator leaves the polar chart well before that: between 1e-8 and
# about 1e-3 the fixed-point solve still converges but the chart is close
# enough to singular that step accuracy collapses (measured: trajectories
# dipping below ~1e-4 lose one to two digits against the oracle).
EPS_CHART = 1e-3

# Implicit solve: fixed-point iteration on the midpoint.
FIXED_POINT_TOL = 1e-13
MAX_FIXED_POINT_ITER = 50

METHODS = ("implicit-midpoint", "rk4-renormalized")


@dataclass(frozen=True)
class Trajectory:
    """Time-stamped states with the conserved-quantity log of one evolution run."""

    times: np.ndarray
    states: tuple[Preparation, ...]
    energy: np.ndarray
    dt: float
    method: str
    chart_switches: tuple[float, ...] = field(default=())

    def __len__(self) -> int:
        return len(self.states)


def _split_re_im(H: HermitianOperator):
    return np.ascontiguousarray(H.matrix.real), np.ascontiguousarray(H.matrix.imag)


def _mean_value_raw(p, phi, hr, hi) -> float:
    # sum_kj sqrt(p_k p_j) Re[H_kj e^(i (phi_j - phi_k))], evaluated pairwise in
    # real arithmetic so that the symmetry/antisymmetry of the factors cancels
    # exactly (diagonal operators then conserve p bit-for-bit).
    rt = np.sqrt(p)
    amp = rt[:, None] * rt[None, :]
    delta = phi[None, :] - phi[:, None]
    return float(np.sum(amp * (hr * np.cos(delta) - hi * np.sin(delta))))


def _gradients_raw(p, phi, hr, hi):
    """dH/dp and dH/dphi at a strictly positive p (not necessarily on the simplex)."""
    rt = np.sqrt(p)
    delta = phi[None, :] - phi[:, None]
    c = np.cos(delta)
    s = np.sin(delta)
    re_part = hr * c - hi * s  # Re[H_kj e^(i (phi_j - phi_k))]
    im_part = hi * c + hr * s  # Im[...]
    ratio = rt[None, :] / rt[:, None]  # sqrt(p_j / p_k); exactly 1 on the diagonal
    dH_dp = np.sum(ratio * re_part, axis=1)
    amp = rt[:, None] * rt[None, :]
    dH_dphi = 2.0 * np.sum(amp * im_part, axis=1)
    return dH_dp, dH_dphi


def _rhs_raw(p, phi, hr, hi):
    dH_dp, dH_dphi = _gradients_raw(p, phi, hr, hi)
    return dH_dphi, -dH_dp


def mean_value(s: Preparation, F) -> float:
    """Mean (expectation) value of an observable at a preparation."""
    F = hermitian(F)
    if F.n != s.n:
        raise DimensionMismatch(f"operator is {F.n}-dim, state is {s.n}-dim")
    hr, hi = _split_re_im(F)
    return _mean_value_raw(s.p, s.phi, hr, hi)


def hamilton_rhs(s: Preparation, H) -> TangentDisplacement:
    """The canonical vector field (dH/dphi, -dH/dp) at an interior preparation."""
    H = hermitian(H)
    if H.n != s.n:
        raise DimensionMismatch(f"operator is {H.n}-dim, state is {s.n}-dim")
    if np.min(s.p) < EPS_DYN:
        raise BoundaryState(f"state not interior: min p = {np.min(s.p):.3e} < {EPS_DYN:.0e}")
    hr, hi = _split_re_im(H)
    pdot, phidot = _rhs_raw(s.p, s.phi, hr, hi)
    return TangentDisplacement(pdot, phidot)


def poisson_bracket(F, G, s: Preparation) -> float:
    """{f, g} = sum_i (df/dp_i dg/dphi_i - df/dphi_i dg/dp_i) for the two mean values."""
    F = hermitian(F)
    G = hermitian(G)
    if F.n != G.n or F.n != s.n:
        raise DimensionMismatch("operator/state dimensions differ")
    if np.min(s.p) < EPS_DYN:
        raise BoundaryState(f"state not interior: min p = {np.min(s.p):.3e} < {EPS_DYN:.0e}")
    fr, fi = _split_re_im(F)
    gr, gi = _split_re_im(G)
    df_dp, df_dphi = _gradients_raw(s.p, s.phi, fr, fi)
    dg_dp, dg_dphi = _gradients_raw(s.p, s.phi, gr, gi)
    return float(np.sum(df_dp * dg_dphi - df_dphi * dg_dp))


# ---------------------------------------------------------------------------
# Time stepping


def _polar_midpoint_step(p, phi, dt, hr, hi):
    """One implicit-midpoint step in the polar chart, or None if the solve fails.

    Iterates m <- z0 + (dt/2) f(m) from an explicit half-step predictor; the
    returned update z1 = z0 + dt f(m) reuses the converged midpoint field, so
    sum(pdot) = 0 carries over to the discrete step at round-off level.
    """
    pd, fd = _rhs_raw(p, phi, hr, hi)
    pm = p + (0.5 * dt) * pd
    fm = phi + (0.5 * dt) * fd
    for _ in range(MAX_FIXED_POINT_ITER):
        if np.min(pm) <= 0.0 or not np.all(np.isfinite(pm)):
            return None
        pd, fd = _rhs_raw(pm, fm, hr, hi)
        pm_new = p + (0.5 * dt) * pd
        fm_new = phi + (0.5 * dt) * fd
        delta = max(np.max(np.abs(pm_new - pm)), np.max(np.abs(fm_new - fm)))
        pm, fm = pm_new, fm_new
        if delta <= FIXED_POINT_TOL:
            pd, fd = _rhs_raw(pm, fm, hr, hi)
            return p + dt * pd, phi + dt * fd
    return None


def _rk4_polar_step(p, phi, dt, hr, hi):
    def f(pp, ff):
        return _rhs_raw(pp, ff, hr, hi)

    k1p, k1f = f(p, phi)
    k2p, k2f = f(p + 0.5 * dt * k1p, phi + 0.5 * dt * k1f)
    k3p, k3f = f(p + 0.5 * dt * k2p, phi + 0.5 * dt * k2f)
    k4p, k4f = f(p + dt * k3p, phi + dt * k3f)
    p1 = p + (dt / 6.0) * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)
    phi1 = phi + (dt / 6.0) * (k1f + 2.0 * k2f + 2.0 * k3f + k4f)
    if np.min(p1) <= 0.0 or not np.all(np.isfinite(p1)):
        return None
    return p1 * (np.sum(p) / np.sum(p1)), phi1


def _to_cartesian_raw(p, phi):
    return np.sqrt(p) * np.exp(1j * phi)


def _from_cartesian_raw(psi, phi_prev):
    """Back to the polar chart, keeping phases continuous with the previous step."""
    p = np.abs(psi) ** 2
    raw = np.angle(psi)
    phi = raw + 2.0 * np.pi * np.round((phi_prev - raw) / (2.0 * np.pi))
    # A phase carries no information where the probability has vanished; keep
    # the previous value so the stored series stays continuous.
    return p, np.where(p < EPS_PROB, phi_prev, phi)


def _cartesian_step(p, phi, dt, H_matrix, method):
    """One step of the same method in the Cartesian chart, where the flow is linear.

    For implicit midpoint this is the Cayley propagator
    (I + i dt H / 2)^{-1} (I - i dt H / 2), which is exactly unitary.
    """
    psi = _to_cartesian_raw(p, phi)
    n = H_matrix.shape[0]
    if method == "implicit-midpoint":
        a = np.eye(n) + 0.5j * dt * H_matrix
        b = np.eye(n) - 0.5j * dt * H_matrix
        psi1 = np.linalg.solve(a, b @ psi)
    else:
        def f(v):
            return -1j * (H_matrix @ v)

        k1 = f(psi)
        k2 = f(psi + 0.5 * dt * k1)
        k3 = f(psi + 0.5 * dt * k2)
        k4 = f(psi + dt * k3)
        psi1 = psi + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        psi1 *= math.sqrt(np.sum(p) / float(np.sum(np.abs(psi1) ** 2)))
    return _from_cartesian_raw(psi1, phi)


def _advance(p, phi, t_now, dt, hr, hi, H_matrix, method, switches):
    """Advance one step of size dt, choosing the chart and handling failures."""
    if np.min(p) < EPS_CHART:
        switches.append(t_now)
        return _cartesian_step(p, phi, dt, H_matrix, method)

    if method == "rk4-renormalized":
        out = _rk4_polar_step(p, phi, dt, hr, hi)
        if out is None:
            switches.append(t_now)
            return _cartesian_step(p, phi, dt, H_matrix, method)
        return out

    out = _polar_midpoint_step(p, phi, dt, hr, hi)
    if out is not None and np.min(out[0]) >= EPS_CHART:
        return out
    if out is not None:
        # The step itself crossed into the near-boundary band; redo it in the
        # Cartesian chart.
        switches.append(t_now)
        return _cartesian_step(p, phi, dt, H_matrix, method)
    # Implicit solve failed to converge: halve the step once, then give up.
    half = dt / 2.0
    first = _polar_midpoint_step(p, phi, half, hr, hi)
    second = None
    if first is not None and np.min(first[0]) >= EPS_CHART:
        second = _polar_midpoint_step(first[0], first[1], half, hr, hi)
        if second is not None and np.min(second[0]) >= EPS_CHART:
            return second
    if first is None and second is None and np.min(p) >= 10.0 * EPS_CHART:
        # Non-convergence well inside the simplex means the step is genuinely
        # too large; close to the boundary it is the chart singularity, which
        # the Cartesian fallback below handles.
        raise StepRejected(
            f"implicit midpoint failed to converge at t = {t_now:.6g} even with dt = {half:.3e}"
        )
    switches.append(t_now)
    return _cartesian_step(p, phi, dt, H_matrix, method)


def _integrate_raw(p0, phi0, H: HermitianOperator, t_final, dt, method, energies=None):
    """Step from t = 0 to t_final; returns (times, p list, phi list, switch times)."""
    hr, hi = _split_re_im(H)
    Hm = H.matrix
    n_full, rem = divmod(t_final, dt)
    n_full = int(round(n_full))
    # Timestamps by multiplication, not accumulation, so they do not drift.
    times = list(np.arange(n_full + 1) * dt)
    sub_dts = [dt] * n_full
    if rem > dt * 1e-9:
        sub_dts.append(rem)
        times.append(t_final)
    p, phi = np.array(p0, dtype=float), np.array(phi0, dtype=float)
    ps, phis = [p], [phi]
    switches: list[float] = []
    if energies is not None:
        energies.append(_mean_value_raw(p, phi, hr, hi))
    for k, step_dt in enumerate(sub_dts):
        p, phi = _advance(p, phi, float(times[k]), step_dt, hr, hi, Hm, method, switches)
        ps.append(p)
        phis.append(phi)
        if energies is not None:
            energies.append(_mean_value_raw(p, phi, hr, hi))
    return np.asarray(times), ps, phis, switches


def evolve(s0: Preparation, H, t_final: float, dt: float,
           method: str = "implicit-midpoint") -> Trajectory:
    """Integrate the canonical equations from s0 up to t = t_final.

    The mean energy is logged at every step.  Chart switches (steps taken in
    the Cartesian chart because some p_i fell below EPS_DYN) are recorded on
    the returned trajectory.  Raises StepRejected if the implicit solve fails
    to converge away from the boundary even after halving dt once.
    """
    H = hermitian(H)
    if H.n != s0.n:
        raise DimensionMismatch(f"operator is {H.n}-dim, state is {s0.n}-dim")
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    if t_final < 0.0:
        raise ValueError("t_final must be nonnegative")
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; choose from {METHODS}")
    s0 = new_preparation(s0.p, s0.phi)

    energies: list[float] = []
    times, ps, phis, switches = _integrate_raw(s0.p, s0.phi, H, t_final, dt, method, energies)
    states = tuple(Preparation(p, phi) for p, phi in zip(ps, phis))
    return Trajectory(
        times=times,
        states=states,
        energy=np.asarray(energies),
        dt=dt,
        method=method,
        chart_switches=tuple(switches),
    )


def conserved_energy_drift(traj: Trajectory) -> float:
    """Max |H(t) - H(0)| over the trajectory's energy log."""
    if len(traj.energy) == 0:
        raise ValueError("trajectory has no energy log")
    return float(np.max(np.abs(traj.energy - traj.energy[0])))


def flow_volume_residual(H, s: Preparation, t: float, h: float = 1e-5,
                         dt: float = 1e-3) -> float:
    """|det J - 1| for the Jacobian of the time-t flow map around s.

    The Jacobian is built column by column from central finite differences
    with probe size h in each of the 2n chart coordinates (the probes step
    off the simplex, which the raw flow supports).  Raises BoundaryCrossing
    if any probe trajectory leaves the polar chart, since the finite
    difference is then meaningless.
    """
    H = hermitian(H)
    if H.n != s.n:
        raise DimensionMismatch(f"operator is {H.n}-dim, state is {s.n}-dim")
    n = s.n

    def flow(p0, phi0):
        _, ps, phis, switches = _integrate_raw(p0, phi0, H, t, dt, "implicit-midpoint")
        if switches:
            raise BoundaryCrossing(
                f"probe trajectory left the polar chart at t = {switches[0]:.6g}"
            )
        return np.concatenate([ps[-1], phis[-1]])

    z0 = np.concatenate([s.p, s.phi])
    jac = np.empty((2 * n, 2 * n))
    for j in range(2 * n):
        plus = z0.copy()
        minus = z0.copy()
        plus[j] += h
        minus[j] -= h
        fp = flow(plus[:n], plus[n:])
        fm = flow(minus[:n], minus[n:])
        jac[:, j] = (fp - fm) / (2.0 * h)
    return float(abs(np.linalg.det(jac) - 1.0))
