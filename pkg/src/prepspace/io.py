"""JSON and CSV wire formats.

States travel as ``{"p": [...], "phi": [...]}`` (radians, entry order = result
index), frames as ``{"w": [[...]], "beta": [[...]]}``, unitaries and Hermitian
matrices as ``{"re": [[...]], "im": [[...]]}``.  Evolution problems bundle
``{"hamiltonian": ..., "initial": ..., "t_final": ..., "dt": ..., "method": ...}``.
CSV columns carry 17 significant digits so every 64-bit float round-trips.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .bloch2 import SpherePoint
from .dynamics import Trajectory
from .frame_transform import FrameChange, frame_from_unitary
from .prep_state import Preparation, new_preparation


def fmt(x: float) -> str:
    """Format one float with 17 significant digits (lossless round trip)."""
    return f"{float(x):.17g}"


def load_json(path) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def save_json(obj, path) -> None:
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def preparation_to_dict(s: Preparation) -> dict:
    return {"p": [float(v) for v in s.p], "phi": [float(v) for v in s.phi]}


def preparation_from_dict(d: dict) -> Preparation:
    return new_preparation(d["p"], d["phi"])


def frame_to_dict(f: FrameChange) -> dict:
    return {"w": f.w.tolist(), "beta": f.beta.tolist()}


def complex_matrix_from_dict(d: dict) -> np.ndarray:
    return np.asarray(d["re"], dtype=float) + 1j * np.asarray(d["im"], dtype=float)


def complex_matrix_to_dict(m: np.ndarray) -> dict:
    m = np.asarray(m, dtype=complex)
    return {"re": m.real.tolist(), "im": m.imag.tolist()}


def frame_from_input(d: dict) -> FrameChange:
    """Accept either a (w, beta) pair or a unitary under the "unitary" key."""
    if "unitary" in d:
        return frame_from_unitary(complex_matrix_from_dict(d["unitary"]))
    return FrameChange(np.asarray(d["w"], dtype=float), np.asarray(d["beta"], dtype=float))


def write_trajectory_csv(traj: Trajectory, path) -> None:
    """Columns: t, p_1..p_n, phi_1..phi_n, energy."""
    n = traj.states[0].n
    header = (
        ["t"]
        + [f"p_{i}" for i in range(1, n + 1)]
        + [f"phi_{i}" for i in range(1, n + 1)]
        + ["energy"]
    )
    lines = [",".join(header)]
    for t, state, energy in zip(traj.times, traj.states, traj.energy):
        row = [fmt(t)] + [fmt(v) for v in state.p] + [fmt(v) for v in state.phi] + [fmt(energy)]
        lines.append(",".join(row))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_bloch_csv(times, points: list[SpherePoint], path) -> None:
    """Columns: t, theta, phi."""
    lines = ["t,theta,phi"]
    for t, pt in zip(times, points):
        lines.append(",".join([fmt(t), fmt(pt.theta), fmt(pt.phi)]))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
