"""Matplotlib rendering of run outputs, written next to the delimited files.

Every CLI subcommand accepts ``--plot``; when given, a PNG is rendered
alongside the CSV or JSON it just wrote.  Only this module touches
matplotlib, and it forces the Agg backend so rendering works headless.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .bloch2 import SpherePoint
from .dynamics import Trajectory
from .metric import LineElementBreakdown


def figure_path(output_path) -> str:
    return str(output_path) + ".png"


def render_trajectory(traj: Trajectory, path) -> None:
    """Probabilities, phases, and energy deviation over time."""
    times = traj.times
    p = np.array([s.p for s in traj.states])
    phi = np.array([s.phi for s in traj.states])
    fig, axes = plt.subplots(3, 1, figsize=(8, 9), sharex=True)
    for i in range(p.shape[1]):
        axes[0].plot(times, p[:, i], label=f"p_{i + 1}")
        axes[1].plot(times, phi[:, i], label=f"phi_{i + 1}")
    axes[0].set_ylabel("probability")
    axes[0].legend(loc="best", fontsize="small")
    axes[1].set_ylabel("phase [rad]")
    axes[2].plot(times, traj.energy - traj.energy[0], color="crimson")
    axes[2].set_ylabel("energy drift")
    axes[2].set_xlabel("t")
    axes[0].set_title(f"{traj.method}, dt = {traj.dt:g}")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render_bloch(times, points: list[SpherePoint], path) -> None:
    """Sphere angles over time plus the equatorial-plane projection of the track."""
    theta = np.array([pt.theta for pt in points])
    phi = np.array([pt.phi for pt in points])
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4.5))
    ax1.plot(times, theta, label="theta")
    ax1.plot(times, phi, label="phi")
    ax1.set_xlabel("t")
    ax1.set_ylabel("angle [rad]")
    ax1.legend(loc="best")
    x = np.sin(theta) * np.cos(phi)
    y = np.sin(theta) * np.sin(phi)
    ax2.plot(x, y, lw=0.8)
    ax2.scatter([x[0]], [y[0]], color="green", zorder=3, label="start")
    ax2.scatter([x[-1]], [y[-1]], color="red", zorder=3, label="end")
    circle = plt.Circle((0, 0), 1.0, fill=False, color="gray", ls=":")
    ax2.add_patch(circle)
    ax2.set_aspect("equal")
    ax2.set_xlabel("sin(theta) cos(phi)")
    ax2.set_ylabel("sin(theta) sin(phi)")
    ax2.legend(loc="best", fontsize="small")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render_transform(classical, interference, p_prime, path) -> None:
    """Transformed probabilities against the classical mixing rule."""
    n = len(p_prime)
    idx = np.arange(1, n + 1)
    width = 0.27
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.bar(idx - width, classical, width, label="classical mixing")
    ax.bar(idx, interference, width, label="interference")
    ax.bar(idx + width, p_prime, width, label="transformed p'")
    ax.axhline(0.0, color="black", lw=0.8)
    ax.set_xticks(idx)
    ax.set_xlabel("outcome")
    ax.set_ylabel("probability contribution")
    ax.legend(loc="best", fontsize="small")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render_distance(breakdown: LineElementBreakdown, angle: float, path) -> None:
    """Line-element breakdown next to the squared ray angle."""
    fig, ax = plt.subplots(figsize=(6, 4))
    labels = ["classical", "variance", "total", "angle^2"]
    values = [breakdown.classical_part, breakdown.variance_part, breakdown.total, angle**2]
    ax.bar(labels, values, color=["steelblue", "darkorange", "seagreen", "gray"])
    ax.set_ylabel("squared distance")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render_verify(rows: list[dict], path) -> None:
    """Residual of every check against its tolerance, log scale."""
    labels = [f"{r['check']} (n={r['n']})" for r in rows]
    floor = 1e-17
    residuals = [max(abs(r["max_residual"]), floor) for r in rows]
    tols = [max(r["tolerance"], floor) for r in rows]
    colors = ["seagreen" if r["pass"] else "crimson" for r in rows]
    ypos = np.arange(len(rows))
    fig, ax = plt.subplots(figsize=(9, 0.28 * len(rows) + 1.5))
    ax.barh(ypos, residuals, color=colors)
    ax.scatter(tols, ypos, marker="|", s=80, color="black", label="tolerance")
    ax.set_xscale("log")
    ax.set_yticks(ypos)
    ax.set_yticklabels(labels, fontsize=6)
    ax.invert_yaxis()
    ax.set_xlabel("max residual")
    ax.legend(loc="lower right", fontsize="small")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
