"""Command-line front end.

Subcommands:

* ``evolve``    -- integrate a problem file, write a trajectory CSV
* ``transform`` -- apply a frame change to a state, write JSON with the
                   classical/interference split
* ``distance``  -- line-element breakdown and ray angle between two states
* ``bloch``     -- two-level trajectory CSV (t, theta, phi)
* ``verify``    -- run the seeded property suite, write a JSON report

Outputs are deterministic for fixed inputs and seed.  ``--plot`` renders a
PNG next to the output file.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .bloch2 import SpherePoint, evolve_two_level
from .dynamics import evolve
from .errors import PrepspaceError
from .frame_transform import apply_frame, probability_split
from .metric import fubini_study_angle, line_element2
from .prep_state import TangentDisplacement, prep_distance_check
from .verify import report_rows, run_checks
from . import io as pio


def _add_common(parser: argparse.ArgumentParser, output_required: bool = True) -> None:
    parser.add_argument("--input", required=True, help="problem JSON file")
    parser.add_argument("--output", required=output_required, help="destination file")
    parser.add_argument("--plot", action="store_true",
                        help="also render a PNG figure next to the output")


def cmd_evolve(args) -> int:
    problem = pio.load_json(args.input)
    s0 = pio.preparation_from_dict(problem["initial"])
    H = pio.complex_matrix_from_dict(problem["hamiltonian"])
    t_final = args.t_final if args.t_final is not None else float(problem["t_final"])
    dt = args.dt if args.dt is not None else float(problem["dt"])
    method = args.method if args.method is not None else problem.get("method", "implicit-midpoint")
    traj = evolve(s0, H, t_final, dt, method=method)
    pio.write_trajectory_csv(traj, args.output)
    if args.plot:
        from . import figures

        figures.render_trajectory(traj, figures.figure_path(args.output))
    return 0


def cmd_transform(args) -> int:
    payload = pio.load_json(args.input)
    frame = pio.frame_from_input(payload["frame"])
    state = pio.preparation_from_dict(payload["state"])
    transformed = apply_frame(frame, state)
    classical, interference = probability_split(frame, state)
    out = {
        "state": pio.preparation_to_dict(transformed),
        "classical": [float(v) for v in classical],
        "interference": [float(v) for v in interference],
    }
    pio.save_json(out, args.output)
    if args.plot:
        from . import figures

        figures.render_transform(
            classical, interference, transformed.p, figures.figure_path(args.output)
        )
    return 0


def cmd_distance(args) -> int:
    payload = pio.load_json(args.input)
    a = pio.preparation_from_dict(payload["state_a"])
    b = pio.preparation_from_dict(payload["state_b"])
    scale = float(payload.get("scale", 1.0))
    d = TangentDisplacement((b.p - a.p) * scale, (b.phi - a.phi) * scale)
    breakdown = line_element2(a, d)
    angle = fubini_study_angle(a, b)
    out = {
        "classical_part": breakdown.classical_part,
        "variance_part": breakdown.variance_part,
        "total": breakdown.total,
        "fubini_study_angle": angle,
        "gauge_invariant_mismatch": prep_distance_check(a, b),
        "scale": scale,
    }
    pio.save_json(out, args.output)
    if args.plot:
        from . import figures

        figures.render_distance(breakdown, angle, figures.figure_path(args.output))
    return 0


def cmd_bloch(args) -> int:
    payload = pio.load_json(args.input)
    pt0 = SpherePoint(float(payload["initial"]["theta"]), float(payload["initial"]["phi"]))
    e1, e2 = (float(v) for v in payload["energies"])
    t_final = args.t_final if args.t_final is not None else float(payload["t_final"])
    dt = args.dt if args.dt is not None else float(payload["dt"])
    steps = int(round(t_final / dt))
    times = [k * dt for k in range(steps + 1)]
    if times[-1] < t_final - dt * 1e-9:
        times.append(t_final)
    points = [evolve_two_level(pt0, e1, e2, t) for t in times]
    pio.write_bloch_csv(times, points, args.output)
    if args.plot:
        from . import figures

        figures.render_bloch(times, points, figures.figure_path(args.output))
    return 0


def cmd_verify(args) -> int:
    results = run_checks(seed=args.seed, only_n=args.n, tolerance_override=args.tolerance)
    rows = report_rows(results)
    report = {
        "seed": args.seed,
        "checks": rows,
        "all_pass": all(r["pass"] for r in rows),
    }
    if args.output:
        pio.save_json(report, args.output)
    else:
        import json

        print(json.dumps(report, indent=2, sort_keys=True))
    for row in rows:
        mark = "pass" if row["pass"] else "FAIL"
        print(
            f"{mark}  {row['check']} (n={row['n']}): residual {row['max_residual']:.3e}"
            f" vs tolerance {row['tolerance']:.1e}  [{row['cases']} cases]",
            file=sys.stderr,
        )
    if args.plot and args.output:
        from . import figures

        figures.render_verify(rows, figures.figure_path(args.output))
    return 0 if report["all_pass"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prepspace",
        description="Probability-and-phase (preparation space) quantum dynamics toolkit",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_evolve = sub.add_parser("evolve", help="integrate the canonical equations of motion")
    _add_common(p_evolve)
    p_evolve.add_argument("--dt", type=float, default=None, help="override the problem's step")
    p_evolve.add_argument("--t-final", type=float, default=None, help="override the final time")
    p_evolve.add_argument("--method", choices=["implicit-midpoint", "rk4-renormalized"],
                          default=None, help="override the integrator")
    p_evolve.set_defaults(func=cmd_evolve)

    p_transform = sub.add_parser("transform", help="apply a measurement-frame change to a state")
    _add_common(p_transform)
    p_transform.set_defaults(func=cmd_transform)

    p_distance = sub.add_parser("distance", help="line element and ray angle between two states")
    _add_common(p_distance)
    p_distance.set_defaults(func=cmd_distance)

    p_bloch = sub.add_parser("bloch", help="two-level sphere trajectory")
    _add_common(p_bloch)
    p_bloch.add_argument("--dt", type=float, default=None, help="override the sampling step")
    p_bloch.add_argument("--t-final", type=float, default=None, help="override the final time")
    p_bloch.set_defaults(func=cmd_bloch)

    p_verify = sub.add_parser("verify", help="run the seeded property suite")
    p_verify.add_argument("--output", default=None, help="write the JSON report here")
    p_verify.add_argument("--seed", type=int, default=42, help="master seed (default 42)")
    p_verify.add_argument("--n", type=int, default=None, help="restrict checks to one dimension")
    p_verify.add_argument("--tolerance", type=float, default=None,
                          help="override every check's tolerance")
    p_verify.add_argument("--plot", action="store_true",
                          help="render a residual chart next to the report")
    p_verify.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PrepspaceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
