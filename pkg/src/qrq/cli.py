"""Command-line front end.

Subcommands: classify, phi, sweep, verify, tables.
Exit codes: 0 success, 1 usage or configuration error, 2 verification failure.
All angles are radians unless --degrees is given.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import core, oracle, sweeps
from .core import BRANCHES, QrqParams
from .gates import NonUnitaryInput, weyl_coordinates


def _params_from_args(args):
    scale = np.pi / 180.0 if args.degrees else 1.0
    return QrqParams(xi1=args.xi1, xi2=args.xi2,
                     theta1=args.theta1 * scale, theta2=args.theta2 * scale)


def cmd_classify(args):
    p = _params_from_args(args)
    report = core.regime_classify(p, tol=args.tol)
    out = report.to_json_dict()
    gate = core.two_qubit_gate(p)
    if isinstance(gate, core.NonUnitaryBlock):
        out.update({"g1_re": None, "g1_im": None, "g2": None,
                    "alpha": None, "chamber_coords": None, "entangling_power": None})
        if args.json:
            print(json.dumps(out))
        else:
            print("NonUnitary two-qubit block")
            print(f"  unitarity residual : {gate.residual:.6e}")
            print(f"  regime             : {report.regime}")
            _print_probabilities(report)
        return 0
    try:
        from .gates import local_invariants

        inv = local_invariants(gate)
        weyl = weyl_coordinates(gate)
    except NonUnitaryInput:
        print("NonUnitary two-qubit block (invariant extraction rejected input)")
        return 0
    out.update({
        "g1_re": inv.g1.real, "g1_im": inv.g1.imag, "g2": inv.g2,
        "alpha": list(weyl.alpha), "chamber_coords": list(weyl.chamber_coords),
        "entangling_power": inv.entangling_power,
    })
    if args.json:
        print(json.dumps(out))
    else:
        print(f"class              : {report.class_label}")
        print(f"regime             : {report.regime}")
        print(f"g1                 : {inv.g1.real:+.9f} {inv.g1.imag:+.9f}i")
        print(f"g2                 : {inv.g2:+.9f}")
        print(f"alpha              : ({weyl.alpha[0]:.9f}, {weyl.alpha[1]:.9f}, {weyl.alpha[2]:.9f})")
        print(f"chamber coordinates: ({weyl.chamber_coords[0]:.9f}, "
              f"{weyl.chamber_coords[1]:.9f}, {weyl.chamber_coords[2]:.9f})")
        print(f"entangling power   : {inv.entangling_power:.9f}")
        _print_probabilities(report)
    return 0


def _print_probabilities(report):
    d = report.decomposition
    print(f"  p_gate = {d.p_gate:.9f}  p_nq = {d.p_nq:.9f}  p_vac = {d.p_vac:.9f}")
    print(f"  unitarity residual = {d.unitarity_residual:.3e}")


def cmd_phi(args):
    branches = BRANCHES if args.all else (args.branch,)
    rows = []
    for branch in branches:
        sol = core.phi_en(args.x, args.delta, branch)
        if sol.absent:
            rows.append({"branch": branch, "phi_en": None,
                         "discriminant": sol.discriminant})
        else:
            rows.append({"branch": branch, "phi_en": sol.phi_en,
                         "residual": sol.residual, "discriminant": sol.discriminant})
    if args.json:
        print(json.dumps(rows))
    else:
        for r in rows:
            if r["phi_en"] is None:
                print(f"{r['branch']}: absent (discriminant {r['discriminant']:.6e})")
            else:
                print(f"{r['branch']}: phi_en = {r['phi_en']:+.12f}  "
                      f"residual = {r['residual']:.3e}")
    return 0


def cmd_sweep(args):
    if args.preset is not None:
        config = sweeps.PRESETS[args.preset]
        if args.out:
            config.output = args.out
    elif args.config is not None:
        try:
            with open(args.config, encoding="utf-8") as fh:
                config = sweeps.SweepConfig.from_json(fh.read())
        except (OSError, ValueError, TypeError, KeyError) as exc:
            print(f"config error: {exc}", file=sys.stderr)
            return 1
        if args.out:
            config.output = args.out
    else:
        try:
            config = sweeps.SweepConfig(
                mode=args.mode, branches=tuple(args.branch),
                nu=args.nu, delta=args.delta,
                x_range=(args.x_lo, args.x_hi), x_points=args.x_points,
                y_range=(args.y_lo, args.y_hi), y_points=args.y_points,
                output=args.out,
            )
        except (ValueError, TypeError) as exc:
            print(f"config error: {exc}", file=sys.stderr)
            return 1
    try:
        csv_path, summary_path = sweeps.run_grid(config)
    except RuntimeError as exc:
        print(f"consistency check failed: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {csv_path} and {summary_path}")
    return 0


def cmd_verify(args):
    if args.samples <= 0:
        print("samples must be positive", file=sys.stderr)
        return 1
    rng = np.random.default_rng(args.seed)
    results = []
    worst = None
    for _ in range(args.samples):
        p = QrqParams(
            xi1=float(rng.uniform(0.05, args.max_xi)),
            xi2=float(rng.uniform(0.05, args.max_xi)),
            theta1=float(rng.uniform(-np.pi, np.pi)),
            theta2=float(rng.uniform(-np.pi, np.pi)),
        )
        rep = oracle.compare_closed_form(p)
        results.append(rep.to_json_dict())
        if worst is None or rep.max_rel_err > worst["max_rel_err"]:
            worst = rep.to_json_dict()
    max_err = max(r["max_rel_err"] for r in results)
    report = {
        "samples": args.samples,
        "max_xi": args.max_xi,
        "seed": args.seed,
        "max_rel_err": max_err,
        "tolerance": 1e-6,
        "worst": worst,
        "sensitivity": sweeps.sensitivity_probe(),
        "results": results,
    }
    with open(args.report, "w", encoding="utf-8") as fh:
        json.dump(report, fh, indent=1)
    print(f"max relative error over {args.samples} samples: {max_err:.3e}")
    print(f"report written to {args.report}")
    return 0 if max_err <= 1e-6 else 2


def cmd_tables(args):
    rows = sweeps.verify_tables(args.which)
    ok = True
    for row in rows:
        status = "pass" if row["pass"] else "FAIL"
        ok = ok and row["pass"]
        desc = {k: v for k, v in row.items() if k != "pass"}
        print(f"[{status}] {json.dumps(desc, default=float)}")
    return 0 if ok else 2


def build_parser():
    parser = argparse.ArgumentParser(prog="qrq", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("classify", help="classify the gate at given protocol parameters")
    pc.add_argument("--xi1", type=float, required=True)
    pc.add_argument("--xi2", type=float, required=True)
    pc.add_argument("--theta1", type=float, required=True)
    pc.add_argument("--theta2", type=float, required=True)
    pc.add_argument("--tol", type=float, default=1e-9)
    pc.add_argument("--degrees", action="store_true", help="interpret angles in degrees")
    pc.add_argument("--json", action="store_true")
    pc.set_defaults(func=cmd_classify)

    pp = sub.add_parser("phi", help="solve the entangling-phase condition")
    pp.add_argument("--x", type=float, required=True)
    pp.add_argument("--delta", type=float, required=True)
    pp.add_argument("--branch", choices=BRANCHES, default="mm")
    pp.add_argument("--all", action="store_true", help="print all four branches")
    pp.add_argument("--json", action="store_true")
    pp.set_defaults(func=cmd_phi)

    ps = sub.add_parser("sweep", help="run a parameter sweep to CSV")
    ps.add_argument("--preset", choices=sorted(sweeps.PRESETS))
    ps.add_argument("--config", help="JSON sweep configuration file")
    ps.add_argument("--mode", choices=("x_delta", "x_nu", "xi_theta2_appendix"),
                    default="x_delta")
    ps.add_argument("--branch", action="append", default=None,
                    help="branch block to emit (repeatable)")
    ps.add_argument("--nu", type=float, default=None)
    ps.add_argument("--delta", type=float, default=None)
    ps.add_argument("--x-lo", type=float, default=2.0)
    ps.add_argument("--x-hi", type=float, default=1e5)
    ps.add_argument("--x-points", type=int, default=200)
    ps.add_argument("--y-lo", type=float, default=-1.4)
    ps.add_argument("--y-hi", type=float, default=1.4)
    ps.add_argument("--y-points", type=int, default=200)
    ps.add_argument("--out", default=None)
    ps.set_defaults(func=cmd_sweep)

    pv = sub.add_parser("verify", help="compare closed forms against the Fock oracle")
    pv.add_argument("--max-xi", type=float, default=2.0)
    pv.add_argument("--samples", type=int, default=200)
    pv.add_argument("--seed", type=int, default=20240901)
    pv.add_argument("--report", default="verify_report.json")
    pv.set_defaults(func=cmd_verify)

    pt = sub.add_parser("tables", help="verify the asymptotic parameter tables")
    pt.add_argument("--which", type=int, required=True, choices=(1, 2, 3))
    pt.set_defaults(func=cmd_tables)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    if getattr(args, "command", None) == "sweep" and args.branch is None:
        args.branch = ["mm"]
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
