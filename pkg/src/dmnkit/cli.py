"""Command-line front end.

    dmnkit design  --scenario dmn-rh --out out/rh
    dmnkit sweep   --scenario dmn-le --loss q-factor --out out/le
    dmnkit compare --out out/all
    dmnkit tables  --scenario ndm

Flags override values read from ``--config``.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from .circuit import CircuitError
from .scenarios import SCENARIOS, RunConfig, SweepGrid, compare, config_from_file, design, print_tables, run, write_design


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--scenario", choices=SCENARIOS, help="design flow to run")
    common.add_argument("--config", type=Path, help="JSON run configuration")
    common.add_argument("--fr", type=float, help="design frequency in Hz")
    common.add_argument("--spacing", type=float, help="element spacing in wavelengths")
    common.add_argument("--points", type=int, help="number of sweep points")
    common.add_argument("--fmin", type=float, help="sweep start in Hz")
    common.add_argument("--fmax", type=float, help="sweep stop in Hz")
    common.add_argument("--loss", choices=("ideal", "q-factor"), help="component loss model (dmn-le)")
    common.add_argument("--zat", choices=("published", "model"), help="array impedance source for the design")
    common.add_argument("--out", help="output directory")

    p = argparse.ArgumentParser(prog="dmnkit", description="Decoupling and matching network design for dipole arrays")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("design", parents=[common], help="write design_report.json and netlist.json")
    sub.add_parser("sweep", parents=[common], help="design, sweep and write all artifacts")
    cmp = sub.add_parser("compare", parents=[common], help="run every scenario and write a combined CSV")
    cmp.add_argument("--jobs", type=int, help="scenarios run concurrently")
    sub.add_parser("tables", parents=[common], help="print design tables next to published values")
    return p


def resolve_config(args: argparse.Namespace) -> RunConfig:
    cfg = config_from_file(args.config) if args.config else RunConfig()
    kw = {}
    if args.scenario:
        kw["scenario"] = args.scenario
    if args.fr is not None:
        kw["f_r"] = args.fr
    if args.spacing is not None:
        kw["spacing"] = args.spacing
    if args.loss:
        kw["loss"] = args.loss
    if args.zat:
        kw["z_at"] = args.zat
    if args.out:
        kw["out"] = args.out
    if any(v is not None for v in (args.points, args.fmin, args.fmax)):
        s = cfg.sweep
        kw["sweep"] = SweepGrid(
            s.f_min if args.fmin is None else args.fmin,
            s.f_max if args.fmax is None else args.fmax,
            s.points if args.points is None else args.points,
        )
    return replace(cfg, **kw).validate()


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        cfg = resolve_config(args)
        if args.command == "compare":
            out = compare(cfg, jobs=args.jobs)
            for name, worst in out["summary"]["worst_s_at_f_r_db"].items():
                print(f"{name:12s} worst |S| at f_r: {worst:9.2f} dB")
            print(f"wrote {Path(cfg.out) / 'compare.csv'}")
            return 0
        if cfg.scenario == "compare":
            raise ValueError("use the compare subcommand for scenario 'compare'")
        if args.command == "tables":
            sys.stdout.write(print_tables(cfg))
        elif args.command == "design":
            for path in write_design(design(cfg), Path(cfg.out)):
                print(f"wrote {path}")
        else:
            res = run(cfg)
            bw = res.bandwidth
            interval = bw["interval_hz"]
            span = "empty" if interval is None else f"{interval[0] / 1e9:.4f}-{interval[1] / 1e9:.4f} GHz"
            print(f"{cfg.scenario}: {bw['measure']} below {bw['threshold_db']:g} dB: {span}")
            print(f"wrote {cfg.out}")
    except (ValueError, ArithmeticError, CircuitError, OSError) as exc:
        print(f"dmnkit: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
