"""Command-line front end.

Usage::

    fclrel mttf --scenario paper_repro --topology shunt_parallel
    fclrel mttf --diagram chain.txt
    fclrel compare --scenario paper_repro
    fclrel region --tj 106.2 --tjh 44.9 --a 3082
    fclrel losses --waveform current.csv --rs 0.265923
    fclrel cost --scenario paper_repro --rank --csv cost.csv
    fclrel sweep --scenario paper_repro --param t_a --from 0 --to 50 --steps 11
    fclrel mc-validate --scenario paper_repro --trials 1000000 --seed 7
    fclrel diagram --scenario paper_repro --topology series_standby

Exit status is 0 on success and 2 on any usage or validation error.
"""
from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .cost import rank_configurations
from .exceptions import ReliabilityError, ScenarioError
from .failure import DEFAULT_ACTIVATION_K
from .markov import format_diagram, mttf, parse_diagram
from .montecarlo import McConfig, simulate_mttf
from .scenario import load_scenario
from .thermal import LossSpec, junction_temperature, power_loss, read_waveform_csv
from .topologies import (
    REDUNDANT,
    SWEEP_PARAMETERS,
    Topology,
    build_diagram,
    heatsink_condition,
    imperfect_coverage_winner,
    mttf_closed_form,
    perfect_coverage_winner,
    region_verdict,
    sensitivity_sweep,
)
from .units import HOURS_PER_MILLION, per_hour_to_fit

EXIT_OK = 0
EXIT_USAGE = 2

SWEEP_COLUMNS = {
    Topology.SHUNT_PARALLEL: "mttf_sh_p_h",
    Topology.SHUNT_STANDBY: "mttf_sh_sb_h",
    Topology.SERIES_PARALLEL: "mttf_s_p_h",
    Topology.SERIES_STANDBY: "mttf_s_sb_h",
}


def _fmt(value, full):
    if isinstance(value, (float, np.floating)):
        return repr(float(value)) if full else format(float(value), ".6g")
    return str(value)


def _emit(args, header, rows, out):
    full = args.precision == "full"
    text_rows = [[_fmt(v, full) for v in row] for row in rows]
    widths = [max(len(h), *(len(r[k]) for r in text_rows)) if text_rows else len(h) for k, h in enumerate(header)]
    print("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip(), file=out)
    for r in text_rows:
        print("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip(), file=out)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(header)
            w.writerows(text_rows)


def _scenario(args):
    if not args.scenario:
        raise ScenarioError("--scenario is required for this command")
    return load_scenario(args.scenario)


def cmd_mttf(args, out):
    if args.diagram:
        d = parse_diagram(Path(args.diagram).read_text())
        value = mttf(d)
        _emit(args, ["mttf_h", "mttf_1e6h"], [[value, value / HOURS_PER_MILLION]], out)
        return
    scn = _scenario(args)
    t = scn.get_topology(args.topology)
    rates, cov = scn.switch_rates(), scn.coverage()
    closed = mttf_closed_form(t, rates, cov)
    engine = mttf(build_diagram(t, rates, cov))
    _emit(
        args,
        ["topology", "mttf_h", "mttf_1e6h", "markov_h"],
        [[t.value, closed, closed / HOURS_PER_MILLION, engine]],
        out,
    )


def cmd_compare(args, out):
    scn = _scenario(args)
    rates, cov = scn.switch_rates(), scn.coverage()
    t_j, t_j_h = scn.junction_temperatures()
    rows = [[t.value, mttf_closed_form(t, rates, cov)] for t in Topology]
    _emit(args, ["topology", "mttf_h"], rows, out)
    full = args.precision == "full"
    print(f"t_j = {_fmt(t_j, full)} degC, t_j_h = {_fmt(t_j_h, full)} degC", file=out)
    print(
        f"lambda_sw = {_fmt(per_hour_to_fit(rates.lambda_sw), full)} FIT, "
        f"lambda_sw_h = {_fmt(per_hour_to_fit(rates.lambda_sw_h), full)} FIT",
        file=out,
    )
    verdicts = [
        ("rate_ratio", perfect_coverage_winner(rates.lambda_sw / rates.lambda_sw_h)),
        ("temperature", region_verdict(t_j, t_j_h, scn.a)),
        ("heatsink", heatsink_condition(scn.full_load_loss(), scn.half_load_loss(), scn.stack(), scn.a)),
        (
            "imperfect_coverage",
            imperfect_coverage_winner(rates.lambda_sw_h / rates.lambda_sw, cov, full=not args.truncated),
        ),
    ]
    for name, v in verdicts:
        print(
            f"{name}: {v.winner} (value {_fmt(v.value, full)}, boundary {_fmt(v.boundary_value, full)})",
            file=out,
        )


def cmd_region(args, out):
    if args.tj is not None and args.tjh is not None:
        t_j, t_j_h, a = args.tj, args.tjh, args.a if args.a is not None else DEFAULT_ACTIVATION_K
    elif args.scenario:
        scn = _scenario(args)
        t_j, t_j_h = scn.junction_temperatures()
        a = args.a if args.a is not None else scn.a
    else:
        raise ScenarioError("give --tj and --tjh, or --scenario")
    v = region_verdict(t_j, t_j_h, a, exact=args.exact)
    _emit(args, ["winner", "t_j", "boundary_t_j"], [[v.winner, float(t_j), v.boundary_value]], out)


def cmd_losses(args, out):
    scn = load_scenario(args.scenario) if args.scenario else None

    def pick(flag, key):
        value = getattr(args, flag)
        if value is not None:
            return value
        return getattr(scn, key) if scn is not None else 0.0

    spec = LossSpec(
        read_waveform_csv(args.waveform),
        f_sw=pick("fsw", "f_sw_hz"),
        e_on=pick("eon", "e_on_j"),
        e_off=pick("eoff", "e_off_j"),
        v_0=pick("v0", "v0_v"),
        r_s=pick("rs", "r_s_ohm"),
    )
    p = power_loss(spec)
    if scn is not None and scn.t_a_c is not None and scn.r_jc is not None and scn.r_ha is not None:
        _emit(args, ["p_loss_w", "t_j"], [[p, junction_temperature(scn.stack(), p)]], out)
    else:
        _emit(args, ["p_loss_w"], [[p]], out)


def cmd_cost(args, out):
    scn = _scenario(args)
    ranked = rank_configurations(scn)
    if not args.rank:
        order = {t: k for k, t in enumerate(Topology)}
        ranked = sorted(ranked, key=lambda item: order[item[0]])
    if args.topology:
        t = scn.get_topology(args.topology)
        ranked = [item for item in ranked if item[0] is t]
    rows = [
        [t.value, b.c_inst, b.c_loss, b.c_repair, b.c_outage, b.mttf, b.lc] for t, b in ranked
    ]
    _emit(args, ["topology", "c_inst", "c_loss", "c_repair", "c_outage", "mttf_h", "lc_per_Mh"], rows, out)


def cmd_sweep(args, out):
    scn = _scenario(args)
    if args.param is None or args.start is None or args.stop is None:
        raise ScenarioError("sweep needs --param, --from and --to")
    if args.steps < 1:
        raise ScenarioError("--steps must be >= 1")
    grid = np.linspace(args.start, args.stop, args.steps)
    rows = sensitivity_sweep(scn, args.param, grid, full=not args.truncated)
    header = ["param", "value"] + [SWEEP_COLUMNS[t] for t in REDUNDANT] + ["winner"]
    table = [[r.param, r.value] + [r.mttf[t] for t in REDUNDANT] + [r.winner] for r in rows]
    _emit(args, header, table, out)


def cmd_mc_validate(args, out):
    scn = _scenario(args)
    rates, cov = scn.switch_rates(), scn.coverage()
    topologies = [scn.get_topology(args.topology)] if args.topology else list(Topology)
    rows = []
    for t in topologies:
        d = build_diagram(t, rates, cov)
        analytic = mttf(d)
        cutoff = args.cutoff_hours if args.cutoff_hours else 1000.0 * analytic
        res = simulate_mttf(d, McConfig(args.trials, args.seed, cutoff, n_jobs=args.jobs))
        closed = mttf_closed_form(t, rates, cov)
        validated = t is not Topology.SERIES_STANDBY or cov.p_series_standby == 1.0
        rows.append(
            [
                t.value,
                analytic,
                closed,
                res.mean_ttf,
                res.std_error,
                res.z_score(analytic),
                res.censored_count,
                "yes" if validated else "no",
            ]
        )
    _emit(
        args,
        ["topology", "markov_h", "closed_form_h", "simulated_h", "std_error_h", "z", "censored", "validated"],
        rows,
        out,
    )


def cmd_diagram(args, out):
    scn = _scenario(args)
    t = scn.get_topology(args.topology)
    out.write(format_diagram(build_diagram(t, scn.switch_rates(), scn.coverage())))


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--scenario", metavar="FILE", help="scenario file or bundled name (e.g. paper_repro)")
    common.add_argument("--topology", metavar="NAME", choices=[t.value for t in Topology])
    common.add_argument("--csv", metavar="PATH", help="also write the result table as CSV")
    common.add_argument(
        "--precision", choices=("6g", "full"), default="6g", help="number format (default: 6 significant digits)"
    )
    coverage = argparse.ArgumentParser(add_help=False)
    form = coverage.add_mutually_exclusive_group()
    form.add_argument(
        "--full-eq24",
        dest="truncated",
        action="store_false",
        help="use the full imperfect-coverage break-even ratio (default)",
    )
    form.add_argument(
        "--truncated",
        dest="truncated",
        action="store_true",
        help="drop the small last denominator term of the break-even ratio",
    )

    parser = argparse.ArgumentParser(prog="fclrel", description="Reliability and cost analysis of redundant SSFCL switches.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mttf", parents=[common], help="MTTF of a topology or a diagram file")
    p.add_argument("--diagram", metavar="FILE", help="state diagram in text format (rates in FIT)")
    p.set_defaults(func=cmd_mttf)

    p = sub.add_parser("compare", parents=[common, coverage], help="MTTF of every topology and break-even verdicts")
    p.set_defaults(func=cmd_compare, truncated=False)

    p = sub.add_parser("region", parents=[common], help="classify a junction temperature pair")
    p.add_argument("--tj", type=float, help="full-load junction temperature, degC")
    p.add_argument("--tjh", type=float, help="half-load junction temperature, degC")
    p.add_argument("--a", type=float, help=f"Arrhenius constant, K (default {DEFAULT_ACTIVATION_K:g})")
    p.add_argument("--exact", action="store_true", help="use the exact rather than linearised boundary")
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("losses", parents=[common], help="device loss from a current waveform")
    p.add_argument("--waveform", metavar="FILE", required=True, help="CSV with header t_s,i_a")
    p.add_argument("--v0", type=float, help="threshold voltage, V")
    p.add_argument("--rs", type=float, help="on-state resistance, ohm")
    p.add_argument("--fsw", type=float, help="switching frequency, Hz")
    p.add_argument("--eon", type=float, help="turn-on energy, J")
    p.add_argument("--eoff", type=float, help="turn-off energy, J")
    p.set_defaults(func=cmd_losses)

    p = sub.add_parser("cost", parents=[common], help="levelized cost per configuration")
    p.add_argument("--rank", action="store_true", help="sort by levelized cost")
    p.set_defaults(func=cmd_cost)

    p = sub.add_parser("sweep", parents=[common, coverage], help="sensitivity of the winner to one parameter")
    p.add_argument("--param", choices=SWEEP_PARAMETERS)
    p.add_argument("--from", dest="start", type=float)
    p.add_argument("--to", dest="stop", type=float)
    p.add_argument("--steps", type=int, default=11)
    p.set_defaults(func=cmd_sweep, truncated=False)

    p = sub.add_parser("mc-validate", parents=[common], help="Monte Carlo check of the analytic MTTFs")
    p.add_argument("--trials", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cutoff-hours", type=float, help="censoring time (default 1000x analytic MTTF)")
    p.add_argument("--jobs", type=int, default=1, help="worker threads; results do not depend on it")
    p.set_defaults(func=cmd_mc_validate)

    p = sub.add_parser("diagram", parents=[common], help="print a topology's state diagram")
    p.set_defaults(func=cmd_diagram)
    return parser


def run(argv=None, out=None, err=None):
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        args.func(args, out)
    except (ReliabilityError, OSError) as exc:
        print(f"fclrel {args.command}: error: {exc}", file=err)
        return EXIT_USAGE
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
