"""Command-line front end.

Subcommands: generate, ingest, ct, tcc, dist, rank, compare, churn and a
hidden oracle-check fuzzer. Every run prints a reproducibility header
(version, full configuration, seed) to stdout; artifacts are written to
files named by --out. Exit codes: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from fractions import Fraction
from typing import IO, Sequence

from . import __version__
from .centrality import (
    MetricSpec,
    comparison_summary,
    compare_topk_random,
    default_eval_range,
    empirical_distribution,
    metric_sweep,
    rank_instants,
    read_table_csv,
    format_value,
    write_comparison_csv,
    write_distribution_csv,
    write_table_csv,
)
from .diffusion import spread_profile
from .ingest import ContactLogError, IngestConfig, discretize_with_stats, parse_contacts
from .oracle import expand, reach_profile
from .synth import ErTvgSpec, generate_er_tvg, reference_spec
from .tvg import TVG, TemporalNode, TvgFormatError, churn_rate, load_tvg, save_tvg


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # usage problems must exit 1, not argparse's default 2
    def error(self, message: str):
        raise _UsageError(message)


def _parse_tau(text: str) -> Fraction:
    try:
        tau = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise _UsageError(f"invalid tau {text!r}") from None
    if not 0 < tau <= 1:
        raise _UsageError(f"tau must be in (0, 1], got {text}")
    return tau


def _parse_range(text: str, num_instants: int) -> tuple[int, int]:
    try:
        first_text, last_text = text.split(":")
        first, last = int(first_text), int(last_text)
    except ValueError:
        raise _UsageError(f"invalid range {text!r}, expected FIRST:LAST") from None
    if not (0 <= first < last <= num_instants):
        raise _UsageError(
            f"range [{first},{last}) invalid for {num_instants} instants"
        )
    return first, last


def _print_header(args: argparse.Namespace, config: dict[str, object]) -> None:
    print(f"# timecent {__version__}")
    print(f"# command: {args.command}")
    parts = " ".join(f"{k}={v}" for k, v in config.items())
    print(f"# config: {parts}")


def _write_text(path: str, writer) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer(fh)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="timecent", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"timecent {__version__}")
    # metavar hides help-less subcommands (oracle-check) from the listing
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("generate", help="generate a randomized TVG")
    p.add_argument("--nodes", type=int, help="number of nodes")
    p.add_argument("--instants", type=int, help="number of time instants")
    p.add_argument("--prob", type=float, help="per-pair contact probability")
    p.add_argument(
        "--reference-defaults",
        action="store_true",
        help="use the built-in reference parameterization (160 nodes, 800 instants)",
    )
    p.add_argument("--seed", type=int, required=True, help="RNG seed")
    p.add_argument("--out", required=True, help="output tvg v1 path")

    p = sub.add_parser("ingest", help="discretize a contact log into a TVG")
    p.add_argument("input", help="CSV contact log: timestamp,label_a,label_b")
    p.add_argument("--granularity", type=int, default=30, help="bin size in seconds")
    p.add_argument("--start", type=int, default=None, help="first timestamp (default: stream minimum)")
    p.add_argument("--end", type=int, default=None, help="last timestamp (default: stream maximum)")
    p.add_argument("--out", required=True, help="output tvg v1 path")

    for name, help_text in (
        ("ct", "cover-time sweep over an instant range"),
        ("tcc", "time-constrained-coverage sweep over an instant range"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("input", help="tvg v1 file")
        if name == "ct":
            p.add_argument("--tau", required=True, help="fraction of nodes to cover, decimal")
        else:
            p.add_argument("--phi", type=int, required=True, help="step budget")
        p.add_argument("--range", dest="eval_range", default=None, help="FIRST:LAST, half open")
        p.add_argument("--workers", type=int, default=0, help="0 means all cores")
        p.add_argument("--out", required=True, help="output CSV path")

    p = sub.add_parser("dist", help="empirical distribution of a metric table")
    p.add_argument("table", help="metric CSV from ct/tcc")
    p.add_argument("--kind", choices=("cdf", "ccdf"), default="cdf", help="distribution flavor")
    p.add_argument("--out", required=True, help="output CSV path")

    p = sub.add_parser("rank", help="top-k most central instants of a metric table")
    p.add_argument("table", help="metric CSV from ct/tcc")
    p.add_argument("--metric", choices=("ct", "tcc"), required=True, help="metric kind of the table")
    p.add_argument("--k", type=int, required=True, help="number of instants to keep")
    p.add_argument("--out", required=True, help="output CSV path")

    p = sub.add_parser("compare", help="top-k instants vs a random baseline")
    p.add_argument("input", help="tvg v1 file")
    p.add_argument("--metric", choices=("ct", "tcc"), required=True, help="metric to sweep")
    p.add_argument("--tau", default=None, help="fraction of nodes to cover (ct), decimal")
    p.add_argument("--phi", type=int, default=None, help="step budget (tcc)")
    p.add_argument("--k", type=int, default=10, help="top set size")
    p.add_argument("--seed", type=int, required=True, help="seed for the random baseline")
    p.add_argument("--range", dest="eval_range", default=None, help="FIRST:LAST, half open")
    p.add_argument("--workers", type=int, default=0, help="0 means all cores")
    p.add_argument("--out", required=True, help="output CSV path")

    p = sub.add_parser("churn", help="contact churn rate of a TVG")
    p.add_argument("input", help="tvg v1 file")

    p = sub.add_parser("oracle-check")  # hidden fuzzer, test support
    p.add_argument("--trials", type=int, default=200, help="number of random TVGs")
    p.add_argument("--seed", type=int, default=0, help="fuzzer seed")
    p.add_argument("--max-nodes", type=int, default=8, help="node-count ceiling")
    p.add_argument("--max-instants", type=int, default=10, help="instant-count ceiling")

    return parser


def _cmd_generate(args: argparse.Namespace) -> int:
    try:
        if args.reference_defaults:
            if args.nodes or args.instants or args.prob is not None:
                raise _UsageError("--reference-defaults excludes --nodes/--instants/--prob")
            spec = reference_spec(args.seed)
        else:
            if args.nodes is None or args.instants is None or args.prob is None:
                raise _UsageError(
                    "generate needs --nodes, --instants and --prob, or --reference-defaults"
                )
            spec = ErTvgSpec(args.nodes, args.instants, args.prob, args.seed)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    _print_header(
        args,
        {
            "nodes": spec.num_nodes,
            "instants": spec.num_instants,
            "prob": repr(spec.edge_probability),
            "seed": spec.seed,
            "out": args.out,
        },
    )
    tvg = generate_er_tvg(spec)
    save_tvg(tvg, args.out)
    print(f"wrote {args.out}: {tvg.num_contacts()} contacts")
    return 0


def _cmd_ingest(args: argparse.Namespace) -> int:
    cfg = IngestConfig(args.granularity, args.start, args.end)
    _print_header(
        args,
        {
            "input": args.input,
            "granularity": args.granularity,
            "start": args.start,
            "end": args.end,
            "out": args.out,
        },
    )
    with open(args.input, "r", encoding="utf-8") as fh:
        tvg, stats = discretize_with_stats(parse_contacts(fh), cfg)
    save_tvg(tvg, args.out)
    print(
        f"wrote {args.out}: {tvg.num_nodes} nodes, {tvg.num_instants} instants,"
        f" {tvg.num_contacts()} contacts"
    )
    if stats.records_rejected:
        print(f"rejected {stats.records_rejected} of {stats.records_read} records outside range")
    return 0


def _sweep_args_to_spec(args: argparse.Namespace) -> MetricSpec:
    if args.command == "ct" or (args.command == "compare" and args.metric == "ct"):
        if getattr(args, "tau", None) is None:
            raise _UsageError("cover time needs --tau")
        return MetricSpec.ct(_parse_tau(args.tau))
    phi = getattr(args, "phi", None)
    if phi is None:
        raise _UsageError("coverage needs --phi")
    if phi < 1:
        raise _UsageError("phi must be at least 1")
    return MetricSpec.tcc(phi)


def _resolve_workers(requested: int) -> int:
    if requested < 0:
        raise _UsageError("workers must be non-negative")
    if requested == 0:
        return os.cpu_count() or 1
    return requested


def _cmd_sweep(args: argparse.Namespace) -> int:
    metric = _sweep_args_to_spec(args)
    tvg = load_tvg(args.input)
    eval_range = (
        default_eval_range(tvg.num_instants)
        if args.eval_range is None
        else _parse_range(args.eval_range, tvg.num_instants)
    )
    workers = _resolve_workers(args.workers)
    _print_header(
        args,
        {
            "input": args.input,
            "metric": metric.label(),
            "range": f"{eval_range[0]}:{eval_range[1]}",
            "workers": workers,
            "out": args.out,
        },
    )
    table = metric_sweep(tvg, metric, eval_range, workers=workers)
    _write_text(args.out, lambda fh: write_table_csv(table, fh))
    print(f"wrote {args.out}: {len(table.values)} rows")
    return 0


def _cmd_dist(args: argparse.Namespace) -> int:
    _print_header(args, {"table": args.table, "kind": args.kind, "out": args.out})
    with open(args.table, "r", encoding="utf-8") as fh:
        table = read_table_csv(fh)
    dist = empirical_distribution(table, args.kind)
    _write_text(args.out, lambda fh: write_distribution_csv(dist, fh))
    print(f"wrote {args.out}: {len(dist.points)} points")
    if dist.excluded_infinite:
        print(f"excluded {dist.excluded_infinite} infinite entries")
    return 0


def _cmd_rank(args: argparse.Namespace) -> int:
    if args.k < 1:
        raise _UsageError("k must be at least 1")
    _print_header(
        args, {"table": args.table, "metric": args.metric, "k": args.k, "out": args.out}
    )
    with open(args.table, "r", encoding="utf-8") as fh:
        table = read_table_csv(fh)
    ranked = rank_instants(table, args.k, higher_is_better=(args.metric == "tcc"))

    def write(fh: IO[str]) -> None:
        fh.write("rank,time_index,value\n")
        for pos, (t_i, value) in enumerate(ranked, start=1):
            fh.write(f"{pos},{t_i},{format_value(value)}\n")

    _write_text(args.out, write)
    print(f"wrote {args.out}: {len(ranked)} rows")
    return 0


def _cmd_compare(args: argparse.Namespace) -> int:
    if args.k < 1:
        raise _UsageError("k must be at least 1")
    metric = _sweep_args_to_spec(args)
    tvg = load_tvg(args.input)
    eval_range = (
        default_eval_range(tvg.num_instants)
        if args.eval_range is None
        else _parse_range(args.eval_range, tvg.num_instants)
    )
    workers = _resolve_workers(args.workers)
    _print_header(
        args,
        {
            "input": args.input,
            "metric": metric.label(),
            "k": args.k,
            "seed": args.seed,
            "range": f"{eval_range[0]}:{eval_range[1]}",
            "workers": workers,
            "out": args.out,
        },
    )
    table = metric_sweep(tvg, metric, eval_range, workers=workers)
    report = compare_topk_random(tvg, table, args.k, args.seed)
    _write_text(args.out, lambda fh: write_comparison_csv(report, fh))
    print(comparison_summary(report))
    print(f"wrote {args.out}")
    return 0


def _cmd_churn(args: argparse.Namespace) -> int:
    _print_header(args, {"input": args.input})
    tvg = load_tvg(args.input)
    rate = churn_rate(tvg)
    print(f"churn_rate {format_value(rate)} ({rate.numerator}/{rate.denominator})")
    return 0


def _cmd_oracle_check(args: argparse.Namespace) -> int:
    _print_header(
        args,
        {
            "trials": args.trials,
            "seed": args.seed,
            "max_nodes": args.max_nodes,
            "max_instants": args.max_instants,
        },
    )
    rng = random.Random(args.seed)
    checked = 0
    for trial in range(args.trials):
        n = rng.randint(2, args.max_nodes)
        big_n = rng.randint(1, args.max_instants)
        p = rng.choice((0.1, 0.3, 0.6))
        per_time = [
            [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < p]
            for _ in range(big_n)
        ]
        tvg = TVG.from_snapshot_pairs(n, per_time)
        g = expand(tvg)
        for node in range(n):
            for time in range(big_n):
                start = TemporalNode(node, time)
                profile = spread_profile(tvg, start)
                reach = reach_profile(g, start)
                if len(profile) != len(reach):
                    print(f"FAIL trial {trial}: profile lengths differ at {start}")
                    return 2
                for s, mask in enumerate(profile):
                    got = {v for v in range(n) if mask >> v & 1}
                    if got != reach[s]:
                        print(f"FAIL trial {trial}: mismatch at {start} step {s}")
                        return 2
                checked += 1
    print(f"ok: {checked} start nodes checked over {args.trials} TVGs")
    return 0


_COMMANDS = {
    "generate": _cmd_generate,
    "ingest": _cmd_ingest,
    "ct": _cmd_sweep,
    "tcc": _cmd_sweep,
    "dist": _cmd_dist,
    "rank": _cmd_rank,
    "compare": _cmd_compare,
    "churn": _cmd_churn,
    "oracle-check": _cmd_oracle_check,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (TvgFormatError, ContactLogError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
