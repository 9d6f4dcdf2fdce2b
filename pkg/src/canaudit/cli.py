"""Command-line interface: audit loss files, print baselines, simulate, ROC.

Exit codes: 0 on success, 1 on a dataset parse/validation problem
(diagnostic on stderr), 2 on invalid flags.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .attack import roc, roc_to_csv
from .audit import audit_pipeline
from .baseline import monte_carlo_baseline
from .exposure import TIE_POLICIES
from .ingest import DatasetError, parse_dataset, serialize_dataset
from .report import build_report, render_csv, render_json, render_markdown
from .simulate import GaussianShiftModel, simulate


def _positive_int(parser: argparse.ArgumentParser, name: str, value: int) -> int:
    if value < 1:
        parser.error(f"{name} must be >= 1, got {value}")
    return value


def _unit_interval(parser: argparse.ArgumentParser, name: str, value: float,
                   open_ends: bool = True) -> float:
    if open_ends and not 0.0 < value < 1.0:
        parser.error(f"{name} must be in (0, 1), got {value}")
    if not open_ends and not 0.0 <= value <= 1.0:
        parser.error(f"{name} must be in [0, 1], got {value}")
    return value


def _guess_format(path: str, explicit: str | None) -> str:
    if explicit is not None:
        return explicit
    return "jsonl" if path.endswith(".jsonl") else "csv"


def _load_dataset(path: str, format: str):
    raw = Path(path).read_bytes()
    return parse_dataset(raw, format)


def _parse_statistic(parser: argparse.ArgumentParser, token: str):
    if token == "mean":
        return "mean", None
    if token.startswith("quantile="):
        try:
            q = float(token.split("=", 1)[1])
        except ValueError:
            parser.error(f"malformed quantile in --statistic {token!r}")
        _unit_interval(parser, "quantile", q)
        return "quantile", q
    parser.error(f"--statistic must be 'mean' or 'quantile=Q', got {token!r}")


def _cmd_audit(parser: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    _unit_interval(parser, "--confidence", args.confidence)
    for target in args.fpr_target:
        _unit_interval(parser, "--fpr-target", target, open_ends=False)
    if args.histogram_bins is not None:
        _positive_int(parser, "--histogram-bins", args.histogram_bins)
    try:
        d = _load_dataset(args.file, _guess_format(args.file, args.format))
    except (DatasetError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    operating_points = ["median"] + list(args.fpr_target)
    result = audit_pipeline(
        d,
        operating_points=operating_points,
        confidence=args.confidence,
        tie_policy=args.tie_policy,
    )
    document = build_report(d, result, histogram_bins=args.histogram_bins)
    renderer = {"json": render_json, "md": render_markdown, "csv": render_csv}[args.out]
    sys.stdout.write(renderer(document))
    return 0


def _cmd_baseline(parser: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    _positive_int(parser, "--m", args.m)
    _positive_int(parser, "--n", args.n)
    _positive_int(parser, "--trials", args.trials)
    statistic, q = _parse_statistic(parser, args.statistic)
    summary = monte_carlo_baseline(args.m, args.n, statistic, args.trials, args.seed, q)
    name = statistic if q is None else f"quantile {q:g}"
    print(f"random-guessing baseline for {name} exposure (m={args.m}, n={args.n})")
    if summary.exact_value is not None:
        print(f"  exact:       {summary.exact_value!r}")
    print(f"  asymptotic:  {summary.asymptotic_value!r}")
    print(f"  monte carlo: {summary.mc_mean!r} (std {summary.mc_std!r}, "
          f"trials {summary.trials}, seed {summary.seed})")
    for p in sorted(summary.mc_quantiles):
        print(f"    mc quantile {p:g}: {summary.mc_quantiles[p]!r}")
    return 0


def _cmd_simulate(parser: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    _positive_int(parser, "--m", args.m)
    _positive_int(parser, "--n", args.n)
    if args.mu < 0:
        parser.error(f"--mu must be >= 0, got {args.mu}")
    if args.sigma <= 0:
        parser.error(f"--sigma must be > 0, got {args.sigma}")
    model = GaussianShiftModel(
        mu=args.mu, sigma=args.sigma, m=args.m, n=args.n, seed=args.seed
    )
    d = simulate(model)
    text = serialize_dataset(d, args.format)
    try:
        Path(args.out_file).write_text(text, encoding="utf-8")
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {d.m} canaries and {d.n} references to {args.out_file}")
    return 0


def _cmd_roc(parser: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    try:
        d = _load_dataset(args.file, _guess_format(args.file, args.format))
    except (DatasetError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    text = roc_to_csv(roc(d))
    if args.out_file is None:
        sys.stdout.write(text)
    else:
        try:
            Path(args.out_file).write_text(text, encoding="utf-8")
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="canaudit",
        description="Audit training privacy from canary/reference loss files.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    audit = sub.add_parser(
        "audit", help="exposure report, baselines, and epsilon lower bounds"
    )
    audit.add_argument("file", help="loss file (CSV or JSONL)")
    audit.add_argument("--format", choices=["csv", "jsonl"], default=None,
                       help="input format (default: by file extension)")
    audit.add_argument("--confidence", type=float, default=0.95,
                       help="confidence level for epsilon bounds (default 0.95)")
    audit.add_argument("--fpr-target", type=float, action="append", default=[],
                       metavar="FPR", help="extra low-FPR operating point (repeatable)")
    audit.add_argument("--tie-policy", choices=list(TIE_POLICIES),
                       default="pessimistic")
    audit.add_argument("--out", choices=["json", "md", "csv"], default="json",
                       help="report rendering (default json)")
    audit.add_argument("--histogram-bins", type=int, default=None,
                       help="number of histogram bins (default: width-0.5 bins)")
    audit.set_defaults(func=_cmd_audit)

    baseline = sub.add_parser(
        "baseline", help="random-guessing baseline for an exposure statistic"
    )
    baseline.add_argument("--m", type=int, required=True, help="number of canaries")
    baseline.add_argument("--n", type=int, required=True, help="number of references")
    baseline.add_argument("--statistic", default="mean",
                          help="'mean' or 'quantile=Q' (default mean)")
    baseline.add_argument("--trials", type=int, default=1000)
    baseline.add_argument("--seed", type=int, default=0)
    baseline.set_defaults(func=_cmd_baseline)

    sim = sub.add_parser("simulate", help="write a synthetic loss file")
    sim.add_argument("--mu", type=float, required=True,
                     help="memorization shift (0 = random guessing)")
    sim.add_argument("--sigma", type=float, default=1.0)
    sim.add_argument("--m", type=int, required=True)
    sim.add_argument("--n", type=int, required=True)
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--out-file", required=True)
    sim.add_argument("--format", choices=["csv", "jsonl"], default="csv")
    sim.set_defaults(func=_cmd_simulate)

    roc_cmd = sub.add_parser("roc", help="full threshold sweep as CSV")
    roc_cmd.add_argument("file", help="loss file (CSV or JSONL)")
    roc_cmd.add_argument("--format", choices=["csv", "jsonl"], default=None)
    roc_cmd.add_argument("--out-file", default=None,
                         help="write CSV here instead of stdout")
    roc_cmd.set_defaults(func=_cmd_roc)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(parser, args)


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
