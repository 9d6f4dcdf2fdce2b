"""Audit report documents: plot-ready JSON, Markdown, and CSV renderings.

The JSON document is the single source of truth; the Markdown rendering
formats values straight out of the document (via ``json.dumps`` per
value), so every number in the Markdown appears verbatim in the JSON and
nothing is ever computed twice.
"""

from __future__ import annotations

import io
import csv
import json
import math

import numpy as np

from . import __version__
from .audit import INDEPENDENCE_NOTICE, AuditResult
from .baseline import _monte_carlo_stats
from .ingest import AuditDataset, dataset_summary

SCHEMA_VERSION = 1

_MC_TRIALS = 200
_MC_SEED = 0


def _histogram(exposures: np.ndarray, n: int, bins: int | None) -> dict:
    # Exposure can only fall in [log2(n) - log2(n+1), log2(n)].
    lo = math.log2(n) - math.log2(n + 1)
    hi = math.log2(n)
    if bins is None:
        width = 0.5
        count = max(1, math.ceil((hi - lo) / width))
        edges = lo + width * np.arange(count + 1)
    else:
        edges = np.linspace(lo, hi, bins + 1)
    counts, _ = np.histogram(exposures, bins=edges)
    return {
        "bin_edges": [float(e) for e in edges],
        "counts": [int(c) for c in counts],
    }


def _baseline_rows(result: AuditResult, m: int, n: int) -> list[dict]:
    observed = {
        ("mean", None): result.exposure_report.mean_exposure,
        ("quantile", 0.5): result.exposure_report.quantile_exposures[0.5],
        ("quantile", 0.75): result.exposure_report.quantile_exposures[0.75],
    }
    specs = list(observed.keys())
    summaries = _monte_carlo_stats(m, n, specs, trials=_MC_TRIALS, seed=_MC_SEED)
    rows = []
    for (statistic, q), summary in zip(specs, summaries):
        rows.append(
            {
                "statistic": statistic,
                "q": q,
                "observed": observed[(statistic, q)],
                "exact": summary.exact_value,
                "asymptotic": summary.asymptotic_value,
                "mc_mean": summary.mc_mean,
                "mc_std": summary.mc_std,
                "mc_trials": summary.trials,
                "mc_seed": summary.seed,
            }
        )
    return rows


def _bound_rows(result: AuditResult) -> list[dict]:
    rows = []
    for outcome in result.outcomes:
        for bound in ([outcome.bound] if outcome.per_example_bound is None
                      else [outcome.bound, outcome.per_example_bound]):
            rows.append(
                {
                    "operating_point": outcome.operating_point,
                    "source": bound.source,
                    "threshold": outcome.mi.threshold,
                    "tpr": outcome.mi.tpr,
                    "fpr": outcome.mi.fpr,
                    "canary_hits": outcome.mi.canary_hits,
                    "reference_hits": outcome.mi.reference_hits,
                    "point_estimate": bound.point_estimate,
                    "confident_lower_bound": bound.confident_lower_bound,
                    "confidence": bound.confidence,
                    "alpha_split": list(bound.alpha_split),
                    "tpr_lower": bound.tpr_lower,
                    "fpr_upper": bound.fpr_upper,
                    "tie_policy": result.tie_policy,
                    "replications": bound.replications,
                    "per_example": bound.per_example,
                    "baseline": dict(outcome.baseline),
                }
            )
    return rows


def build_report(
    d: AuditDataset, result: AuditResult, histogram_bins: int | None = None
) -> dict:
    """Assemble the full audit report document as JSON-ready primitives."""
    exposures = result.exposure_report.exposures()
    per_canary = [
        {
            "index": res.canary_index,
            "id": d.canaries[res.canary_index].id,
            "loss": d.canaries[res.canary_index].loss,
            "replications": d.canaries[res.canary_index].replications,
            "rank": res.rank,
            "exposure": res.exposure,
            "empirical_fpr": res.empirical_fpr,
        }
        for res in result.exposure_report.per_canary
    ]
    warnings = [INDEPENDENCE_NOTICE]
    warnings += [o.warning for o in result.outcomes if o.warning is not None]
    return {
        "schema_version": SCHEMA_VERSION,
        "tool_version": __version__,
        "dataset": dataset_summary(d),
        "parameters": {
            "confidence": result.confidence,
            "tie_policy": result.tie_policy,
            "operating_points": [o.operating_point for o in result.outcomes],
        },
        "exposure": {
            "m": result.exposure_report.m,
            "n": result.exposure_report.n,
            "mean_exposure": result.exposure_report.mean_exposure,
            "quantile_exposures": {
                str(q): v for q, v in result.exposure_report.quantile_exposures.items()
            },
            "per_canary": per_canary,
        },
        "baselines": _baseline_rows(result, d.m, d.n),
        "epsilon_bounds": _bound_rows(result),
        "warnings": warnings,
        "histogram": _histogram(exposures, d.n, histogram_bins),
    }


def render_json(document: dict) -> str:
    return json.dumps(document, indent=2) + "\n"


def _fmt(value) -> str:
    # json.dumps of a scalar reproduces exactly the token the JSON
    # rendering contains, keeping Markdown numbers verbatim-checkable.
    return json.dumps(value)


def render_markdown(document: dict, max_canary_rows: int = 20) -> str:
    """Human-readable rendering of a report document."""
    out = io.StringIO()
    ds = document["dataset"]
    out.write("# Canary exposure audit\n\n")
    out.write(f"tool version {document['tool_version']}, ")
    out.write(f"schema version {_fmt(document['schema_version'])}\n\n")

    out.write("## Dataset\n\n")
    out.write(f"- canaries (m): {_fmt(ds['m'])}\n")
    out.write(f"- references (n): {_fmt(ds['n'])}\n")
    out.write(f"- canary replications: {_fmt(ds['replications'])}\n")
    for role in ("canary_loss", "reference_loss"):
        stats = ds[role]
        out.write(
            f"- {role.replace('_', ' ')}: min {_fmt(stats['min'])}, "
            f"max {_fmt(stats['max'])}, mean {_fmt(stats['mean'])}\n"
        )

    out.write("\n## Exposure vs. random guessing\n\n")
    out.write("| statistic | observed | exact baseline | asymptotic baseline "
              "| Monte Carlo baseline (std) |\n")
    out.write("|---|---|---|---|---|\n")
    for row in document["baselines"]:
        name = row["statistic"] if row["q"] is None else f"quantile {_fmt(row['q'])}"
        exact = "-" if row["exact"] is None else _fmt(row["exact"])
        out.write(
            f"| {name} | {_fmt(row['observed'])} | {exact} "
            f"| {_fmt(row['asymptotic'])} "
            f"| {_fmt(row['mc_mean'])} ({_fmt(row['mc_std'])}) |\n"
        )

    out.write("\n## Epsilon lower bounds\n\n")
    out.write("| operating point | source | per-example | point estimate "
              "| confident lower bound | confidence | tpr | fpr |\n")
    out.write("|---|---|---|---|---|---|---|---|\n")
    for row in document["epsilon_bounds"]:
        out.write(
            f"| {row['operating_point']} | {row['source']} "
            f"| {_fmt(row['per_example'])} | {_fmt(row['point_estimate'])} "
            f"| {_fmt(row['confident_lower_bound'])} | {_fmt(row['confidence'])} "
            f"| {_fmt(row['tpr'])} | {_fmt(row['fpr'])} |\n"
        )

    out.write("\n## Warnings\n\n")
    for warning in document["warnings"]:
        out.write(f"- {warning}\n")

    hist = document["histogram"]
    out.write("\n## Exposure histogram\n\n")
    out.write("| bin | count |\n|---|---|\n")
    for i, count in enumerate(hist["counts"]):
        lo, hi = hist["bin_edges"][i], hist["bin_edges"][i + 1]
        out.write(f"| [{_fmt(lo)}, {_fmt(hi)}] | {_fmt(count)} |\n")

    rows = document["exposure"]["per_canary"]
    out.write("\n## Per-canary exposure\n\n")
    out.write("| index | id | loss | rank | exposure | empirical fpr |\n")
    out.write("|---|---|---|---|---|---|\n")
    for row in rows[:max_canary_rows]:
        rec_id = row["id"] if row["id"] is not None else "-"
        out.write(
            f"| {_fmt(row['index'])} | {rec_id} | {_fmt(row['loss'])} "
            f"| {_fmt(row['rank'])} | {_fmt(row['exposure'])} "
            f"| {_fmt(row['empirical_fpr'])} |\n"
        )
    if len(rows) > max_canary_rows:
        out.write("\n(table truncated; the JSON report carries every row)\n")
    return out.getvalue()


def render_csv(document: dict) -> str:
    """Per-canary exposure table as CSV (plot-ready)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        ["index", "id", "loss", "replications", "rank", "exposure", "empirical_fpr"]
    )
    for row in document["exposure"]["per_canary"]:
        writer.writerow(
            [
                row["index"],
                row["id"] if row["id"] is not None else "",
                repr(row["loss"]),
                row["replications"],
                row["rank"],
                repr(row["exposure"]),
                repr(row["empirical_fpr"]),
            ]
        )
    return buf.getvalue()
