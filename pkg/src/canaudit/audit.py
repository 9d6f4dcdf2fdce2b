"""Epsilon lower bounds from attack results and exposure statistics.

Any eps-DP training procedure caps every membership inference attack at
TPR/FPR <= exp(eps), so an observed operating point certifies

    eps >= ln(TPR / FPR).

With the threshold placed at the median canary loss, TPR is 1/2 and FPR
relates to the median canary's exposure, giving the equivalent form

    eps >= ln(2) * (median exposure - 1).

Empirical rates carry sampling error, so point estimates are paired with
confidence-corrected bounds: one-sided Clopper-Pearson intervals on TPR
(lower) and FPR (upper), the error budget split evenly between the two
sides by a union bound. All canary and reference losses are assumed
independent; this is a heuristic, and every report says so.

Canaries duplicated k times in training leak through group privacy; the
certified per-example epsilon divides the raw bound by k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.special import betaincinv

from .attack import MIResult, median_threshold, threshold_attack, tpr_at_fpr
from .baseline import LN2, baseline_quantile_exposure
from .exposure import ExposureReport, exposure_all
from .ingest import AuditDataset

INDEPENDENCE_NOTICE = (
    "canary and reference losses are assumed independent (heuristic); "
    "dependence-aware corrections are out of scope"
)


@dataclass(frozen=True)
class EpsilonBound:
    """A certified epsilon lower bound with every input recorded.

    ``point_estimate`` is the raw ln(TPR/FPR) (or its exposure-based
    equivalent); it may be negative or infinite and is reported unfloored
    for diagnostics. ``confident_lower_bound`` is the Clopper-Pearson
    corrected value, floored at zero, and is finite even when the point
    estimate is infinite because the FPR upper bound is always positive.
    """

    point_estimate: float
    confident_lower_bound: float
    confidence: float
    alpha_split: tuple[float, float]
    tpr_lower: float
    fpr_upper: float
    source: str
    replications: int
    per_example: bool


@dataclass(frozen=True)
class AuditOutcome:
    """One operating point's attack result, bounds, and baseline."""

    operating_point: str
    mi: MIResult
    bound: EpsilonBound
    per_example_bound: EpsilonBound | None
    baseline: dict
    warning: str | None


@dataclass(frozen=True)
class AuditResult:
    """Everything audit_pipeline computed for one dataset."""

    exposure_report: ExposureReport
    outcomes: tuple[AuditOutcome, ...]
    confidence: float
    tie_policy: str

    def bounds(self) -> list[EpsilonBound]:
        out = []
        for outcome in self.outcomes:
            out.append(outcome.bound)
            if outcome.per_example_bound is not None:
                out.append(outcome.per_example_bound)
        return out


def epsilon_point(tpr: float, fpr: float) -> float:
    """Raw epsilon point estimate ln(tpr/fpr).

    Returns +inf when fpr = 0 with tpr > 0 (the sample cannot bound the
    ratio), -inf when tpr = 0 with fpr > 0, and 0 when both rates are
    zero. Negative values are reported as-is.
    """
    if not 0.0 <= tpr <= 1.0:
        raise ValueError(f"tpr must be in [0, 1], got {tpr}")
    if not 0.0 <= fpr <= 1.0:
        raise ValueError(f"fpr must be in [0, 1], got {fpr}")
    if fpr == 0.0:
        return math.inf if tpr > 0.0 else 0.0
    if tpr == 0.0:
        return -math.inf
    return math.log(tpr / fpr)


def epsilon_from_median_exposure(exposure_median: float) -> float:
    """Epsilon lower bound implied by the median canary's exposure.

    ln(2) * (exposure - 1): a median exposure of 1 (the random-guessing
    baseline) maps to zero certified leakage.
    """
    if not math.isfinite(exposure_median):
        raise ValueError(f"exposure_median must be finite, got {exposure_median!r}")
    return LN2 * (exposure_median - 1.0)


def clopper_pearson(k: int, trials: int, alpha: float, side: str) -> float:
    """One-sided exact binomial confidence bound on a proportion.

    ``side="lower"`` returns inf{p : P[Bin(trials, p) >= k] >= alpha}
    (0 when k = 0); ``side="upper"`` returns
    sup{p : P[Bin(trials, p) <= k] >= alpha} (1 when k = trials). Both are
    quantiles of the regularized incomplete beta function.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if not 0 <= k <= trials:
        raise ValueError(f"k must be in [0, trials], got k={k}, trials={trials}")
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must be in (0, 1), got {alpha}")
    if side == "lower":
        if k == 0:
            return 0.0
        return float(betaincinv(k, trials - k + 1, alpha))
    if side == "upper":
        if k == trials:
            return 1.0
        return float(betaincinv(k + 1, trials - k, 1.0 - alpha))
    raise ValueError(f"side must be 'lower' or 'upper', got {side!r}")


def _confident_interval(mi: MIResult, confidence: float) -> tuple[float, float, float]:
    """(tpr_lower, fpr_upper, floored confident bound) for one attack result."""
    if not 0.0 < confidence < 1.0:
        raise ValueError(f"confidence must be in (0, 1), got {confidence}")
    alpha = 1.0 - confidence
    tpr_lower = clopper_pearson(mi.canary_hits, mi.m, alpha / 2.0, "lower")
    fpr_upper = clopper_pearson(mi.reference_hits, mi.n, alpha / 2.0, "upper")
    # fpr_upper > 0 whenever alpha < 1, so the corrected bound is finite.
    if tpr_lower == 0.0:
        corrected = 0.0
    else:
        corrected = max(0.0, math.log(tpr_lower / fpr_upper))
    return tpr_lower, fpr_upper, corrected


def epsilon_confident(d: AuditDataset, mi: MIResult, confidence: float) -> EpsilonBound:
    """Confidence-corrected epsilon bound for one attack operating point.

    Splits the error budget 1 - confidence evenly between a lower
    Clopper-Pearson bound on TPR and an upper one on FPR; the certified
    bound is max(0, ln(tpr_lower / fpr_upper)).
    """
    tpr_lower, fpr_upper, corrected = _confident_interval(mi, confidence)
    alpha = 1.0 - confidence
    return EpsilonBound(
        point_estimate=epsilon_point(mi.tpr, mi.fpr),
        confident_lower_bound=corrected,
        confidence=confidence,
        alpha_split=(alpha / 2.0, alpha / 2.0),
        tpr_lower=tpr_lower,
        fpr_upper=fpr_upper,
        source="threshold",
        replications=d.replications,
        per_example=False,
    )


def group_privacy_adjust(epsilon: float, replications: int) -> float:
    """Per-example epsilon when a canary was duplicated ``replications`` times."""
    if isinstance(replications, bool) or not isinstance(replications, int) \
            or replications < 1:
        raise ValueError(f"replications must be a positive integer, got {replications!r}")
    if epsilon < 0.0:
        raise ValueError(f"epsilon must be >= 0, got {epsilon}")
    return epsilon / replications


def _per_example(bound: EpsilonBound) -> EpsilonBound:
    k = bound.replications
    point = bound.point_estimate / k  # signed diagnostics divide too
    return EpsilonBound(
        point_estimate=point,
        confident_lower_bound=group_privacy_adjust(bound.confident_lower_bound, k),
        confidence=bound.confidence,
        alpha_split=bound.alpha_split,
        tpr_lower=bound.tpr_lower,
        fpr_upper=bound.fpr_upper,
        source=bound.source,
        replications=k,
        per_example=True,
    )


def audit_pipeline(
    d: AuditDataset,
    operating_points=("median",),
    confidence: float = 0.95,
    tie_policy: str = "pessimistic",
) -> AuditResult:
    """Exposure report plus epsilon bounds at each requested operating point.

    Operating points are ``"median"`` (threshold at the median canary
    loss; the point estimate converts the report's median exposure) or a
    float FPR target in [0, 1] (best attack with at most that false
    positive rate). Each outcome carries the matching random-guessing
    baseline; when canaries were replicated, a per-example bound divided
    by the replication count accompanies the raw one. Outcomes appear in
    request order.
    """
    if not 0.0 < confidence < 1.0:
        raise ValueError(f"confidence must be in (0, 1), got {confidence}")
    report = exposure_all(d, tie_policy)
    alpha = 1.0 - confidence
    outcomes = []
    for op in operating_points:
        warning = None
        if op == "median":
            mi = threshold_attack(d, median_threshold(d))
            source = "median_exposure"
            point = epsilon_from_median_exposure(report.quantile_exposures[0.5])
            label = "median"
            baseline = {
                "statistic": "median_exposure",
                "baseline_value": baseline_quantile_exposure(0.5),
                "baseline_epsilon": 0.0,
            }
        elif isinstance(op, (int, float)) and not isinstance(op, bool):
            target = float(op)
            mi = tpr_at_fpr(d, target)
            source = "tpr_at_fpr"
            point = epsilon_point(mi.tpr, mi.fpr)
            label = f"fpr_target={target:g}"
            if 0.0 < target < 1.0 / d.n:
                warning = (
                    f"fpr target {target:g} is below the achievable resolution "
                    f"1/n = {1.0 / d.n:g}; bound computed at achieved fpr {mi.fpr:g}"
                )
            baseline = {
                "statistic": "tpr_at_fpr",
                "baseline_value": mi.fpr,  # random guessing has tpr = fpr
                "baseline_epsilon": 0.0,
            }
        else:
            raise ValueError(
                f"operating point must be 'median' or an fpr target in [0, 1], got {op!r}"
            )

        tpr_lower, fpr_upper, corrected = _confident_interval(mi, confidence)
        bound = EpsilonBound(
            point_estimate=point,
            confident_lower_bound=corrected,
            confidence=confidence,
            alpha_split=(alpha / 2.0, alpha / 2.0),
            tpr_lower=tpr_lower,
            fpr_upper=fpr_upper,
            source=source,
            replications=d.replications,
            per_example=False,
        )
        per_example_bound = _per_example(bound) if d.replications > 1 else None
        outcomes.append(
            AuditOutcome(
                operating_point=label,
                mi=mi,
                bound=bound,
                per_example_bound=per_example_bound,
                baseline=baseline,
                warning=warning,
            )
        )
    return AuditResult(
        exposure_report=report,
        outcomes=tuple(outcomes),
        confidence=confidence,
        tie_policy=tie_policy,
    )
