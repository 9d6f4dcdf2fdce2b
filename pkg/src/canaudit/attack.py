"""Loss-threshold membership inference against an audit dataset.

The attack classifies an example as a training member when its loss is
strictly below a threshold. Its true positive rate is the fraction of
canaries so classified; its false positive rate is the fraction of
references. Sweeping the threshold over every distinct loss traces the
attack's full ROC curve.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass

import numpy as np

from .exposure import exposure_quantile
from .ingest import AuditDataset


@dataclass(frozen=True)
class MIResult:
    """Operating point of the threshold attack: counts and rates."""

    threshold: float
    tpr: float
    fpr: float
    canary_hits: int
    reference_hits: int
    m: int
    n: int


def _operating_point(
    threshold: float, canary_hits: int, reference_hits: int, m: int, n: int
) -> MIResult:
    canary_hits = int(canary_hits)
    reference_hits = int(reference_hits)
    return MIResult(
        threshold=float(threshold),
        tpr=canary_hits / m,
        fpr=reference_hits / n,
        canary_hits=canary_hits,
        reference_hits=reference_hits,
        m=m,
        n=n,
    )


def threshold_attack(d: AuditDataset, threshold: float) -> MIResult:
    """Classify every record with loss < threshold as a member.

    A canary with replications k still contributes a single sample to the
    TPR; duplication enters only through the group-privacy adjustment of
    the final epsilon bound.
    """
    if not math.isfinite(threshold):
        raise ValueError(f"threshold must be finite, got {threshold!r}")
    canary_hits = int(np.count_nonzero(d.canary_losses() < threshold))
    reference_hits = int(np.count_nonzero(d.reference_losses() < threshold))
    return _operating_point(threshold, canary_hits, reference_hits, d.m, d.n)


def median_threshold(d: AuditDataset) -> float:
    """The nearest-rank lower median of the canary losses.

    Always an actual canary's loss, so thresholding at it realizes the
    canonical median-canary attack.
    """
    return exposure_quantile(d.canary_losses(), 0.5)


def roc(d: AuditDataset) -> list[MIResult]:
    """Full threshold sweep: one operating point per distinct loss.

    Thresholds ascend over every distinct loss in the pooled dataset,
    bracketed by the two degenerate endpoints (classify nothing / classify
    everything), so tpr and fpr are non-decreasing along the list.
    """
    canaries = np.sort(d.canary_losses())
    references = np.sort(d.reference_losses())
    distinct = np.unique(np.concatenate([canaries, references]))
    thresholds = np.concatenate([[-np.inf], distinct, [np.inf]])
    canary_hits = np.searchsorted(canaries, thresholds, side="left")
    reference_hits = np.searchsorted(references, thresholds, side="left")
    return [
        _operating_point(thresholds[i], canary_hits[i], reference_hits[i], d.m, d.n)
        for i in range(thresholds.size)
    ]


def tpr_at_fpr(d: AuditDataset, target_fpr: float) -> MIResult:
    """Best operating point with false positive rate at most ``target_fpr``.

    Maximizes tpr subject to fpr <= target_fpr, breaking ties toward the
    smaller fpr; the returned point carries the achieved (not the target)
    fpr. The classify-nothing endpoint always qualifies, so the result is
    defined even at target_fpr = 0.
    """
    if not 0.0 <= target_fpr <= 1.0:
        raise ValueError(f"target_fpr must be in [0, 1], got {target_fpr}")
    best = None
    for point in roc(d):
        if point.fpr <= target_fpr and (best is None or point.tpr > best.tpr):
            best = point
    return best


def roc_to_csv(points: list[MIResult]) -> str:
    """Serialize a threshold sweep as ``threshold,fpr,tpr`` rows."""
    buf = io.StringIO()
    buf.write("threshold,fpr,tpr\n")
    for point in points:
        buf.write(f"{point.threshold!r},{point.fpr!r},{point.tpr!r}\n")
    return buf.getvalue()
