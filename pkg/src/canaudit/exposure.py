"""Rank and exposure of canaries against a reference loss set.

A canary's rank is 1 plus the number of references with smaller loss, so
it runs from 1 (below every reference) to n+1 (above every reference).
Exposure rescales rank to bits:

    exposure = log2(n) - log2(rank)

which is maximal, log2(n), at rank 1 and slightly negative,
log2(n) - log2(n+1), at rank n+1.

Ties between a canary loss and reference losses are resolved by policy:
``pessimistic`` counts tied references as smaller (inflating rank and
deflating exposure, so leakage is never over-claimed), ``optimistic``
counts them as larger. Pessimistic is the default everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil

import numpy as np

from .ingest import AuditDataset

TIE_POLICIES = ("pessimistic", "optimistic")


def _searchsorted_side(tie_policy: str) -> str:
    if tie_policy not in TIE_POLICIES:
        raise ValueError(f"tie_policy must be one of {TIE_POLICIES}, got {tie_policy!r}")
    # 'right' counts references <= loss, 'left' counts references < loss.
    return "right" if tie_policy == "pessimistic" else "left"


@dataclass(frozen=True)
class ExposureResult:
    """Rank, exposure (bits), and induced false-positive rate of one canary.

    ``empirical_fpr`` is (rank - 1)/n: the fraction of references that a
    loss-threshold membership test at this canary's loss would classify
    as training members.
    """

    canary_index: int
    rank: int
    exposure: float
    empirical_fpr: float


@dataclass(frozen=True)
class ExposureReport:
    """Per-canary exposures plus aggregate statistics for one dataset."""

    per_canary: tuple[ExposureResult, ...]
    mean_exposure: float
    quantile_exposures: dict[float, float]
    n: int
    m: int

    def exposures(self) -> np.ndarray:
        return np.array([r.exposure for r in self.per_canary], dtype=np.float64)


def rank(loss: float, reference_losses, tie_policy: str = "pessimistic") -> int:
    """Rank of a loss among sorted reference losses, in [1, n+1].

    ``reference_losses`` must be sorted ascending. Pessimistic ranking
    counts references with loss <= the canary's; optimistic counts only
    strictly smaller references.
    """
    side = _searchsorted_side(tie_policy)
    refs = np.asarray(reference_losses, dtype=np.float64)
    if refs.size == 0:
        raise ValueError("reference_losses must be non-empty")
    return int(np.searchsorted(refs, loss, side=side)) + 1


def exposure_of(loss: float, reference_losses, tie_policy: str = "pessimistic") -> float:
    """Exposure in bits of a loss against sorted reference losses."""
    refs = np.asarray(reference_losses, dtype=np.float64)
    r = rank(loss, refs, tie_policy)
    return float(np.log2(refs.size) - np.log2(r))


def exposure_quantile(exposures, q: float) -> float:
    """Nearest-rank lower quantile: the ceil(q*m)-th smallest element.

    Always returns an actual element of ``exposures``; q = 0.5 gives the
    lower median.
    """
    if not 0.0 < q < 1.0:
        raise ValueError(f"q must be in (0, 1), got {q}")
    values = np.sort(np.asarray(exposures, dtype=np.float64))
    if values.size == 0:
        raise ValueError("exposures must be non-empty")
    return float(values[ceil(q * values.size) - 1])


def exposure_all(d: AuditDataset, tie_policy: str = "pessimistic") -> ExposureReport:
    """Rank and exposure of every canary in a dataset, with aggregates.

    References are sorted once and each canary is ranked by binary
    search, so the whole report costs O((m+n) log n). Results are
    deterministic and independent of any internal parallelism.
    """
    side = _searchsorted_side(tie_policy)
    refs = np.sort(d.reference_losses())
    losses = d.canary_losses()
    ranks = np.searchsorted(refs, losses, side=side) + 1
    exposures = np.log2(refs.size) - np.log2(ranks)
    fprs = (ranks - 1) / refs.size
    per_canary = tuple(
        ExposureResult(
            canary_index=i,
            rank=int(ranks[i]),
            exposure=float(exposures[i]),
            empirical_fpr=float(fprs[i]),
        )
        for i in range(losses.size)
    )
    quantiles = {q: exposure_quantile(exposures, q) for q in (0.5, 0.75)}
    return ExposureReport(
        per_canary=per_canary,
        mean_exposure=float(exposures.mean()),
        quantile_exposures=quantiles,
        n=d.n,
        m=d.m,
    )
