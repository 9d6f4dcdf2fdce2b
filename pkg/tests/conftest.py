"""Shared fixtures and independent brute-force oracles.

The oracles here deliberately avoid the library's sorted/binary-search
code paths: ranks and attack counts come from linear scans, binomial
CDFs from exact math.comb summation. Only the final log2 formula is
shared, so counting logic is verified independently.
"""

from __future__ import annotations

import math
from math import comb

import numpy as np

from canaudit import AuditDataset, LossRecord


def make_dataset(canary_losses, reference_losses, replications=1, ids=None):
    canaries = tuple(
        LossRecord(
            role="canary",
            loss=float(loss),
            id=None if ids is None else ids[i],
            replications=replications,
        )
        for i, loss in enumerate(canary_losses)
    )
    references = tuple(
        LossRecord(role="reference", loss=float(loss)) for loss in reference_losses
    )
    return AuditDataset(canaries=canaries, references=references)


def brute_rank(loss, reference_losses, tie_policy):
    if tie_policy == "pessimistic":
        return 1 + sum(1 for r in reference_losses if r <= loss)
    return 1 + sum(1 for r in reference_losses if r < loss)


def brute_exposure(loss, reference_losses, tie_policy):
    n = len(reference_losses)
    r = brute_rank(loss, reference_losses, tie_policy)
    return float(np.log2(n) - np.log2(r))


def brute_roc(d: AuditDataset):
    """All-pairs threshold sweep with linear counting.

    Returns (threshold, canary_hits, reference_hits) tuples in the same
    order the library produces.
    """
    canaries = [rec.loss for rec in d.canaries]
    references = [rec.loss for rec in d.references]
    thresholds = [-math.inf] + sorted(set(canaries + references)) + [math.inf]
    points = []
    for t in thresholds:
        ch = sum(1 for loss in canaries if loss < t)
        rh = sum(1 for loss in references if loss < t)
        points.append((t, ch, rh))
    return points


def binom_cdf(k: int, n: int, p: float) -> float:
    """P[Bin(n, p) <= k] by exact term summation."""
    if p <= 0.0:
        return 1.0
    if p >= 1.0:
        return 1.0 if k >= n else 0.0
    return math.fsum(comb(n, i) * p**i * (1.0 - p) ** (n - i) for i in range(k + 1))


def grid_clopper_pearson(k: int, n: int, alpha: float, side: str, step: float = 1e-6):
    """Clopper-Pearson bound located on a uniform p-grid.

    Scans the grid for the boundary point of the (monotone) defining
    predicate; binary search over grid indices returns exactly the point
    a linear scan would.
    """
    last = int(round(1.0 / step))
    if side == "lower":
        if k == 0:
            return 0.0
        lo, hi = 0, last  # predicate P[Bin >= k] >= alpha: false at 0, true at 1
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if 1.0 - binom_cdf(k - 1, n, mid * step) >= alpha:
                hi = mid
            else:
                lo = mid
        return hi * step
    if k == n:
        return 1.0
    lo, hi = 0, last  # predicate P[Bin <= k] >= alpha: true at 0, false at 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if binom_cdf(k, n, mid * step) >= alpha:
            lo = mid
        else:
            hi = mid
    return lo * step


def random_instance(rng: np.random.Generator, max_size: int = 50, tie_prob: float = 0.5):
    """A random small dataset, with ties likely (losses from a coarse grid)."""
    m = int(rng.integers(1, max_size + 1))
    n = int(rng.integers(1, max_size + 1))
    if rng.random() < tie_prob:
        canaries = rng.integers(-5, 6, size=m) / 2.0
        references = rng.integers(-5, 6, size=n) / 2.0
    else:
        canaries = rng.normal(size=m)
        references = rng.normal(size=n)
    return make_dataset(canaries, references)
