"""Ranks, exposures, and what the numbers mean.

A canary's exposure compares its loss against a pool of reference losses:
rank 1 (more probable than every reference) gives the maximum exposure
log2(n); a middling rank gives an exposure near 1.

Run: python demos/01_exposure_basics.py
"""

import numpy as np

from canaudit import exposure_all, exposure_of, rank
from canaudit.ingest import AuditDataset, LossRecord


def main():
    rng = np.random.default_rng(0)

    print("=== single canary against 1024 references ===")
    references = np.sort(rng.normal(size=1024))
    for loss, label in [
        (references[0] - 1.0, "below every reference"),
        (float(np.median(references)), "at the reference median"),
        (references[-1] + 1.0, "above every reference"),
    ]:
        r = rank(loss, references)
        e = exposure_of(loss, references)
        print(f"  loss {label:<24} rank {r:>5}  exposure {e:+.4f} bits")

    print()
    print("=== a small audit dataset ===")
    # Three canaries: one memorized (low loss), two unremarkable.
    canaries = [
        LossRecord(role="canary", loss=-2.7, id="memorized"),
        LossRecord(role="canary", loss=0.1, id="typical-a"),
        LossRecord(role="canary", loss=0.4, id="typical-b"),
    ]
    refs = tuple(LossRecord(role="reference", loss=float(x)) for x in references)
    d = AuditDataset(canaries=tuple(canaries), references=refs)

    report = exposure_all(d)
    for rec, res in zip(d.canaries, report.per_canary):
        print(f"  {rec.id:<10} loss {rec.loss:+.2f}  rank {res.rank:>5}  "
              f"exposure {res.exposure:+.4f}  induced fpr {res.empirical_fpr:.4f}")
    print(f"  mean exposure   {report.mean_exposure:.4f}")
    print(f"  median exposure {report.quantile_exposures[0.5]:.4f}")
    print()
    print("Ties: a canary whose loss equals reference losses is ranked")
    print("pessimistically by default (ties counted as smaller references),")
    print("so reported exposure never overstates memorization:")
    tied_refs = [1.0, 2.0, 2.0, 3.0]
    print(f"  refs {tied_refs}, loss 2.0 -> "
          f"pessimistic {exposure_of(2.0, tied_refs, 'pessimistic'):+.4f}, "
          f"optimistic {exposure_of(2.0, tied_refs, 'optimistic'):+.4f}")


if __name__ == "__main__":
    main()
