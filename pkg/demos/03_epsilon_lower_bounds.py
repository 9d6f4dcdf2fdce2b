"""From exposures to certified epsilon-DP lower bounds.

The loss-threshold membership attack at the median canary loss has
TPR ~ 1/2 and an FPR readable off the median canary's rank, so any
eps-DP guarantee must satisfy eps >= ln(TPR/FPR). Clopper-Pearson
intervals convert the empirical rates into a bound that holds with 95%
confidence; duplicated canaries divide the result by the duplication
count (group privacy).

Run: python demos/03_epsilon_lower_bounds.py
"""

from canaudit import GaussianShiftModel, audit_pipeline, simulate
from canaudit.ingest import AuditDataset, LossRecord


def show(result, title):
    report = result.exposure_report
    print(f"--- {title} ---")
    print(f"  median exposure {report.quantile_exposures[0.5]:+.4f} "
          f"(random-guessing baseline 1.0)")
    for outcome in result.outcomes:
        bound = outcome.bound
        point = (f"{bound.point_estimate:.4f}"
                 if bound.point_estimate != float("inf") else "inf")
        print(f"  [{outcome.operating_point}] tpr {outcome.mi.tpr:.4f} "
              f"fpr {outcome.mi.fpr:.4f}  eps point {point}  "
              f"eps certified >= {bound.confident_lower_bound:.4f} "
              f"@ {bound.confidence:.0%}")
        if outcome.per_example_bound is not None:
            per = outcome.per_example_bound
            print(f"      per-example (replications {per.replications}): "
                  f"eps >= {per.confident_lower_bound:.4f}")
        if outcome.warning:
            print(f"      warning: {outcome.warning}")
    print()


def main():
    # A model that memorized its canaries: canary losses sit 3 sigma low.
    leaky = simulate(GaussianShiftModel(mu=3.0, sigma=1.0, m=10_000, n=10_000, seed=1))
    show(audit_pipeline(leaky, operating_points=("median", 0.001)), "memorizing model")

    # The same audit on a model that learned nothing about its canaries.
    null = simulate(GaussianShiftModel(mu=0.0, sigma=1.0, m=10_000, n=10_000, seed=1))
    show(audit_pipeline(null, operating_points=("median", 0.001)),
         "null model (no memorization)")

    # Duplicated canaries make memorization easier to see, but the
    # certified per-example epsilon divides by the duplication count.
    strong = simulate(GaussianShiftModel(mu=4.0, sigma=1.0, m=1000, n=1000, seed=2))
    duplicated = AuditDataset(
        canaries=tuple(
            LossRecord(role="canary", loss=rec.loss, replications=8)
            for rec in strong.canaries
        ),
        references=strong.references,
    )
    show(audit_pipeline(duplicated), "canaries duplicated 8x in training")


if __name__ == "__main__":
    main()
