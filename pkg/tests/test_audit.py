import math

import numpy as np
import pytest

from canaudit import (
    GaussianShiftModel,
    audit_pipeline,
    clopper_pearson,
    epsilon_confident,
    epsilon_from_median_exposure,
    epsilon_point,
    group_privacy_adjust,
    median_threshold,
    simulate,
    threshold_attack,
)

from conftest import grid_clopper_pearson, make_dataset


def test_epsilon_point_values():
    assert epsilon_point(0.5, 0.25) == pytest.approx(math.log(2.0), abs=1e-15)
    assert epsilon_point(0.3, 0.3) == 0.0
    assert epsilon_point(0.5, 0.05) == pytest.approx(math.log(10.0), abs=1e-12)


def test_epsilon_point_edge_cases():
    assert epsilon_point(0.4, 0.0) == math.inf
    assert epsilon_point(0.0, 0.0) == 0.0
    assert epsilon_point(0.0, 0.4) == -math.inf
    assert epsilon_point(0.2, 0.4) < 0.0


def test_epsilon_point_validation():
    with pytest.raises(ValueError):
        epsilon_point(1.5, 0.5)
    with pytest.raises(ValueError):
        epsilon_point(0.5, -0.1)


def test_epsilon_from_median_exposure_values():
    assert epsilon_from_median_exposure(1.0) == 0.0
    assert epsilon_from_median_exposure(3.0) == pytest.approx(2 * math.log(2.0), abs=1e-15)
    with pytest.raises(ValueError):
        epsilon_from_median_exposure(math.inf)


def test_median_exposure_identity_with_point_estimate():
    # epsilon_point(0.5, p_r) == epsilon_from_median_exposure(log2(1/p_r))
    for k in range(1, 21):
        p_r = 2.0**-k
        lhs = epsilon_point(0.5, p_r)
        rhs = epsilon_from_median_exposure(math.log2(1.0 / p_r))
        assert lhs == pytest.approx(rhs, abs=1e-12)


def test_clopper_pearson_degenerate_counts():
    assert clopper_pearson(0, 17, 0.05, "lower") == 0.0
    assert clopper_pearson(17, 17, 0.05, "upper") == 1.0


def test_clopper_pearson_all_successes_closed_form():
    assert clopper_pearson(20, 20, 0.05, "lower") == pytest.approx(
        0.05 ** (1 / 20), abs=1e-12
    )


def test_clopper_pearson_matches_grid_oracle():
    rng = np.random.default_rng(47)
    for _ in range(25):
        trials = int(rng.integers(1, 120))
        k = int(rng.integers(0, trials + 1))
        alpha = float(rng.uniform(0.01, 0.4))
        for side in ("lower", "upper"):
            got = clopper_pearson(k, trials, alpha, side)
            want = grid_clopper_pearson(k, trials, alpha, side)
            assert got == pytest.approx(want, abs=2e-6)


def test_clopper_pearson_brackets_empirical_rate():
    rng = np.random.default_rng(53)
    for _ in range(50):
        trials = int(rng.integers(1, 200))
        k = int(rng.integers(0, trials + 1))
        alpha = float(rng.uniform(0.001, 0.49))
        lower = clopper_pearson(k, trials, alpha, "lower")
        upper = clopper_pearson(k, trials, alpha, "upper")
        assert lower <= k / trials <= upper


def test_clopper_pearson_validation():
    with pytest.raises(ValueError):
        clopper_pearson(-1, 10, 0.05, "lower")
    with pytest.raises(ValueError):
        clopper_pearson(11, 10, 0.05, "lower")
    with pytest.raises(ValueError):
        clopper_pearson(5, 10, 0.0, "lower")
    with pytest.raises(ValueError):
        clopper_pearson(5, 10, 1.0, "upper")
    with pytest.raises(ValueError):
        clopper_pearson(5, 10, 0.05, "middle")
    with pytest.raises(ValueError):
        clopper_pearson(5, 0, 0.05, "lower")


def test_confident_bound_positive_when_separated():
    d = simulate(GaussianShiftModel(mu=8.0, sigma=1.0, m=1000, n=1000, seed=1))
    mi = threshold_attack(d, median_threshold(d))
    bound = epsilon_confident(d, mi, 0.95)
    assert bound.confident_lower_bound > 0.0
    assert bound.point_estimate == math.inf  # fully separated: fpr = 0
    assert bound.fpr_upper > 0.0  # corrected bound stays finite
    assert math.isfinite(bound.confident_lower_bound)


def test_confident_bound_zero_on_tiny_samples():
    # tpr 0.5, fpr 0.3 with m = n = 10: intervals too wide to certify leakage
    d = make_dataset(
        [0.0] * 5 + [2.0] * 5,
        [0.0] * 3 + [2.0] * 7,
    )
    mi = threshold_attack(d, 1.0)
    assert mi.tpr == 0.5 and mi.fpr == pytest.approx(0.3)
    bound = epsilon_confident(d, mi, 0.95)
    assert bound.confident_lower_bound == 0.0


def test_confident_bound_records_inputs():
    d = make_dataset([0.0, 1.0, 4.0], [2.0, 3.0, 5.0])
    mi = threshold_attack(d, median_threshold(d))
    bound = epsilon_confident(d, mi, 0.9)
    assert bound.confidence == 0.9
    assert bound.alpha_split == ((1 - 0.9) / 2, (1 - 0.9) / 2)
    assert bound.source == "threshold"
    assert bound.replications == 1
    assert not bound.per_example
    assert bound.tpr_lower <= mi.tpr
    assert bound.fpr_upper >= mi.fpr
    assert bound.confident_lower_bound >= 0.0


def test_confident_bound_non_increasing_in_confidence():
    d = simulate(GaussianShiftModel(mu=2.0, sigma=1.0, m=400, n=400, seed=5))
    mi = threshold_attack(d, median_threshold(d))
    bounds = [
        epsilon_confident(d, mi, c).confident_lower_bound
        for c in (0.5, 0.8, 0.9, 0.95, 0.99, 0.999)
    ]
    assert all(a >= b for a, b in zip(bounds, bounds[1:]))


def test_confident_validation():
    d = make_dataset([1.0], [2.0])
    mi = threshold_attack(d, 1.5)
    for confidence in (0.0, 1.0, -1.0, 2.0):
        with pytest.raises(ValueError):
            epsilon_confident(d, mi, confidence)


def test_group_privacy_adjust():
    assert group_privacy_adjust(2.0, 4) == 0.5
    assert group_privacy_adjust(1.0, 1) == 1.0
    assert group_privacy_adjust(0.0, 7) == 0.0
    with pytest.raises(ValueError):
        group_privacy_adjust(1.0, 0)
    with pytest.raises(ValueError):
        group_privacy_adjust(-1.0, 2)


def test_pipeline_null_data_certifies_nothing():
    d = simulate(GaussianShiftModel(mu=0.0, sigma=1.0, m=2001, n=2000, seed=2))
    result = audit_pipeline(d, operating_points=("median",), confidence=0.95)
    assert result.exposure_report.quantile_exposures[0.5] == pytest.approx(1.0, abs=0.2)
    assert result.outcomes[0].bound.confident_lower_bound == 0.0


def test_pipeline_point_estimate_is_internally_consistent():
    d = simulate(GaussianShiftModel(mu=3.0, sigma=1.0, m=10_000, n=10_000, seed=3))
    result = audit_pipeline(d, operating_points=("median",))
    outcome = result.outcomes[0]
    by_hand = math.log(2.0) * (result.exposure_report.quantile_exposures[0.5] - 1.0)
    assert outcome.bound.point_estimate == pytest.approx(by_hand, rel=1e-12)
    assert outcome.bound.point_estimate == pytest.approx(
        epsilon_from_median_exposure(result.exposure_report.quantile_exposures[0.5]),
        abs=0.0,
    )
    assert outcome.bound.point_estimate > 1.0
    assert outcome.bound.confident_lower_bound > 0.5


def test_pipeline_unachievable_fpr_target_warns():
    d = simulate(GaussianShiftModel(mu=1.0, sigma=1.0, m=100, n=100, seed=4))
    result = audit_pipeline(d, operating_points=("median", 0.001))
    low_fpr = result.outcomes[1]
    assert low_fpr.warning is not None and "resolution" in low_fpr.warning
    assert low_fpr.mi.fpr == 0.0
    median = result.outcomes[0]
    assert median.warning is None


def test_pipeline_replications_emit_per_example_bounds():
    rng = np.random.default_rng(59)
    d = make_dataset(rng.normal(-3.0, 1.0, size=200), rng.normal(size=200),
                     replications=4)
    result = audit_pipeline(d, operating_points=("median", 0.05))
    for outcome in result.outcomes:
        raw = outcome.bound
        per = outcome.per_example_bound
        assert per is not None and per.per_example
        assert per.confident_lower_bound == raw.confident_lower_bound / 4
        assert per.point_estimate == raw.point_estimate / 4
        assert per.replications == raw.replications == 4
    assert len(result.bounds()) == 4


def test_pipeline_bound_invariants_across_seeds():
    for seed in range(8):
        mu = 0.5 * seed
        d = simulate(GaussianShiftModel(mu=mu, sigma=1.0, m=300, n=300, seed=seed))
        result = audit_pipeline(d, operating_points=("median", 0.1, 0.01))
        for outcome in result.outcomes:
            bound = outcome.bound
            assert bound.confident_lower_bound >= 0.0
            assert bound.tpr_lower <= outcome.mi.tpr
            assert bound.fpr_upper >= outcome.mi.fpr
            if math.isfinite(bound.point_estimate) and bound.point_estimate >= 0.0:
                assert bound.confident_lower_bound <= bound.point_estimate + 1e-12


def test_pipeline_respects_request_order_and_baselines():
    d = make_dataset([1.0, 2.0, 3.0], [0.5, 1.5, 2.5, 3.5])
    result = audit_pipeline(d, operating_points=(0.5, "median"))
    assert result.outcomes[0].operating_point == "fpr_target=0.5"
    assert result.outcomes[1].operating_point == "median"
    assert result.outcomes[0].baseline["baseline_epsilon"] == 0.0
    assert result.outcomes[1].baseline["statistic"] == "median_exposure"
    assert result.outcomes[1].baseline["baseline_value"] == 1.0


def test_pipeline_rejects_bad_operating_point():
    d = make_dataset([1.0], [2.0])
    with pytest.raises(ValueError):
        audit_pipeline(d, operating_points=("mean",))
    with pytest.raises(ValueError):
        audit_pipeline(d, operating_points=(True,))
    with pytest.raises(ValueError):
        audit_pipeline(d, confidence=1.5)
