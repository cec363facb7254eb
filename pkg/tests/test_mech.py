"""Seeded sampling, the experiments, and the Monte-Carlo privacy-loss oracle."""

import math

import numpy as np
import pytest

from gaussdp.calib import (
    Mechanism,
    NoiseScale,
    PrivacyBudget,
    Sensitivity,
    calibrate,
    solve_dp_opt,
    solve_pdp_opt,
)
from gaussdp.mech import (
    QueryAnswer,
    histogram_counts,
    histogram_experiment,
    mean_experiment,
    privacy_loss_sample,
    privacy_loss_tails,
    randomize,
    read_categorical_csv,
    sample_noise,
    synthetic_census_rows,
    write_categorical_csv,
)

UNIT = Sensitivity(1.0)

DP_CHAIN = (
    Mechanism.DP_OPT,
    Mechanism.MECH1,
    Mechanism.MECH2,
    Mechanism.DWORK2014,
    Mechanism.DWORK2006,
)


def test_sample_noise_zero_sigma():
    sample = sample_noise(3, 0.0, seed=42)
    assert np.array_equal(sample.values, np.zeros(3))


def test_sample_noise_deterministic():
    a = sample_noise(1000, 1.3, seed=99)
    b = sample_noise(1000, 1.3, seed=99)
    assert np.array_equal(a.values, b.values)
    c = sample_noise(1000, 1.3, seed=100)
    assert not np.array_equal(a.values, c.values)


def test_sample_noise_moments():
    sample = sample_noise(100_000, 1.0, seed=7)
    assert -0.02 <= sample.values.mean() <= 0.02
    assert 0.98 <= sample.values.var() <= 1.02


def test_sample_noise_validation():
    with pytest.raises(ValueError):
        sample_noise(0, 1.0, seed=1)
    with pytest.raises(ValueError):
        sample_noise(3, -1.0, seed=1)


def test_randomize_zero_sigma_is_identity():
    answer = QueryAnswer(np.array([1.0, -2.0, 3.5]))
    noisy = randomize(answer, NoiseScale(0.0, Mechanism.DP_OPT), seed=5)
    assert np.array_equal(noisy.values, answer.values)


def test_randomize_additivity_exact():
    answer = QueryAnswer(np.linspace(-1.0, 1.0, 16))
    noise = NoiseScale(0.7, Mechanism.MECH2)
    noisy = randomize(answer, noise, seed=11)
    reference = answer.values + sample_noise(answer.dim, 0.7, seed=11).values
    assert np.array_equal(noisy.values, reference)


def test_randomize_chi_square_expectation():
    # E ||Qtilde - Q||^2 = d sigma^2; 1000 trials at d = 10, sigma = 0.35
    d, sigma, trials = 10, 0.35, 1000
    answer = QueryAnswer(np.arange(1.0, d + 1.0))
    noise = NoiseScale(sigma, Mechanism.DP_OPT)
    total = 0.0
    for t in range(trials):
        noisy = randomize(answer, noise, seed=t)
        total += float(np.sum((noisy.values - answer.values) ** 2))
    mean_sq = total / trials
    assert abs(mean_sq - d * sigma * sigma) <= 0.05 * d * sigma * sigma


# --- privacy-loss sampler ---------------------------------------------------


def test_loss_zero_distance():
    assert privacy_loss_sample(0.0, 1.0, 1.0, 100, seed=1) == 0.0


def test_loss_at_pdp_boundary():
    eps, delta, n = 1.0, 0.01, 1_000_000
    sigma = solve_pdp_opt(PrivacyBudget(eps, delta), UNIT).noise.sigma
    got = privacy_loss_sample(1.0, sigma, eps, n, seed=314)
    assert abs(got - delta) <= 3.0 * math.sqrt(delta * (1 - delta) / n)


def test_loss_monotone_in_sigma():
    a = privacy_loss_sample(1.0, 1.0, 1.0, 1_000_000, seed=8)
    b = privacy_loss_sample(1.0, 2.0, 1.0, 1_000_000, seed=8)
    assert b < a


def test_loss_worst_case_at_full_distance():
    # the violation frequency decreases with the output distance S
    at_half = privacy_loss_sample(0.5, 2.0, 1.0, 1_000_000, seed=9)
    at_full = privacy_loss_sample(1.0, 2.0, 1.0, 1_000_000, seed=9)
    assert at_half < at_full


@pytest.mark.parametrize("kind", [Mechanism.PDP_OPT, Mechanism.MECH3, Mechanism.MECH4])
@pytest.mark.parametrize("eps", [0.5, 1.0, 5.0])
@pytest.mark.parametrize("delta", [1e-3, 1e-2])
def test_pdp_empirical_soundness(kind, eps, delta):
    n = 1_000_000
    budget = PrivacyBudget(eps, delta)
    sigma = calibrate(kind, budget, UNIT).sigma
    got = privacy_loss_sample(1.0, sigma, eps, n, seed=1234)
    stderr = math.sqrt(delta * (1 - delta) / n)
    assert got <= delta + 3.0 * stderr


def test_dp_empirical_soundness():
    eps, delta, n = 1.0, 1e-2, 1_000_000
    sigma = solve_dp_opt(PrivacyBudget(eps, delta), UNIT).noise.sigma
    above, below = privacy_loss_tails(1.0, sigma, eps, n, seed=4321)
    got = above - math.exp(eps) * below
    stderr = (
        math.sqrt(
            above * (1 - above)
            + math.exp(2 * eps) * below * (1 - below)
            + 2.0 * math.exp(eps) * above * below
        )
        / math.sqrt(n)
    )
    assert abs(got - delta) <= 3.0 * stderr


# --- mean experiment --------------------------------------------------------


def test_mean_experiment_dp_chain_ordering():
    budget = PrivacyBudget(0.1, 1e-4)
    reports = {
        kind: mean_experiment(1000, 10, budget, kind, trials=200, seed=6)
        for kind in DP_CHAIN
    }
    metrics = [reports[k].metric for k in DP_CHAIN]
    assert all(a < b for a, b in zip(metrics, metrics[1:]))
    for first, second in zip(DP_CHAIN, DP_CHAIN[1:]):
        gap = reports[second].metric - reports[first].metric
        combined = math.hypot(
            reports[first].metric_stderr, reports[second].metric_stderr
        )
        assert gap > combined, (first, second)


def test_mean_experiment_chi_square_magnitude():
    budget = PrivacyBudget(0.5, 1e-4)
    report = mean_experiment(1000, 10, budget, Mechanism.DP_OPT, trials=1000, seed=3)
    sigma = calibrate(
        Mechanism.DP_OPT, budget, Sensitivity(math.sqrt(10) / 1000)
    ).sigma
    # reconstruct the empirical mean of squared errors from (mean, stderr)
    mean_sq = report.metric**2 + report.metric_stderr**2 * (report.trials - 1)
    expected = 10 * sigma * sigma
    assert abs(mean_sq - expected) <= 0.10 * expected


def test_sensitivity_halves_exactly_with_doubled_n():
    # Delta = sqrt(d)/n, so doubling n halves Delta and therefore sigma,
    # exactly (all the scalings are by powers of two)
    d, n = 10, 1000
    budget = PrivacyBudget(0.1, 1e-4)
    small = Sensitivity(math.sqrt(d) / (2 * n))
    large = Sensitivity(math.sqrt(d) / n)
    assert small.l2 == large.l2 / 2.0
    for kind in Mechanism:
        assert (
            calibrate(kind, budget, small).sigma
            == calibrate(kind, budget, large).sigma / 2.0
        ), kind


def test_mean_experiment_reproducible():
    budget = PrivacyBudget(0.1, 1e-4)
    a = mean_experiment(200, 5, budget, Mechanism.MECH1, trials=20, seed=17)
    b = mean_experiment(200, 5, budget, Mechanism.MECH1, trials=20, seed=17)
    assert a == b


def test_mean_experiment_sensitivity_override():
    budget = PrivacyBudget(0.1, 1e-4)
    a = mean_experiment(100, 4, budget, Mechanism.MECH2, 10, 0, sensitivity=1.0)
    b = mean_experiment(100, 4, budget, Mechanism.MECH2, 10, 0, sensitivity=2.0)
    assert abs(b.metric - 2.0 * a.metric) <= 1e-12 * b.metric


def test_mean_experiment_propagates_domain_errors():
    with pytest.raises(ValueError):
        mean_experiment(100, 4, PrivacyBudget(1, 0.6), Mechanism.MECH2, 10, 0)


# --- histogram experiment ---------------------------------------------------


def test_histogram_counts_cross_product():
    rows = [("a", "x"), ("b", "y"), ("a", "x")]
    counts = histogram_counts(rows)
    # domain is the full cross-product {a,b} x {x,y}, zero cells included
    assert counts.tolist() == [2.0, 0.0, 0.0, 1.0]


def test_histogram_counts_errors():
    with pytest.raises(ValueError):
        histogram_counts([])
    with pytest.raises(ValueError):
        histogram_counts([("a", "x"), ("b",)])


def test_histogram_mse_magnitude():
    _, rows = synthetic_census_rows(500, seed=4)
    budget = PrivacyBudget(0.5, 1e-6)
    report = histogram_experiment(rows, budget, Mechanism.MECH4, trials=1000, seed=5)
    sigma = calibrate(Mechanism.MECH4, budget, UNIT).sigma
    assert abs(report.metric - sigma * sigma) <= 0.10 * sigma * sigma


def test_histogram_dp_chain_ordering():
    _, rows = synthetic_census_rows(2000, seed=6)
    budget = PrivacyBudget(0.1, 1e-6)
    metrics = [
        histogram_experiment(rows, budget, kind, trials=200, seed=2).metric
        for kind in DP_CHAIN
    ]
    assert all(a < b for a, b in zip(metrics, metrics[1:]))


def test_histogram_reproducible():
    _, rows = synthetic_census_rows(100, seed=0)
    budget = PrivacyBudget(1.0, 1e-4)
    a = histogram_experiment(rows, budget, Mechanism.DP_OPT, trials=10, seed=3)
    b = histogram_experiment(rows, budget, Mechanism.DP_OPT, trials=10, seed=3)
    assert a == b


# --- categorical record streams ---------------------------------------------


def test_csv_round_trip(tmp_path):
    header, rows = synthetic_census_rows(50, seed=12)
    path = tmp_path / "records.csv"
    write_categorical_csv(path, header, rows)
    got_header, got_rows = read_categorical_csv(path)
    assert got_header == header
    assert got_rows == rows


def test_csv_rejects_ragged(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("a,b\n1,2\n3\n", encoding="utf-8")
    with pytest.raises(ValueError):
        read_categorical_csv(path)


def test_csv_rejects_empty(tmp_path):
    path = tmp_path / "empty.csv"
    path.write_text("", encoding="utf-8")
    with pytest.raises(ValueError):
        read_categorical_csv(path)
    path.write_text("a,b\n", encoding="utf-8")
    with pytest.raises(ValueError):
        read_categorical_csv(path)


def test_synthetic_rows_deterministic():
    first = synthetic_census_rows(200, seed=42)
    second = synthetic_census_rows(200, seed=42)
    assert first == second
    header, rows = first
    assert len(rows) == 200
    assert all(len(row) == len(header) for row in rows)
