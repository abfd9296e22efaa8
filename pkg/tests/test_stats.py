import math

import numpy as np
import pytest
from scipy import special
from scipy import stats as scipy_stats

from cascadekit.errors import DegenerateSampleError, ParameterError
from cascadekit.stats import (
    FAMILY_IG,
    FAMILY_LN,
    FAMILY_POISSON,
    FAMILY_UNIFORM,
    FittedDistribution,
    empirical_ccdf,
    empirical_cdf,
    empirical_pdf,
    first_sharer_table,
    fit_first_sharers,
    fit_power_law,
    kolmogorov_critical,
    ks_two_sample,
    sample_inverse_gaussian,
    summary_stats,
    wald_test,
)

from oracles import chi2_1_sf_quadrature, naive_summary, sample_power_law


# --- summary statistics ---------------------------------------------------------

def test_summary_stats_basic():
    s = summary_stats([1, 2, 3, 4, 5])
    assert s.as_tuple() == (1.0, 2.0, 3.0, 3.0, 4.0, 5.0)


def test_summary_stats_rejects_empty():
    with pytest.raises(ParameterError):
        summary_stats([])


def test_summary_stats_matches_naive_oracle_exactly():
    rng = np.random.default_rng(101)
    for _ in range(60):
        n = int(rng.integers(1, 1000))
        sample = rng.integers(0, 10_000, size=n)
        assert summary_stats(sample).as_tuple() == naive_summary(sample)


def test_summary_stats_reproduces_engineered_data_column():
    # integer sample built so the six-number summary lands exactly on
    # (1, 5, 10, 39.34, 27, 3033)
    sample = [1] * 262 + [5] * 262 + [10] * 262 + [27] * 251 + [2276] * 11 + [2269] + [3033]
    assert len(sample) == 1050
    assert summary_stats(sample).as_tuple() == (1.0, 5.0, 10.0, 39.34, 27.0, 3033.0)


def test_empirical_curve_boundary_identities():
    sample = [3, 1, 4, 1, 5, 9, 2, 6]
    xs, ccdf = empirical_ccdf(sample, at=[min(sample) - 1])
    assert ccdf[0] == 1.0
    xs, cdf = empirical_cdf(sample, at=[max(sample)])
    assert cdf[0] == 1.0
    xs, ccdf = empirical_ccdf(sample, at=[max(sample)])
    assert ccdf[0] == 0.0


def test_empirical_pdf_integrates_to_one():
    rng = np.random.default_rng(7)
    sample = rng.normal(size=4000)
    centers, density = empirical_pdf(sample, bins=40)
    width = centers[1] - centers[0]
    assert float(np.sum(density) * width) == pytest.approx(1.0, rel=1e-9)


# --- power-law fitting ------------------------------------------------------------

def test_fit_power_law_recovers_alpha_25():
    draws = sample_power_law(np.random.default_rng(42), 2.5, 10**5)
    fit = fit_power_law(draws, x_min=1)
    assert 2.45 <= fit.alpha <= 2.55
    assert fit.n_tail == 10**5
    assert fit.var_alpha > 0


def test_fit_power_law_recovers_paper_style_exponent():
    draws = sample_power_law(np.random.default_rng(9), 2.21, 10**5)
    fit = fit_power_law(draws, x_min=1)
    assert abs(fit.alpha - 2.21) < 0.05


def test_fit_power_law_respects_x_min():
    rng = np.random.default_rng(3)
    draws = sample_power_law(rng, 2.4, 40_000, x_min=4)
    fit = fit_power_law(draws, x_min=4)
    assert abs(fit.alpha - 2.4) < 0.08
    assert fit.x_min == 4


def test_fit_power_law_degenerate_cases():
    with pytest.raises(DegenerateSampleError):
        fit_power_law([5, 5, 5])
    with pytest.raises(DegenerateSampleError):
        fit_power_law([7], x_min=1)
    with pytest.raises(DegenerateSampleError):
        fit_power_law([1, 2, 3], x_min=3)  # single tail sample
    with pytest.raises(ParameterError):
        fit_power_law([0, 1, 2])


@pytest.mark.parametrize("alpha", [2.0, 2.5, 3.0])
def test_fit_power_law_round_trip_rate(alpha):
    # at n = 1e5 the estimator must land within +-0.05 in at least 95 of 100 seeds
    hits = 0
    for seed in range(100):
        draws = sample_power_law(np.random.default_rng(20_000 + seed), alpha, 10**5)
        hits += abs(fit_power_law(draws).alpha - alpha) < 0.05
    assert hits >= 95


def test_variance_close_to_continuous_approximation():
    draws = sample_power_law(np.random.default_rng(11), 2.5, 10**5)
    fit = fit_power_law(draws)
    # the two variance conventions agree within a factor of ~2 at x_min=1
    assert 0.3 < fit.var_alpha / fit.var_alpha_continuous < 3.0


# --- Wald test --------------------------------------------------------------------

def test_wald_identity_under_equal_exponents():
    fit = fit_power_law(sample_power_law(np.random.default_rng(1), 2.5, 5000))
    result = wald_test(fit, fit, alpha=0.05)
    assert result.W == 0.0
    assert result.p_value == 1.0
    assert not result.reject


def test_wald_p_value_matches_quadrature_oracle():
    from cascadekit.stats import PowerLawFit

    base = PowerLawFit(alpha=2.0, var_alpha=1.0, x_min=1, n_tail=100)
    other = PowerLawFit(alpha=2.0 + math.sqrt(3.8415), var_alpha=1.0, x_min=1, n_tail=100)
    result = wald_test(base, other)
    oracle = chi2_1_sf_quadrature(3.8415)
    assert result.p_value == pytest.approx(oracle, abs=1e-9)
    assert 0.0499 <= result.p_value <= 0.0501


def test_wald_uses_variance_of_first_argument_only():
    from cascadekit.stats import PowerLawFit

    tight = PowerLawFit(alpha=2.0, var_alpha=1e-4, x_min=1, n_tail=1000)
    loose = PowerLawFit(alpha=2.2, var_alpha=1.0, x_min=1, n_tail=10)
    assert wald_test(tight, loose).W == pytest.approx((0.2 ** 2) / 1e-4)
    assert wald_test(loose, tight).W == pytest.approx((0.2 ** 2) / 1.0)


def test_wald_degenerate_variance():
    from cascadekit.stats import PowerLawFit

    flat = PowerLawFit(alpha=2.0, var_alpha=0.0, x_min=1, n_tail=10)
    good = PowerLawFit(alpha=2.0, var_alpha=0.1, x_min=1, n_tail=10)
    with pytest.raises(DegenerateSampleError):
        wald_test(flat, good)


def test_wald_monte_carlo_calibration_against_reference_fit():
    # Same-alpha data; the second fit is high-precision so that dividing by
    # Var(alpha_1) alone sizes the test correctly at ~5%.
    rng = np.random.default_rng(55)
    reference = fit_power_law(sample_power_law(rng, 2.5, 2 * 10**6))
    rejections = 0
    trials = 1000
    for _ in range(trials):
        fit = fit_power_law(sample_power_law(rng, 2.5, 2000, table_size=10**5))
        rejections += wald_test(fit, reference, alpha=0.05).reject
    assert 0.03 <= rejections / trials <= 0.07


# --- KS test ----------------------------------------------------------------------

def test_ks_identical_samples_give_zero_distance():
    rng = np.random.default_rng(2)
    s = rng.normal(size=400)
    result = ks_two_sample(s, s)
    assert result.D == 0.0
    assert not result.reject


def test_ks_disjoint_supports_give_distance_one():
    rng = np.random.default_rng(4)
    a = rng.uniform(0, 1, size=200)
    b = rng.uniform(2, 3, size=300)
    result = ks_two_sample(a, b, alpha=0.05)
    assert result.D == 1.0
    assert result.reject


def test_ks_critical_value_matches_inverted_kolmogorov():
    assert kolmogorov_critical(0.05) == pytest.approx(special.kolmogi(0.05), abs=1e-9)
    assert kolmogorov_critical(0.05) == pytest.approx(1.358, abs=1e-3)
    assert kolmogorov_critical(0.01) == pytest.approx(special.kolmogi(0.01), abs=1e-6)


def test_ks_statistic_matches_scipy():
    rng = np.random.default_rng(6)
    a = rng.normal(size=173)
    b = rng.normal(0.3, 1.0, size=211)
    mine = ks_two_sample(a, b)
    assert mine.D == pytest.approx(scipy_stats.ks_2samp(a, b).statistic, abs=1e-12)


def test_ks_invariant_under_common_monotone_transform():
    rng = np.random.default_rng(8)
    a = rng.exponential(size=150)
    b = rng.exponential(2.0, size=140)
    base = ks_two_sample(a, b).D
    assert ks_two_sample(np.log(a + 1), np.log(b + 1)).D == pytest.approx(base, abs=1e-12)
    assert ks_two_sample(3 * a + 2, 3 * b + 2).D == pytest.approx(base, abs=1e-12)


def test_ks_rejects_empty_sample():
    with pytest.raises(ParameterError):
        ks_two_sample([], [1.0])


# --- distribution families ---------------------------------------------------------

def test_distribution_parameter_validation():
    with pytest.raises(ParameterError):
        FittedDistribution.inverse_gaussian(0.0, 1.0)
    with pytest.raises(ParameterError):
        FittedDistribution.inverse_gaussian(1.0, -2.0)
    with pytest.raises(ParameterError):
        FittedDistribution.log_normal(0.0, 0.0)
    with pytest.raises(ParameterError):
        FittedDistribution.poisson(-1.0)
    with pytest.raises(ParameterError):
        FittedDistribution.uniform(3.0, 1.0)
    with pytest.raises(ParameterError):
        FittedDistribution.empirical([])


def test_empirical_point_mass_draws_constant():
    dist = FittedDistribution.empirical([5, 5, 5])
    assert np.all(dist.sample(50, seed=0) == 5.0)


def test_distribution_means():
    assert FittedDistribution.inverse_gaussian(18.73, 9.63).mean() == 18.73
    assert FittedDistribution.poisson(39.24).mean() == 39.24
    assert FittedDistribution.uniform(2, 10).mean() == 6.0
    assert FittedDistribution.empirical([1, 2, 3]).mean() == 2.0
    ln = FittedDistribution.log_normal(1.0, 0.5)
    assert ln.mean() == pytest.approx(math.exp(1.125))


def test_inverse_gaussian_sampler_matches_analytic_moments():
    rng = np.random.default_rng(77)
    draws = sample_inverse_gaussian(rng, 2.0, 6.0, 200_000)
    assert np.all(draws > 0)
    assert draws.mean() == pytest.approx(2.0, rel=0.01)
    assert draws.var() == pytest.approx(2.0 ** 3 / 6.0, rel=0.05)


# --- first-sharer fitting ------------------------------------------------------------

def test_poisson_rate_equals_sample_mean():
    # 25 integer counts summing to 981 -> mean exactly 39.24
    counts = [20] * 12 + [58] * 12 + [45]
    assert sum(counts) / len(counts) == 39.24
    fit = fit_first_sharers(counts, seed=3)
    assert fit.fits[FAMILY_POISSON].params["rate"] == 39.24


def test_ig_mle_formulas():
    counts = np.array([2, 3, 7, 9, 14, 30])
    fit = fit_first_sharers(counts, seed=1)
    ig = fit.fits[FAMILY_IG]
    mean = counts.mean()
    shape = len(counts) / np.sum(1.0 / counts - 1.0 / mean)
    assert ig.params["mean"] == pytest.approx(mean)
    assert ig.params["shape"] == pytest.approx(shape)
    ln = fit.fits[FAMILY_LN]
    logs = np.log(counts)
    assert ln.params["log_mean"] == pytest.approx(logs.mean())
    assert ln.params["log_sd"] == pytest.approx(logs.std())


def test_all_equal_counts_fit_uniform_and_mark_ig_degenerate():
    fit = fit_first_sharers([7, 7, 7, 7], seed=2)
    uniform = fit.fits[FAMILY_UNIFORM]
    assert (uniform.params["low"], uniform.params["high"]) == (7.0, 7.0)
    assert FAMILY_IG in fit.degenerate
    assert FAMILY_LN in fit.degenerate
    assert FAMILY_IG not in fit.fits


def test_zeros_excluded_from_positive_support_fits():
    counts = [0, 0, 0, 2, 4, 8, 16]
    fit = fit_first_sharers(counts, seed=4)
    assert fit.zeros_excluded == 3
    assert fit.fits[FAMILY_IG].params["mean"] == pytest.approx(np.mean([2, 4, 8, 16]))
    # Poisson and uniform fit the full sample, zeros included
    assert fit.fits[FAMILY_POISSON].params["rate"] == pytest.approx(np.mean(counts))
    assert fit.fits[FAMILY_UNIFORM].params["low"] == 0.0


def test_fit_first_sharers_needs_two_positive_counts():
    with pytest.raises(DegenerateSampleError):
        fit_first_sharers([0, 0, 5], seed=0)
    with pytest.raises(ParameterError):
        fit_first_sharers([-1, 3], seed=0)


def test_write_curve_csv_round_trips(tmp_path):
    import csv as csv_mod

    xs, ys = empirical_ccdf(np.random.default_rng(3).normal(size=100))
    path = tmp_path / "curve.csv"
    from cascadekit.stats import write_curve_csv

    write_curve_csv(xs, ys, path)
    with open(path, newline="") as fh:
        rows = list(csv_mod.DictReader(fh))
    assert [float(r["x"]) for r in rows] == xs.tolist()
    assert [float(r["y"]) for r in rows] == ys.tolist()


def test_table_rows_compare_data_against_families():
    rng = np.random.default_rng(12)
    counts = np.floor(sample_inverse_gaussian(rng, 20.0, 10.0, 500))
    fit = fit_first_sharers(counts, seed=9)
    rows = first_sharer_table(fit)
    assert [row["statistic"] for row in rows] == ["min", "q1", "median", "mean", "q3", "max"]
    data_column = [row["data"] for row in rows]
    assert tuple(data_column) == fit.data_stats.as_tuple()
    assert all(row["IG"] is not None for row in rows)
