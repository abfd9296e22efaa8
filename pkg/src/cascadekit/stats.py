"""Distribution fitting and hypothesis tests for cascade statistics.

Covers discrete power-law maximum likelihood with a Wald comparison of
scaling exponents, the two-sample Kolmogorov-Smirnov test with asymptotic
critical values, first-sharer count models (inverse Gaussian, log-normal,
Poisson, uniform, empirical), and quartile summary tables.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq
from scipy.special import zeta

from .errors import DegenerateSampleError, ParameterError
from .rng import as_generator


# --- summary statistics -------------------------------------------------------

@dataclass(frozen=True)
class SummaryStats:
    """Six-number summary: min, first quartile, median, mean, third quartile, max."""

    min: float
    q1: float
    median: float
    mean: float
    q3: float
    max: float

    def as_tuple(self) -> tuple[float, ...]:
        return (self.min, self.q1, self.median, self.mean, self.q3, self.max)


def summary_stats(samples) -> SummaryStats:
    """Quartiles by linear interpolation between order statistics, plus mean."""
    x = np.asarray(samples, dtype=float)
    if x.size == 0:
        raise ParameterError("summary statistics need a non-empty sample")
    lo, q1, med, q3, hi = np.quantile(x, [0.0, 0.25, 0.5, 0.75, 1.0])
    return SummaryStats(float(lo), float(q1), float(med), float(x.mean()), float(q3), float(hi))


def empirical_cdf(samples, at=None) -> tuple[np.ndarray, np.ndarray]:
    """P(X <= x) tabulated at the sorted unique sample values (or a given grid)."""
    x = np.sort(np.asarray(samples, dtype=float))
    if x.size == 0:
        raise ParameterError("empirical curves need a non-empty sample")
    grid = np.unique(x) if at is None else np.asarray(at, dtype=float)
    return grid, np.searchsorted(x, grid, side="right") / x.size


def empirical_ccdf(samples, at=None) -> tuple[np.ndarray, np.ndarray]:
    """P(X > x) tabulated at the sorted unique sample values (or a given grid)."""
    grid, cdf = empirical_cdf(samples, at=at)
    return grid, 1.0 - cdf


def empirical_pdf(samples, bins=30) -> tuple[np.ndarray, np.ndarray]:
    """Histogram density estimate; returns bin centers and densities."""
    x = np.asarray(samples, dtype=float)
    if x.size == 0:
        raise ParameterError("empirical curves need a non-empty sample")
    density, edges = np.histogram(x, bins=bins, density=True)
    centers = 0.5 * (edges[:-1] + edges[1:])
    return centers, density


def write_curve_csv(xs, ys, path) -> None:
    """Write an (x, y) curve table; float cells round-trip at full precision."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x", "y"])
        for x, y in zip(xs, ys):
            writer.writerow([repr(float(x)), repr(float(y))])


# --- discrete power-law fitting ------------------------------------------------

def _log_zeta(alpha: float, x_min: int) -> float:
    return math.log(zeta(alpha, x_min))


def _log_zeta_deriv(alpha: float, x_min: int, h: float = 1e-5) -> float:
    return (_log_zeta(alpha + h, x_min) - _log_zeta(alpha - h, x_min)) / (2 * h)


def _log_zeta_second(alpha: float, x_min: int, h: float = 1e-4) -> float:
    return (
        _log_zeta(alpha + h, x_min) - 2 * _log_zeta(alpha, x_min) + _log_zeta(alpha - h, x_min)
    ) / (h * h)


@dataclass(frozen=True)
class PowerLawFit:
    """Discrete MLE fit of p(x) ~ x^-alpha for integer x >= x_min."""

    alpha: float
    var_alpha: float
    x_min: int
    n_tail: int

    @property
    def sd_alpha(self) -> float:
        return math.sqrt(self.var_alpha)

    @property
    def var_alpha_continuous(self) -> float:
        """Continuous-approximation variance (alpha-1)^2 / n, for reference."""
        return (self.alpha - 1.0) ** 2 / self.n_tail


def fit_power_law(samples, x_min: int = 1) -> PowerLawFit:
    """Maximum-likelihood scaling exponent for discrete power-law data.

    Maximizes the zeta-normalized likelihood over the tail x >= x_min; the
    variance is the inverse observed Fisher information n * (log zeta)''.

    Raises:
        DegenerateSampleError: fewer than two tail samples, or all equal.
        ParameterError: non-positive samples or x_min < 1.
    """
    x = np.asarray(samples)
    if x_min < 1:
        raise ParameterError(f"x_min must be >= 1, got {x_min}")
    if x.size and np.any(x < 1):
        raise ParameterError("power-law samples must be positive integers")
    tail = x[x >= x_min].astype(float)
    n = tail.size
    if n < 2:
        raise DegenerateSampleError(f"need >= 2 samples at or above x_min={x_min}, got {n}")
    if np.all(tail == tail[0]):
        raise DegenerateSampleError("all tail samples are equal; exponent is unidentifiable")

    mean_log = float(np.mean(np.log(tail)))
    # Root of the score: (log zeta)'(alpha, x_min) = -mean_log.
    def score(alpha: float) -> float:
        return _log_zeta_deriv(alpha, x_min) + mean_log

    lo = 1.0 + 1e-4  # keep the finite-difference stencil above the zeta pole at 1
    hi = 2.0
    while score(hi) <= 0:
        hi *= 2.0
        if hi > 1e4:
            raise DegenerateSampleError("no finite exponent fits this sample")
    alpha_hat = brentq(score, lo, hi, xtol=1e-10)
    info = _log_zeta_second(alpha_hat, x_min)
    return PowerLawFit(alpha=float(alpha_hat), var_alpha=1.0 / (n * info), x_min=x_min, n_tail=n)


@dataclass(frozen=True)
class WaldTestResult:
    W: float
    p_value: float
    reject: bool


def wald_test(fit1: PowerLawFit, fit2: PowerLawFit, alpha: float = 0.05) -> WaldTestResult:
    """Compare two fitted exponents with W = (a1 - a2)^2 / Var(a1) ~ chi2(1).

    The variance of the first fit alone normalizes the statistic, so the
    second argument acts as the reference fit.
    """
    if not 0.0 < alpha < 1.0:
        raise ParameterError(f"significance level must be in (0, 1), got {alpha}")
    if fit1.var_alpha <= 0:
        raise DegenerateSampleError("first fit has zero variance; Wald statistic undefined")
    w = (fit1.alpha - fit2.alpha) ** 2 / fit1.var_alpha
    p = math.erfc(math.sqrt(w / 2.0))  # chi-square(1) survival function
    return WaldTestResult(W=w, p_value=p, reject=p < alpha)


# --- two-sample Kolmogorov-Smirnov ---------------------------------------------

def kolmogorov_sf(x: float) -> float:
    """Survival function of the asymptotic Kolmogorov distribution."""
    if x <= 0:
        return 1.0
    total = 0.0
    sign = 1.0
    for k in range(1, 100_000):
        term = math.exp(-2.0 * k * k * x * x)
        total += sign * term
        if term < 1e-16:
            break
        sign = -sign
    return min(1.0, max(0.0, 2.0 * total))


def kolmogorov_critical(alpha: float) -> float:
    """c(alpha) with P(K > c) = alpha, by inverting the Kolmogorov survival function."""
    if not 0.0 < alpha < 1.0:
        raise ParameterError(f"significance level must be in (0, 1), got {alpha}")
    return brentq(lambda c: kolmogorov_sf(c) - alpha, 1e-4, 8.0, xtol=1e-12)


@dataclass(frozen=True)
class KSTestResult:
    D: float
    D_alpha: float
    reject: bool


def ks_two_sample(s1, s2, alpha: float = 0.05) -> KSTestResult:
    """Two-sample KS test with the asymptotic critical value.

    D is the largest gap between the two empirical CDFs; the critical value
    is c(alpha) * sqrt((n1 + n2) / (n1 * n2)).
    """
    if not 0.0 < alpha < 1.0:
        raise ParameterError(f"significance level must be in (0, 1), got {alpha}")
    a = np.sort(np.asarray(s1, dtype=float))
    b = np.sort(np.asarray(s2, dtype=float))
    if a.size == 0 or b.size == 0:
        raise ParameterError("both samples must be non-empty")
    pooled = np.concatenate([a, b])
    f1 = np.searchsorted(a, pooled, side="right") / a.size
    f2 = np.searchsorted(b, pooled, side="right") / b.size
    d = float(np.max(np.abs(f1 - f2)))
    d_alpha = kolmogorov_critical(alpha) * math.sqrt((a.size + b.size) / (a.size * b.size))
    return KSTestResult(D=d, D_alpha=d_alpha, reject=d > d_alpha)


# --- first-sharer distribution families ----------------------------------------

FAMILY_IG = "inverse_gaussian"
FAMILY_LN = "log_normal"
FAMILY_POISSON = "poisson"
FAMILY_UNIFORM = "uniform"
FAMILY_EMPIRICAL = "empirical"


def sample_inverse_gaussian(rng: np.random.Generator, mean: float, shape: float, size: int) -> np.ndarray:
    """Draw IG(mean, shape) variates via the Michael-Schucany-Haas transform."""
    y = rng.standard_normal(size) ** 2
    w = mean * y / (2.0 * shape)
    x1 = mean * (1.0 + w - np.sqrt(w * w + 2.0 * w))
    u = rng.uniform(size=size)
    return np.where(u * (mean + x1) <= mean, x1, mean * mean / x1)


@dataclass(frozen=True, eq=False)
class FittedDistribution:
    """A first-sharer count model: family name plus family-specific parameters."""

    family: str
    params: dict = field(default_factory=dict)
    sample_ref: np.ndarray | None = None

    def __eq__(self, other) -> bool:
        if not isinstance(other, FittedDistribution):
            return NotImplemented
        if self.family != other.family or self.params != other.params:
            return False
        if (self.sample_ref is None) != (other.sample_ref is None):
            return False
        return self.sample_ref is None or np.array_equal(self.sample_ref, other.sample_ref)

    @classmethod
    def inverse_gaussian(cls, mean: float, shape: float) -> "FittedDistribution":
        if mean <= 0 or shape <= 0:
            raise ParameterError(f"IG needs positive mean and shape, got ({mean}, {shape})")
        return cls(FAMILY_IG, {"mean": float(mean), "shape": float(shape)})

    @classmethod
    def log_normal(cls, log_mean: float, log_sd: float) -> "FittedDistribution":
        if log_sd <= 0:
            raise ParameterError(f"log-normal needs positive log-sd, got {log_sd}")
        return cls(FAMILY_LN, {"log_mean": float(log_mean), "log_sd": float(log_sd)})

    @classmethod
    def poisson(cls, rate: float) -> "FittedDistribution":
        if rate < 0:
            raise ParameterError(f"Poisson rate must be >= 0, got {rate}")
        return cls(FAMILY_POISSON, {"rate": float(rate)})

    @classmethod
    def uniform(cls, low: float, high: float) -> "FittedDistribution":
        if low > high:
            raise ParameterError(f"uniform needs low <= high, got ({low}, {high})")
        return cls(FAMILY_UNIFORM, {"low": float(low), "high": float(high)})

    @classmethod
    def empirical(cls, samples) -> "FittedDistribution":
        data = np.asarray(samples, dtype=float)
        if data.size == 0:
            raise ParameterError("empirical distribution needs a non-empty sample")
        return cls(FAMILY_EMPIRICAL, {}, sample_ref=data)

    def sample(self, size: int, seed) -> np.ndarray:
        """Draw `size` real-valued variates (integer-valued for Poisson/empirical counts)."""
        rng = as_generator(seed)
        if self.family == FAMILY_IG:
            return sample_inverse_gaussian(rng, self.params["mean"], self.params["shape"], size)
        if self.family == FAMILY_LN:
            return rng.lognormal(self.params["log_mean"], self.params["log_sd"], size)
        if self.family == FAMILY_POISSON:
            return rng.poisson(self.params["rate"], size).astype(float)
        if self.family == FAMILY_UNIFORM:
            return rng.uniform(self.params["low"], self.params["high"], size)
        if self.family == FAMILY_EMPIRICAL:
            return rng.choice(self.sample_ref, size=size, replace=True)
        raise ParameterError(f"unknown distribution family {self.family!r}")

    def mean(self) -> float:
        if self.family == FAMILY_IG:
            return self.params["mean"]
        if self.family == FAMILY_LN:
            return math.exp(self.params["log_mean"] + self.params["log_sd"] ** 2 / 2.0)
        if self.family == FAMILY_POISSON:
            return self.params["rate"]
        if self.family == FAMILY_UNIFORM:
            return 0.5 * (self.params["low"] + self.params["high"])
        if self.family == FAMILY_EMPIRICAL:
            return float(self.sample_ref.mean())
        raise ParameterError(f"unknown distribution family {self.family!r}")


# --- fitting first-sharer counts ------------------------------------------------

@dataclass
class FirstSharerFit:
    """Per-family fits plus the Table-style comparison of summary statistics."""

    data_stats: SummaryStats
    fits: dict[str, FittedDistribution]
    family_stats: dict[str, SummaryStats]
    zeros_excluded: int
    degenerate: tuple[str, ...]


def fit_first_sharers(samples, seed) -> FirstSharerFit:
    """MLE fit of every family to first-sharer counts, with a stats comparison.

    Zeros are excluded from the inverse-Gaussian and log-normal fits (their
    supports are positive); the exclusion count is reported. The comparison
    table draws one synthetic sample of equal size per parametric family.

    Raises:
        DegenerateSampleError: fewer than two positive samples.
    """
    counts = np.asarray(samples, dtype=float)
    if counts.size == 0 or np.any(counts < 0):
        raise ParameterError("first-sharer counts must be non-negative and non-empty")
    positives = counts[counts > 0]
    if positives.size < 2:
        raise DegenerateSampleError("need at least two positive first-sharer counts")
    zeros_excluded = int(counts.size - positives.size)

    fits: dict[str, FittedDistribution] = {}
    degenerate: list[str] = []

    mean_pos = float(positives.mean())
    recip_gap = float(np.sum(1.0 / positives - 1.0 / mean_pos))
    if recip_gap > 0:
        fits[FAMILY_IG] = FittedDistribution.inverse_gaussian(mean_pos, positives.size / recip_gap)
    else:
        degenerate.append(FAMILY_IG)  # all-equal sample drives the IG shape to infinity

    logs = np.log(positives)
    log_sd = float(logs.std())
    if log_sd > 0:
        fits[FAMILY_LN] = FittedDistribution.log_normal(float(logs.mean()), log_sd)
    else:
        degenerate.append(FAMILY_LN)

    fits[FAMILY_POISSON] = FittedDistribution.poisson(float(counts.mean()))
    fits[FAMILY_UNIFORM] = FittedDistribution.uniform(float(counts.min()), float(counts.max()))
    fits[FAMILY_EMPIRICAL] = FittedDistribution.empirical(counts)

    rng = as_generator(seed)
    family_stats = {}
    for family in (FAMILY_IG, FAMILY_LN, FAMILY_POISSON, FAMILY_UNIFORM):
        if family in fits:
            family_stats[family] = summary_stats(fits[family].sample(counts.size, rng))

    return FirstSharerFit(
        data_stats=summary_stats(counts),
        fits=fits,
        family_stats=family_stats,
        zeros_excluded=zeros_excluded,
        degenerate=tuple(degenerate),
    )


TABLE_ROWS = ("min", "q1", "median", "mean", "q3", "max")
TABLE_FAMILIES = ((FAMILY_IG, "IG"), (FAMILY_LN, "LN"), (FAMILY_POISSON, "Poi"))


def first_sharer_table(fit: FirstSharerFit) -> list[dict]:
    """Rows (statistic, data, IG, LN, Poi) comparing data stats to fitted-sample stats."""
    rows = []
    for i, stat in enumerate(TABLE_ROWS):
        row = {"statistic": stat, "data": fit.data_stats.as_tuple()[i]}
        for family, label in TABLE_FAMILIES:
            stats = fit.family_stats.get(family)
            row[label] = None if stats is None else stats.as_tuple()[i]
        rows.append(row)
    return rows


def write_first_sharer_table(fit: FirstSharerFit, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["statistic", "data", "IG", "LN", "Poi"])
        for row in first_sharer_table(fit):
            cells = ["" if row[c] is None else repr(float(row[c])) for c in ("data", "IG", "LN", "Poi")]
            writer.writerow([row["statistic"]] + cells)
