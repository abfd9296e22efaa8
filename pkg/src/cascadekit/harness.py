"""Parameter sweeps, dataset ingestion, and cascade analysis.

A sweep walks a (phi_hl, r, delta) grid, builds a fresh labeled graph per
iteration, diffuses a full news batch, and pools cascade sizes and heights
across iterations into per-point means and standard deviations, alongside
the closed-form branching predictions. All randomness derives from one
master seed through a documented SeedSequence splitting scheme, so results
are reproducible and independent of execution order.
"""

from __future__ import annotations

import csv
import itertools
import json
import logging
import os
from dataclasses import dataclass, field

import numpy as np

from . import branching, stats, trees
from .diffusion import run_batch, sample_news
from .errors import DegenerateSampleError, ParameterError, SupercriticalError
from .graph import generate_small_world, label_edges
from .stats import FittedDistribution
from .trees import SharingTree, load_trees

log = logging.getLogger(__name__)

DEFAULT_DELTA_GRID = tuple(np.round(np.arange(0.01, 0.0501, 0.005), 4).tolist())
DEFAULT_PHI_GRID = tuple(np.round(np.arange(0.5, 1.0001, 0.02), 4).tolist())
DEFAULT_R_GRID = (0.01, 0.1, 0.5, 1.0)


@dataclass
class SweepConfig:
    """Full description of a Monte Carlo sweep."""

    n: int
    m: int
    z: int
    master_seed: int
    first_sharers: FittedDistribution
    deltas: tuple = DEFAULT_DELTA_GRID
    phis: tuple = DEFAULT_PHI_GRID
    rs: tuple = DEFAULT_R_GRID
    iterations: int = 100

    def validate(self) -> None:
        if self.n <= self.z:
            raise ParameterError(f"need n > z, got n={self.n}, z={self.z}")
        if self.m < 0 or self.iterations < 1:
            raise ParameterError("need m >= 0 and iterations >= 1")
        if not self.deltas or not self.phis or not self.rs:
            raise ParameterError("sweep grid is empty")
        for d in self.deltas:
            if not 0.0 <= d <= 1.0:
                raise ParameterError(f"delta {d} outside [0, 1]")
        for p in self.phis:
            if not 0.0 <= p <= 1.0:
                raise ParameterError(f"phi_hl {p} outside [0, 1]")
        for r in self.rs:
            if not 0.0 <= r <= 1.0:
                raise ParameterError(f"r {r} outside [0, 1]")

    def grid(self) -> list[tuple[float, float, float]]:
        """Grid points in canonical (phi_hl, r, delta) order."""
        return list(itertools.product(self.phis, self.rs, self.deltas))


@dataclass
class SweepResult:
    """Pooled cascade statistics at one grid point plus analytic predictions."""

    phi_hl: float
    r: float
    delta: float
    mean_size: float
    sd_size: float
    mean_height: float
    sd_height: float
    mu_pred: float
    size_pred: float | None
    iterations: int
    supercritical: bool = False


def _dist_to_dict(dist: FittedDistribution) -> dict:
    doc = {"family": dist.family, **dist.params}
    if dist.family == stats.FAMILY_EMPIRICAL:
        doc["sample"] = dist.sample_ref.tolist()
    return doc


def _dist_from_dict(doc: dict) -> FittedDistribution:
    family = doc["family"]
    if family == stats.FAMILY_IG:
        return FittedDistribution.inverse_gaussian(doc["mean"], doc["shape"])
    if family == stats.FAMILY_LN:
        return FittedDistribution.log_normal(doc["log_mean"], doc["log_sd"])
    if family == stats.FAMILY_POISSON:
        return FittedDistribution.poisson(doc["rate"])
    if family == stats.FAMILY_UNIFORM:
        return FittedDistribution.uniform(doc["low"], doc["high"])
    if family == stats.FAMILY_EMPIRICAL:
        return FittedDistribution.empirical(doc["sample"])
    raise ParameterError(f"unknown distribution family {family!r}")


def config_to_dict(config: SweepConfig) -> dict:
    return {
        "n": config.n,
        "m": config.m,
        "z": config.z,
        "master_seed": config.master_seed,
        "first_sharers": _dist_to_dict(config.first_sharers),
        "deltas": list(config.deltas),
        "phis": list(config.phis),
        "rs": list(config.rs),
        "iterations": config.iterations,
    }


def config_from_dict(doc: dict, master_seed: int | None = None) -> SweepConfig:
    config = SweepConfig(
        n=int(doc["n"]),
        m=int(doc["m"]),
        z=int(doc["z"]),
        master_seed=int(doc["master_seed"]) if master_seed is None else master_seed,
        first_sharers=_dist_from_dict(doc["first_sharers"]),
        deltas=tuple(doc.get("deltas", DEFAULT_DELTA_GRID)),
        phis=tuple(doc.get("phis", DEFAULT_PHI_GRID)),
        rs=tuple(doc.get("rs", DEFAULT_R_GRID)),
        iterations=int(doc.get("iterations", 100)),
    )
    config.validate()
    return config


def load_config(path, master_seed: int | None = None) -> SweepConfig:
    with open(path, encoding="utf-8") as fh:
        return config_from_dict(json.load(fh), master_seed=master_seed)


def save_config(config: SweepConfig, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(config_to_dict(config), fh, indent=2)


def troll_fit_config(master_seed: int, iterations: int = 100) -> SweepConfig:
    """Named preset for the troll-page scenario: 16889 users, 1072 items,
    inverse-Gaussian(18.73, 9.63) first sharers at (phi_hl, r, delta) =
    (0.56, 0.01, 0.015)."""
    return SweepConfig(
        n=16889,
        m=1072,
        z=8,
        master_seed=master_seed,
        first_sharers=FittedDistribution.inverse_gaussian(18.73, 9.63),
        deltas=(0.015,),
        phis=(0.56,),
        rs=(0.01,),
        iterations=iterations,
    )


PRESETS = {"troll": troll_fit_config}


def simulate_point(n, m, z, phi_hl, r, delta, dist, seed_sequence) -> tuple[list, list[int]]:
    """One iteration at one grid point: fresh graph, fresh news, full batch.

    Returns (outcomes, seed counts). The seed sequence is split into four
    independent streams: graph build, edge labeling, news sampling, cascades.
    """
    s_graph, s_label, s_news, s_batch = seed_sequence.spawn(4)
    g = generate_small_world(n, z, r, seed=s_graph)
    g = label_edges(g, phi_hl, seed=s_label)
    news = sample_news(m, dist, seed=s_news, max_count=n)
    outcomes = run_batch(g, news, delta, seed=s_batch)
    return outcomes, [item.first_sharer_count for item in news]


def run_sweep(config: SweepConfig, collect_trees: bool = False):
    """Execute every grid point of the sweep.

    Statistics pool all cascades of all iterations of a point. Per-point
    randomness comes from SeedSequence(master_seed, spawn_key=(point, iteration)),
    so any execution order yields identical results.

    Returns the list of SweepResult; with collect_trees=True returns
    (results, trees) where trees maps grid points to every sharing tree.
    """
    config.validate()
    results: list[SweepResult] = []
    all_trees: dict[tuple[float, float, float], list[SharingTree]] = {}
    for point_index, (phi_hl, r, delta) in enumerate(config.grid()):
        sizes: list[int] = []
        heights: list[int] = []
        seed_counts: list[int] = []
        point_trees: list[SharingTree] = []
        for iteration in range(config.iterations):
            ss = np.random.SeedSequence(config.master_seed, spawn_key=(point_index, iteration))
            outcomes, counts = simulate_point(
                config.n, config.m, config.z, phi_hl, r, delta, config.first_sharers, ss
            )
            seed_counts.extend(counts)
            for outcome in outcomes:
                sizes.append(trees.tree_size(outcome.tree))
                heights.append(trees.tree_height(outcome.tree))
            if collect_trees:
                point_trees.extend(o.tree for o in outcomes)

        mu = branching.branching_ratio(config.z, delta, q=1.0 - phi_hl)
        mean_seeds = float(np.mean(seed_counts)) if seed_counts else 0.0
        try:
            size_pred = branching.expected_cascade_size(mean_seeds, mu)
            supercritical = False
        except SupercriticalError:
            size_pred = None
            supercritical = True
            log.warning(
                "grid point (phi_hl=%s, r=%s, delta=%s) is supercritical (mu=%.3f); no size prediction",
                phi_hl, r, delta, mu,
            )
        size_arr = np.asarray(sizes, dtype=float)
        height_arr = np.asarray(heights, dtype=float)
        results.append(
            SweepResult(
                phi_hl=phi_hl,
                r=r,
                delta=delta,
                mean_size=float(size_arr.mean()),
                sd_size=float(size_arr.std(ddof=1)) if size_arr.size > 1 else 0.0,
                mean_height=float(height_arr.mean()),
                sd_height=float(height_arr.std(ddof=1)) if height_arr.size > 1 else 0.0,
                mu_pred=mu,
                size_pred=size_pred,
                iterations=config.iterations,
                supercritical=supercritical,
            )
        )
        if collect_trees:
            all_trees[(phi_hl, r, delta)] = point_trees
    if collect_trees:
        return results, all_trees
    return results


SWEEP_COLUMNS = (
    "phi_hl", "r", "delta", "mean_size", "sd_size", "mean_height", "sd_height",
    "mu_pred", "size_pred", "iterations",
)


def write_sweep_csv(results: list[SweepResult], path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(SWEEP_COLUMNS)
        for res in results:
            writer.writerow([trees.csv_cell(getattr(res, col)) for col in SWEEP_COLUMNS])


def read_sweep_csv(path) -> list[dict]:
    with open(path, newline="", encoding="utf-8") as fh:
        out = []
        for row in csv.DictReader(fh):
            parsed = {}
            for key, value in row.items():
                if value == "":
                    parsed[key] = None
                elif key == "iterations":
                    parsed[key] = int(value)
                else:
                    parsed[key] = float(value)
            out.append(parsed)
        return out


# --- ingestion and analysis -----------------------------------------------------

def ingest_trees(path) -> list[SharingTree]:
    """Load and validate a sharing-tree batch file (JSON array of tree documents)."""
    return load_trees(path)


@dataclass
class GroupAnalysis:
    """Metric rows and distribution curves for one category of trees."""

    category: str
    tree_count: int
    metric_rows: list[dict]
    curves: dict[str, tuple[np.ndarray, np.ndarray]] = field(default_factory=dict)


@dataclass
class AnalysisResult:
    groups: dict[str, GroupAnalysis]
    comparisons: list[dict]


def _binned_mean(x: np.ndarray, y: np.ndarray, edges: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Mean of y per x bin; empty bins are dropped."""
    centers, means = [], []
    for lo, hi in zip(edges[:-1], edges[1:]):
        mask = (x >= lo) & (x < hi) if hi < edges[-1] else (x >= lo) & (x <= hi)
        if np.any(mask):
            centers.append(0.5 * (lo + hi))
            means.append(float(y[mask].mean()))
    return np.asarray(centers), np.asarray(means)


def _group_curves(rows: list[dict], bins: int) -> dict[str, tuple[np.ndarray, np.ndarray]]:
    sizes = np.array([row["size"] for row in rows], dtype=float)
    heights = np.array([row["height"] for row in rows], dtype=float)
    lifetimes = np.array([row["lifetime"] for row in rows if row["lifetime"] is not None], dtype=float)
    homos = np.array([row["mean_homogeneity"] for row in rows if row["mean_homogeneity"] is not None], dtype=float)
    paths = np.array([row["paths"] for row in rows], dtype=float)
    homo_paths = np.array([row["homo_paths"] for row in rows], dtype=float)

    curves: dict[str, tuple[np.ndarray, np.ndarray]] = {
        "size_ccdf": stats.empirical_ccdf(sizes),
        "height_cdf": stats.empirical_cdf(heights),
        "sharing_paths_ccdf": stats.empirical_ccdf(paths),
        "homogeneous_paths_ccdf": stats.empirical_ccdf(homo_paths),
    }
    if lifetimes.size:
        curves["lifetime_pdf"] = stats.empirical_pdf(lifetimes, bins=bins)
    if homos.size:
        curves["mean_homogeneity_pdf"] = stats.empirical_pdf(homos, bins=np.linspace(-1, 1, bins + 1))
    if lifetimes.size:
        defined = np.array([row["size"] for row in rows if row["lifetime"] is not None], dtype=float)
        top = max(defined.max(), 1.0)
        edges = np.unique(np.geomspace(1.0, top + 1.0, bins))
        if edges.size >= 2:
            curves["lifetime_by_size"] = _binned_mean(defined, lifetimes, edges)
    if homos.size:
        defined = np.array([row["size"] for row in rows if row["mean_homogeneity"] is not None], dtype=float)
        curves["size_by_homogeneity"] = _binned_mean(homos, defined, np.linspace(-1, 1, bins + 1))
    return curves


def _compare_groups(groups: dict[str, GroupAnalysis], alpha: float) -> list[dict]:
    comparisons = []
    names = sorted(groups)
    for a, b in itertools.combinations(names, 2):
        rows_a, rows_b = groups[a].metric_rows, groups[b].metric_rows
        for metric in ("size", "lifetime"):
            s1 = [row[metric] for row in rows_a if row[metric] is not None]
            s2 = [row[metric] for row in rows_b if row[metric] is not None]
            if not s1 or not s2:
                log.warning("skipping KS on %s for (%s, %s): empty sample", metric, a, b)
                continue
            ks = stats.ks_two_sample(s1, s2, alpha=alpha)
            comparisons.append({
                "test": f"ks_{metric}", "group_a": a, "group_b": b,
                "statistic": ks.D, "reference": ks.D_alpha, "reject": ks.reject,
            })
        try:
            fit_a = stats.fit_power_law([row["size"] for row in rows_a if row["size"] >= 1])
            fit_b = stats.fit_power_law([row["size"] for row in rows_b if row["size"] >= 1])
            wald = stats.wald_test(fit_a, fit_b, alpha=alpha)
            comparisons.append({
                "test": "wald_size_alpha", "group_a": a, "group_b": b,
                "statistic": wald.W, "reference": wald.p_value, "reject": wald.reject,
            })
        except (DegenerateSampleError, ParameterError) as exc:
            log.warning("skipping Wald on (%s, %s): %s", a, b, exc)
    return comparisons


def analyze(tree_list: list[SharingTree], by_category: bool = True,
            bins: int = 20, alpha: float = 0.05) -> AnalysisResult:
    """Compute metric tables, distribution curves, and cross-category tests.

    Curves per group: size CCDF, height CDF, lifetime PDF, mean-homogeneity
    PDF, path-count CCDFs, and the binned lifetime-by-size and
    size-by-homogeneity relations. Group pairs are compared with KS tests on
    size and lifetime and a Wald test on power-law size exponents.
    """
    if not tree_list:
        raise ParameterError("no trees to analyze")
    groups: dict[str, GroupAnalysis] = {}
    keyfn = (lambda t: t.category) if by_category else (lambda t: "all")
    for tree in tree_list:
        key = keyfn(tree)
        groups.setdefault(key, GroupAnalysis(category=key, tree_count=0, metric_rows=[]))
        groups[key].tree_count += 1
        groups[key].metric_rows.append(trees.metrics_row(tree))
    for group in groups.values():
        group.curves = _group_curves(group.metric_rows, bins)
    comparisons = _compare_groups(groups, alpha) if len(groups) > 1 else []
    return AnalysisResult(groups=groups, comparisons=comparisons)


def write_analysis(result: AnalysisResult, out_dir) -> list[str]:
    """Write metrics.csv, comparisons.csv, and one CSV per (group, curve); returns paths."""
    os.makedirs(out_dir, exist_ok=True)
    written = []

    metrics_path = os.path.join(out_dir, "metrics.csv")
    with open(metrics_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(trees.METRIC_COLUMNS)
        for group in result.groups.values():
            for row in group.metric_rows:
                writer.writerow([trees.csv_cell(row[c]) for c in trees.METRIC_COLUMNS])
    written.append(metrics_path)

    for name, group in sorted(result.groups.items()):
        for curve_name, (xs, ys) in sorted(group.curves.items()):
            path = os.path.join(out_dir, f"{name}__{curve_name}.csv")
            stats.write_curve_csv(xs, ys, path)
            written.append(path)

    if result.comparisons:
        comp_path = os.path.join(out_dir, "comparisons.csv")
        with open(comp_path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.DictWriter(fh, fieldnames=["test", "group_a", "group_b", "statistic", "reference", "reject"])
            writer.writeheader()
            writer.writerows(result.comparisons)
        written.append(comp_path)
    return written
