"""Seeded simulation harness: deviation sweeps over ratio and sample size.

Per trial, a sample is drawn from the configured data model, every
requested method is evaluated on the same sample, and the absolute
deviation from the true mean is recorded. Trials use generators derived
from (seed, trial_index), so runs are byte-reproducible regardless of
worker count or execution order.
"""

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .bounds import BOUNDED_METHODS, deviation_bound
from .estimators import ALL_METHODS, EstimatorConfig, MomentInfo, estimate

__all__ = [
    "NORMAL_SIGMA",
    "LOGNORMAL_SIGMA",
    "DEFAULT_RATIO_GRID",
    "DEFAULT_N_GRID",
    "DUMP_HEADER",
    "SWEEP_HEADER",
    "BOUNDS_HEADER",
    "DataModel",
    "TrueMoments",
    "ExperimentConfig",
    "DeviationRecord",
    "generate_sample",
    "run_experiment",
    "sweep_ratio",
    "sweep_n",
    "dump_deviations",
    "bounds_table",
    "format_value",
    "write_csv",
]

NORMAL_SIGMA = {"low": 0.5, "mid": 5.0, "high": 50.0}
LOGNORMAL_SIGMA = {"low": 1.1, "mid": 1.35, "high": 1.75}

# Ratio grid -2.0 .. 2.0 in steps of 0.1; n grid 10 .. 100 in steps of 10.
DEFAULT_RATIO_GRID = tuple((i - 20) / 10.0 for i in range(41))
DEFAULT_N_GRID = tuple(range(10, 101, 10))

DUMP_HEADER = ("experiment", "method", "family", "variance_level", "ratio", "n", "trial", "deviation", "error")
SWEEP_HEADER = ("experiment", "method", "family", "variance_level", "ratio", "n", "mean_deviation", "trials")
BOUNDS_HEADER = ("method", "family", "variance_level", "ratio", "n", "delta", "epsilon", "kl", "scale")


@dataclass(frozen=True)
class TrueMoments:
    """Exact population quantities of a data model."""

    mean: float
    sd: float
    variance: float
    second_moment: float


@dataclass(frozen=True)
class DataModel:
    """Data family, variance level, and mean-to-SD ratio."""

    family: str  # "normal" | "lognormal"
    variance_level: str  # "low" | "mid" | "high"
    ratio: float

    def __post_init__(self):
        if self.family not in ("normal", "lognormal"):
            raise ValueError(f"family must be 'normal' or 'lognormal', got {self.family!r}")
        if self.variance_level not in ("low", "mid", "high"):
            raise ValueError(f"variance_level must be low/mid/high, got {self.variance_level!r}")
        if not -2.0 <= self.ratio <= 2.0:
            raise ValueError(f"ratio must lie in [-2, 2], got {self.ratio}")

    def population(self) -> TrueMoments:
        if self.family == "normal":
            sd = NORMAL_SIGMA[self.variance_level]
        else:
            sigma_log = LOGNORMAL_SIGMA[self.variance_level]
            # Log-location fixed at 0; variance of exp(Normal(0, sigma_log^2)).
            sd = math.sqrt((math.exp(sigma_log**2) - 1.0) * math.exp(sigma_log**2))
        mean = self.ratio * sd
        return TrueMoments(mean=mean, sd=sd, variance=sd * sd, second_moment=sd * sd + mean * mean)


@dataclass(frozen=True)
class ExperimentConfig:
    """One experimental cell plus trial/bookkeeping settings."""

    model: DataModel
    n: int
    trials: int = 10_000
    delta: float = 0.01
    seed: int = 0
    methods: tuple = ALL_METHODS
    name: str = "experiment"

    def __post_init__(self):
        object.__setattr__(self, "methods", tuple(self.methods))
        if self.n < 1:
            raise ValueError(f"n must be positive, got {self.n}")
        if self.trials < 1:
            raise ValueError(f"trials must be positive, got {self.trials}")
        if not 0.0 < self.delta < 0.5:
            raise ValueError(f"delta must lie in (0, 1/2), got {self.delta}")
        for m in self.methods:
            if m not in ALL_METHODS:
                raise ValueError(f"unknown method {m!r}; expected one of {ALL_METHODS}")


@dataclass(frozen=True)
class DeviationRecord:
    experiment: str
    method: str
    family: str
    variance_level: str
    ratio: float
    n: int
    trial: int
    deviation: float | None
    error: str = ""


def generate_sample(model: DataModel, n: int, rng: np.random.Generator):
    """Draw one sample of size n; returns (sample, exact population moments)."""
    pop = model.population()
    if model.family == "normal":
        xs = rng.normal(pop.mean, NORMAL_SIGMA[model.variance_level], n)
    else:
        sigma_log = LOGNORMAL_SIGMA[model.variance_level]
        raw = rng.lognormal(0.0, sigma_log, n)
        # Center by the pre-shift true mean exp(sigma_log^2 / 2), then place
        # the distribution at the requested mean.
        xs = raw - math.exp(0.5 * sigma_log**2) + pop.mean
    return xs, pop


def _trial_rng(seed: int, trial: int) -> np.random.Generator:
    # Counter-based derivation: (seed, trial) feeds one SeedSequence, so any
    # execution order or worker layout yields the identical stream.
    return np.random.default_rng(np.random.SeedSequence(entropy=(seed, trial)))


def _run_trials(config: ExperimentConfig, start: int, stop: int) -> list[DeviationRecord]:
    pop = config.model.population()
    moments = MomentInfo(
        second_moment=pop.second_moment, variance=pop.variance, n=config.n, delta=config.delta
    )
    configs = {m: EstimatorConfig(method=m) for m in config.methods}
    records = []
    for trial in range(start, stop):
        rng = _trial_rng(config.seed, trial)
        xs, _ = generate_sample(config.model, config.n, rng)
        for method in config.methods:
            try:
                value = estimate(configs[method], xs, moments)
                deviation, error = abs(value - pop.mean), ""
            except Exception as exc:  # a failing method must not abort the sweep
                deviation, error = None, f"{type(exc).__name__}: {exc}"
            records.append(
                DeviationRecord(
                    experiment=config.name,
                    method=method,
                    family=config.model.family,
                    variance_level=config.model.variance_level,
                    ratio=config.model.ratio,
                    n=config.n,
                    trial=trial,
                    deviation=deviation,
                    error=error,
                )
            )
    return records


def run_experiment(config: ExperimentConfig, workers: int = 1) -> list[DeviationRecord]:
    """All trial records for one cell, in trial-index order."""
    if workers <= 1 or config.trials == 1:
        return _run_trials(config, 0, config.trials)
    chunk = -(-config.trials // workers)
    spans = [(t, min(t + chunk, config.trials)) for t in range(0, config.trials, chunk)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(_run_trials, [config] * len(spans), [s[0] for s in spans], [s[1] for s in spans])
        records = []
        for part in parts:
            records.extend(part)
    return records


def _aggregate(records: list[DeviationRecord], methods) -> dict:
    sums = {m: 0.0 for m in methods}
    counts = {m: 0 for m in methods}
    for rec in records:
        if rec.error == "" and rec.deviation is not None:
            sums[rec.method] += rec.deviation
            counts[rec.method] += 1
    return {m: (sums[m] / counts[m] if counts[m] else None, counts[m]) for m in methods}


def sweep_ratio(config: ExperimentConfig, ratio_grid=DEFAULT_RATIO_GRID, workers: int = 1):
    """Mean deviation per (ratio, method) cell over the grid."""
    if not ratio_grid:
        raise ValueError("ratio grid must be nonempty")
    rows = []
    for ratio in ratio_grid:
        cell = replace(config, model=replace(config.model, ratio=ratio))
        agg = _aggregate(run_experiment(cell, workers=workers), config.methods)
        for method in config.methods:
            mean_dev, count = agg[method]
            rows.append(
                (config.name, method, cell.model.family, cell.model.variance_level, ratio, cell.n, mean_dev, count)
            )
    return rows


def sweep_n(config: ExperimentConfig, n_grid=DEFAULT_N_GRID, workers: int = 1):
    """Mean deviation per (n, method) cell over the grid."""
    if not n_grid:
        raise ValueError("n grid must be nonempty")
    rows = []
    for n in n_grid:
        cell = replace(config, n=n)
        agg = _aggregate(run_experiment(cell, workers=workers), config.methods)
        for method in config.methods:
            mean_dev, count = agg[method]
            rows.append(
                (config.name, method, cell.model.family, cell.model.variance_level, cell.model.ratio, n, mean_dev, count)
            )
    return rows


def dump_deviations(config: ExperimentConfig, workers: int = 1):
    """Raw per-trial records as CSV rows."""
    return [
        (r.experiment, r.method, r.family, r.variance_level, r.ratio, r.n, r.trial, r.deviation, r.error)
        for r in run_experiment(config, workers=workers)
    ]


def bounds_table(config: ExperimentConfig):
    """Per-method deviation half-widths for the configured cell."""
    pop = config.model.population()
    moments = MomentInfo(
        second_moment=pop.second_moment, variance=pop.variance, n=config.n, delta=config.delta
    )
    rows = []
    for method in config.methods:
        if method not in BOUNDED_METHODS:
            raise ValueError(f"method {method!r} has no deviation bound; choose from {BOUNDED_METHODS}")
        report = deviation_bound(EstimatorConfig(method=method), moments)
        rows.append(
            (
                method,
                config.model.family,
                config.model.variance_level,
                config.model.ratio,
                config.n,
                config.delta,
                report.epsilon,
                report.kl_value,
                report.scale_used,
            )
        )
    return rows


def format_value(value) -> str:
    """CSV cell formatting: floats carry 17 significant digits (lossless)."""
    if value is None:
        return ""
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def write_csv(path, header, rows) -> None:
    """Write rows with deterministic formatting and newline convention."""
    import csv

    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_value(v) for v in row])
