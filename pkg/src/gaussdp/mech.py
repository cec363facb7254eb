"""Executable Gaussian mechanisms and the desk-scale experiments.

Seeded noise sampling, the synthetic mean-estimation and categorical
histogram experiments, and a Monte-Carlo sampler of the privacy-loss
random variable (the empirical oracle for the analytic profiles).

Experiment trials draw their noise from substreams keyed by (seed, trial
index), so a report is a pure function of its arguments, and two mechanisms
run with the same seed see the same underlying standard-normal draws (common
random numbers; only the scale sigma differs).
"""

from __future__ import annotations

import csv
import itertools
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .calib import Mechanism, NoiseScale, PrivacyBudget, Sensitivity, calibrate
from .rng import generator, standard_normal

# substream indices under the experiment seed: 0 is the dataset, 1+t is trial t
_DATASET_STREAM = 0
_TRIAL_STREAM_BASE = 1


@dataclass(eq=False)
class QueryAnswer:
    """A true query output (vector of reals)."""

    values: np.ndarray

    def __post_init__(self) -> None:
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.ndim != 1 or self.values.size < 1:
            raise ValueError("QueryAnswer.values must be a non-empty 1-d vector")

    @property
    def dim(self) -> int:
        return self.values.size


@dataclass(eq=False)
class NoisySample:
    """A noisy query output plus the (seed, sigma) that produced it."""

    values: np.ndarray
    seed: int
    sigma: float


@dataclass(frozen=True)
class ExperimentReport:
    """Per-mechanism experiment outcome: metric is the mean l2 error (mean
    experiment) or MSE (histogram experiment), with its standard error."""

    mechanism: Mechanism
    trials: int
    metric: float
    metric_stderr: float


def sample_noise(dim: int, sigma: float, seed: int) -> NoisySample:
    """dim independent N(0, sigma^2) draws; sigma = 0 gives the zero vector.

    Identical (dim, sigma, seed) yield bit-identical values.
    """
    dim = int(dim)
    if dim < 1:
        raise ValueError(f"dim must be >= 1, got {dim}")
    sigma = float(sigma)
    if not (math.isfinite(sigma) and sigma >= 0.0):
        raise ValueError(f"sigma must be >= 0, got {sigma!r}")
    if sigma == 0.0:
        values = np.zeros(dim)
    else:
        values = sigma * standard_normal(dim, generator(seed))
    return NoisySample(values=values, seed=int(seed), sigma=sigma)


def randomize(answer: QueryAnswer, sigma: NoiseScale, seed: int) -> NoisySample:
    """The Gaussian mechanism: answer.values + sample_noise(dim, sigma, seed)."""
    noise = sample_noise(answer.dim, sigma.sigma, seed)
    return NoisySample(values=answer.values + noise.values, seed=int(seed), sigma=sigma.sigma)


# ---------------------------------------------------------------------------
# privacy-loss sampling (Monte-Carlo oracle)


def privacy_loss_tails(
    distance: float,
    sigma: float,
    epsilon: float,
    n_samples: int,
    seed: int,
) -> tuple[float, float]:
    """Empirical (Pr[L > eps], Pr[L < -eps]) for the privacy loss
    L ~ N(S^2/(2 sigma^2), S^2/sigma^2) at output distance S."""
    distance = float(distance)
    if distance < 0.0:
        raise ValueError(f"distance must be >= 0, got {distance!r}")
    if sigma <= 0.0:
        raise ValueError(f"sigma must be positive, got {sigma!r}")
    n_samples = int(n_samples)
    if n_samples < 1:
        raise ValueError(f"n_samples must be >= 1, got {n_samples}")
    if distance == 0.0:
        return 0.0, 0.0
    mean = distance * distance / (2.0 * sigma * sigma)
    sd = distance / sigma
    loss = mean + sd * standard_normal(n_samples, generator(seed))
    above = float(np.count_nonzero(loss > epsilon)) / n_samples
    below = float(np.count_nonzero(loss < -epsilon)) / n_samples
    return above, below


def privacy_loss_sample(
    distance: float,
    sigma: float,
    epsilon: float,
    n_samples: int,
    seed: int,
) -> float:
    """Empirical Pr[|L| > eps]: the pDP violation frequency at distance S."""
    above, below = privacy_loss_tails(distance, sigma, epsilon, n_samples, seed)
    return above + below


# ---------------------------------------------------------------------------
# experiments


def _trial_noise(dim: int, sigma: float, seed: int, trial: int) -> np.ndarray:
    # Trials share the standard-normal substream across mechanism kinds
    # (common random numbers); only the scale differs.
    return sigma * standard_normal(dim, generator(seed, _TRIAL_STREAM_BASE + trial))


def _report(kind: Mechanism, errors: np.ndarray) -> ExperimentReport:
    trials = errors.size
    stderr = float(np.std(errors, ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
    return ExperimentReport(
        mechanism=kind,
        trials=trials,
        metric=float(np.mean(errors)),
        metric_stderr=stderr,
    )


def mean_experiment(
    n: int,
    d: int,
    budget: PrivacyBudget,
    kind: Mechanism,
    trials: int,
    seed: int,
    sensitivity: float | None = None,
) -> ExperimentReport:
    """Private mean estimation on a synthetic dataset; reports the l2 error.

    The dataset is n points x_i = x_0 + xi_i with standard-Gaussian center
    coordinates and xi_i uniform on [-1/2, 1/2]^d, fixed per seed; noise is
    resampled each trial.  Bounded (replace-one) neighboring is assumed, with
    default sensitivity sqrt(d)/n (points lie in an l-infinity ball of radius
    1), overridable via ``sensitivity``.
    """
    n, d, trials = int(n), int(d), int(trials)
    if n < 1 or d < 1 or trials < 1:
        raise ValueError("n, d, and trials must all be >= 1")
    kind = Mechanism(kind)
    delta_q = math.sqrt(d) / n if sensitivity is None else float(sensitivity)
    sigma = calibrate(kind, budget, Sensitivity(delta_q)).sigma

    # dataset fixed per seed; noise resampled per trial
    data_gen = generator(seed, _DATASET_STREAM)
    center = standard_normal(d, data_gen)
    points = center + (data_gen.random((n, d)) - 0.5)
    answer = QueryAnswer(points.mean(axis=0))

    errors = np.empty(trials)
    for t in range(trials):
        noisy = answer.values + _trial_noise(d, sigma, seed, t)
        errors[t] = float(np.linalg.norm(noisy - answer.values))
    return _report(kind, errors)


def histogram_experiment(
    rows: Sequence[Sequence[str]],
    budget: PrivacyBudget,
    kind: Mechanism,
    trials: int,
    seed: int,
) -> ExperimentReport:
    """Private histogram over the cross-product of observed categorical
    values; reports the MSE over cells.

    Unbounded (add/remove) neighboring, so the count query has sensitivity 1.
    Cells that occur in no record still exist (and receive noise): the domain
    is the full cross-product of the per-column observed value sets.
    """
    trials = int(trials)
    if trials < 1:
        raise ValueError("trials must be >= 1")
    kind = Mechanism(kind)
    counts = histogram_counts(rows)
    sigma = calibrate(kind, budget, Sensitivity(1.0)).sigma
    errors = np.empty(trials)
    for t in range(trials):
        noisy = counts + _trial_noise(counts.size, sigma, seed, t)
        errors[t] = float(np.mean((noisy - counts) ** 2))
    return _report(kind, errors)


_MAX_HISTOGRAM_CELLS = 10_000_000


def histogram_counts(rows: Sequence[Sequence[str]]) -> np.ndarray:
    """Count vector over the cross-product of per-column observed values,
    in lexicographic cell order."""
    rows = [tuple(str(v) for v in row) for row in rows]
    if not rows:
        raise ValueError("histogram requires at least one record")
    width = len(rows[0])
    if width == 0 or any(len(row) != width for row in rows):
        raise ValueError("records must all have the same positive number of columns")
    domains = [sorted({row[j] for row in rows}) for j in range(width)]
    n_cells = math.prod(len(d) for d in domains)
    if n_cells > _MAX_HISTOGRAM_CELLS:
        raise ValueError(
            f"histogram domain has {n_cells} cells (cross-product of observed "
            f"values); limit is {_MAX_HISTOGRAM_CELLS}"
        )
    index = {cell: i for i, cell in enumerate(itertools.product(*domains))}
    counts = np.zeros(len(index))
    for row in rows:
        counts[index[row]] += 1.0
    return counts


# ---------------------------------------------------------------------------
# categorical record streams


def read_categorical_csv(path: str | Path) -> tuple[list[str], list[tuple[str, ...]]]:
    """Read a UTF-8, comma-delimited, header-row CSV of categorical strings.

    Returns (header, rows); raises ValueError on empty or ragged input.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: empty CSV (missing header row)") from None
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if len(row) != len(header):
                raise ValueError(
                    f"{path}:{lineno}: expected {len(header)} fields, got {len(row)}"
                )
            rows.append(tuple(row))
    if not rows:
        raise ValueError(f"{path}: no records after the header row")
    return header, rows


# Census-like categorical columns for the synthetic histogram input.
_SYNTH_COLUMNS: tuple[tuple[str, tuple[str, ...]], ...] = (
    ("workclass", ("private", "government", "self-employed")),
    ("education", ("hs", "college", "graduate", "none")),
    ("marital-status", ("married", "single")),
    ("sex", ("female", "male")),
)


def synthetic_census_rows(
    n_rows: int, seed: int
) -> tuple[list[str], list[tuple[str, ...]]]:
    """Generate n_rows census-like categorical records (seeded, skewed
    per-column value frequencies)."""
    n_rows = int(n_rows)
    if n_rows < 1:
        raise ValueError(f"n_rows must be >= 1, got {n_rows}")
    gen = generator(seed)
    header = [name for name, _ in _SYNTH_COLUMNS]
    columns = []
    for k, (_, values) in enumerate(_SYNTH_COLUMNS):
        # geometric-ish weights make some cells common and some rare
        weights = np.array([2.0 ** (-j) for j in range(len(values))])
        weights /= weights.sum()
        draws = gen.choice(len(values), size=n_rows, p=weights)
        columns.append([values[i] for i in draws])
    rows = [tuple(col[i] for col in columns) for i in range(n_rows)]
    return header, rows


def write_categorical_csv(
    path: str | Path, header: Iterable[str], rows: Iterable[Sequence[str]]
) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(list(header))
        writer.writerows(rows)
