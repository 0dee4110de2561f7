"""Order-statistic gap profiles and the standardized outlier rate."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .dist_core import Distribution, SampleBatch, StrictlyStable, sample
from .errors import DegenerateError, DomainError, ParameterError
from .rng import check_seed

TRANSFORMS: dict[str, Callable[[np.ndarray], np.ndarray]] = {
    "identity": lambda v: v,
    "log": np.log,
    "arctan": np.arctan,
}


def _values(data) -> np.ndarray:
    if isinstance(data, SampleBatch):
        return np.asarray(data.values, dtype=float)
    return np.asarray(data, dtype=float).ravel()


@dataclass(frozen=True)
class GapProfile:
    transform: str
    sorted_abs: np.ndarray
    gaps: np.ndarray

    @property
    def transformed(self) -> np.ndarray:
        return TRANSFORMS[self.transform](self.sorted_abs)


def order_gaps(data, transform: str = "identity") -> GapProfile:
    """Distances between consecutive ordered ``|x|`` after ``transform``."""
    if transform not in TRANSFORMS:
        raise ParameterError(f"unknown transform {transform!r}; choose from {sorted(TRANSFORMS)}")
    x = _values(data)
    if x.size < 2:
        raise ParameterError("need at least 2 observations for gaps")
    mags = np.abs(x)
    if transform == "log":
        bad = np.flatnonzero(mags <= 0)
        if bad.size:
            raise DomainError(f"log transform: |x| at index {int(bad[0])} is 0")
    sorted_abs = np.sort(mags)
    gaps = np.diff(TRANSFORMS[transform](sorted_abs))
    # a monotone transform can only produce negative gaps through rounding
    gaps = np.maximum(gaps, 0.0)
    return GapProfile(transform, sorted_abs, gaps)


def gap_ratio(profile: GapProfile | np.ndarray, typical: str = "mean") -> float:
    """Largest gap measured in units of the typical gap.

    ``typical="mean"`` (default) divides by the mean gap, which equals the
    transformed range over ``n - 1``.  ``typical="median"`` uses the median
    gap instead; it is far smaller for skewed gap sets, so ratios run
    roughly an order of magnitude higher.
    """
    gaps = profile.gaps if isinstance(profile, GapProfile) else np.asarray(profile, dtype=float)
    if gaps.size < 3:
        raise ParameterError(f"gap ratio needs at least 3 gaps, got {gaps.size}")
    if typical == "mean":
        unit = float(np.mean(gaps))
    elif typical == "median":
        unit = float(np.median(gaps))
    else:
        raise ParameterError(f"typical must be 'mean' or 'median', got {typical!r}")
    if unit <= 0:
        raise DegenerateError(f"{typical} gap is 0 (tied observations); ratio undefined")
    return float(np.max(gaps)) / unit


@dataclass(frozen=True)
class OutlierReport:
    k: float
    mean: float
    sd: float
    rate: float
    flagged: np.ndarray
    degenerate: bool = False

    @property
    def n_flagged(self) -> int:
        return int(self.flagged.size)


def outlier_rate(data, k: float) -> OutlierReport:
    """Fraction of points with ``|x - mean| / sd > k``; ``sd`` uses the 1/n divisor.

    A zero-spread sample reports rate 0 with ``degenerate=True``.
    """
    if not (k > 0 and math.isfinite(k)):
        raise ParameterError(f"k must be positive, got {k!r}")
    x = _values(data)
    if x.size < 2:
        raise ParameterError("outlier rate needs at least 2 observations")
    mean = float(np.mean(x))
    dev = x - mean
    sd = math.sqrt(float(np.mean(dev * dev)))
    if sd == 0.0:
        return OutlierReport(k, mean, 0.0, 0.0, np.array([], dtype=np.intp), degenerate=True)
    flagged = np.flatnonzero(np.abs(dev) > k * sd)
    return OutlierReport(k, mean, sd, flagged.size / x.size, flagged)


# ----------------------------------------------------------------------------
# Convergence experiment for stable domains of attraction
# ----------------------------------------------------------------------------

THEOREM1_HEADER = ("n", "mean_rate", "sd_rate", "trials", "alpha", "k", "seed")


@dataclass(frozen=True)
class RateRow:
    n: int
    mean_rate: float
    sd_rate: float
    trials: int
    alpha: float
    k: float
    seed: int

    def as_tuple(self) -> tuple:
        return (self.n, self.mean_rate, self.sd_rate, self.trials, self.alpha, self.k, self.seed)


def _trial_rates(spec: Distribution, n: int, k: float, seed: int, n_index: int, trials: Sequence[int]) -> list[float]:
    return [outlier_rate(sample(spec, n, seed, stream=(n_index, t)), k).rate for t in trials]


def theorem1_experiment(
    alpha: float,
    n_grid: Sequence[int],
    k: float,
    trials: int,
    seed: int,
    workers: int | None = None,
    spec: Distribution | None = None,
) -> list[RateRow]:
    """Mean and sd of the outlier rate over ``trials`` stable samples, per ``n``.

    Trial ``t`` at grid position ``i`` reads stream ``(i, t)`` of ``seed``, so
    the table does not depend on ``workers``.  ``spec`` overrides the sampler
    (used for the normal contrast run, ``alpha=2``).
    """
    seed = check_seed(seed)
    if spec is None:
        if not (0 < alpha < 2):
            raise ParameterError(f"alpha must lie in (0, 2), got {alpha}")
        spec = StrictlyStable(alpha)
    n_grid = [int(n) for n in n_grid]
    if not n_grid or any(b <= a for a, b in zip(n_grid, n_grid[1:])) or n_grid[0] < 2:
        raise ParameterError(f"n_grid must be strictly increasing with n >= 2, got {n_grid}")
    if trials < 30:
        raise ParameterError(f"trials must be >= 30, got {trials}")
    if not (k > 0):
        raise ParameterError(f"k must be positive, got {k}")

    jobs = [(i, n) for i, n in enumerate(n_grid)]
    rates: dict[int, list[float]] = {}
    if workers and workers > 1:
        shards = np.array_split(np.arange(trials), workers)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = {
                (i, j): pool.submit(_trial_rates, spec, n, k, seed, i, shard.tolist())
                for i, n in jobs
                for j, shard in enumerate(shards)
            }
            for i, _ in jobs:
                rates[i] = [r for j in range(len(shards)) for r in futures[(i, j)].result()]
    else:
        for i, n in jobs:
            rates[i] = _trial_rates(spec, n, k, seed, i, range(trials))

    rows = []
    for i, n in jobs:
        r = np.asarray(rates[i])
        rows.append(RateRow(n, float(r.mean()), float(r.std(ddof=1)), trials, float(alpha), float(k), seed))
    return rows


def normal_outlier_prob(k: float) -> float:
    """``P{|Z| > k}`` for standard normal ``Z``."""
    return math.erfc(k / math.sqrt(2.0))
