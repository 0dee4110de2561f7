"""Mixing a symmetric law with an atom at zero to create more outliers.

``F_p = (1 - p) F + p H`` with ``H`` the unit step at 0.  The tail keeps its
shape but shrinks by ``1 - p`` while the variance drops to ``(1 - p) sigma^2``,
so a ``k``-sd threshold moves inward faster than the tail shrinks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import ClassVar, NamedTuple

import numpy as np

from .diagnostics import outlier_rate
from .dist_core import Distribution, PowerTail, dist_from_dict, power_tail_parameters, register_family, sample
from .errors import ParameterError, UnsupportedSpecError


@register_family
@dataclass(frozen=True)
class PutTailDown(Distribution):
    """``Y_p``: zero (or uniform on ``[-eps, eps]``) with prob. ``p``, else a base draw."""

    base: Distribution
    p: float
    eps: float = 0.0
    family: ClassVar[str] = "put_tail_down"
    symmetric: ClassVar[bool] = True

    def __post_init__(self):
        if isinstance(self.base, dict):
            object.__setattr__(self, "base", dist_from_dict(self.base))
        if not self.base.symmetric:
            raise ParameterError(f"base law must be symmetric, got {self.base!r}")
        if not math.isfinite(self.base.variance):
            raise ParameterError(f"base law must have finite variance, got {self.base!r}")
        if not (0 <= self.p < 1):
            raise ParameterError(f"p must lie in [0, 1), got {self.p}")
        if not (self.eps >= 0 and math.isfinite(self.eps)):
            raise ParameterError(f"smoothing half-width must be >= 0, got {self.eps}")

    @property
    def exact_survival(self) -> bool:  # type: ignore[override]
        return self.base.exact_survival

    @property
    def sigma(self) -> float:
        """Base standard deviation."""
        return math.sqrt(self.base.variance)

    @property
    def variance(self) -> float:
        # the uniform smoothing atom contributes p * eps^2 / 3
        return (1.0 - self.p) * self.base.variance + self.p * self.eps**2 / 3.0

    def draw(self, rng, n):
        atom = rng.random(n) < self.p
        values = self.base.draw(rng, n)
        if self.eps > 0:
            fill = rng.uniform(-self.eps, self.eps, n)
        else:
            fill = np.zeros(n)
        return np.where(atom, fill, values)

    def upper_survival(self, x):
        x = np.asarray(x, dtype=float)
        base = (1.0 - self.p) * np.asarray(self.base.upper_survival(x), dtype=float)
        if self.eps > 0:
            atom = np.clip((self.eps - x) / (2 * self.eps), 0.0, 1.0)
        else:
            atom = (x < 0).astype(float)
        out = base + self.p * atom
        return float(out) if out.ndim == 0 else out

    def log_upper_survival(self, x):
        x = np.asarray(x, dtype=float)
        if self.eps == 0 and np.all(x >= 0):
            return math.log1p(-self.p) + self.base.log_upper_survival(x)
        return super().log_upper_survival(x)

    def _mass_nonzero(self) -> float:
        return 1.0 - self.p if self.eps == 0 else 1.0

    def power_tail(self) -> PowerTail | None:
        inner = power_tail_parameters(self.base)
        if inner is None:
            return None
        return PowerTail(inner.alpha, (1.0 - self.p) * inner.lam, inner.approximate)


def sample_ptd(spec: PutTailDown, n: int, seed: int, stream=()):
    return sample(spec, n, seed, stream)


def _require_analytic(spec: PutTailDown) -> None:
    if not spec.base.exact_survival:
        raise UnsupportedSpecError(f"base {spec.base.family} has no analytic survival function")
    # probe: raises UnsupportedSpecError for laws without any survival
    spec.base.upper_survival(0.0)


def outlier_prob_exact(spec: PutTailDown, k: float) -> float:
    """``P{|Y_p| > k sigma_p} = 2 (1 - p) Fbar(k sqrt(1 - p) sigma)``."""
    if spec.eps != 0:
        raise UnsupportedSpecError("exact outlier probability is only defined for the unsmoothed mixture")
    _require_analytic(spec)
    if not k > 0:
        raise ParameterError(f"k must be positive, got {k}")
    threshold = k * math.sqrt(1.0 - spec.p) * spec.sigma
    return 2.0 * (1.0 - spec.p) * float(spec.base.upper_survival(threshold))


class Condition(NamedTuple):
    holds: bool
    lhs: float
    rhs: float
    log_lhs: float
    log_rhs: float

    @property
    def ratio(self) -> float:
        return math.exp(self.log_lhs - self.log_rhs)


def check_condition_4a(spec: PutTailDown, k: float) -> Condition:
    """Test ``(1 - p) Fbar(k sqrt(1 - p) sigma) > Fbar(k sigma)``.

    Both sides are compared in log space so the verdict survives underflow
    at large ``k``.
    """
    _require_analytic(spec)
    if not k > 0:
        raise ParameterError(f"k must be positive, got {k}")
    sigma = spec.sigma
    base = spec.base
    log_lhs = math.log1p(-spec.p) + float(base.log_upper_survival(k * math.sqrt(1.0 - spec.p) * sigma))
    log_rhs = float(base.log_upper_survival(k * sigma))
    lhs = (1.0 - spec.p) * float(base.upper_survival(k * math.sqrt(1.0 - spec.p) * sigma))
    rhs = float(base.upper_survival(k * sigma))
    return Condition(bool(log_lhs > log_rhs), lhs, rhs, log_lhs, log_rhs)


def asymptotic_power_ratio(p: float, alpha: float) -> float:
    """Large-``k`` limit of lhs/rhs for a power tail of index ``alpha``."""
    return (1.0 - p) ** (1.0 - alpha / 2.0)


@dataclass(frozen=True)
class RateComparison:
    rate_base: float
    rate_ptd: float
    base_rates: np.ndarray
    ptd_rates: np.ndarray

    @property
    def frac_ptd_higher(self) -> float:
        return float(np.mean(self.ptd_rates > self.base_rates))


def more_outliers_mc(spec: PutTailDown, k: float, n: int, trials: int, seed: int) -> RateComparison:
    """Monte Carlo outlier rates (sample mean and sd) of the base law and of ``Y_p``."""
    if trials < 1:
        raise ParameterError("trials must be >= 1")
    base_rates = np.empty(trials)
    ptd_rates = np.empty(trials)
    for t in range(trials):
        base_rates[t] = outlier_rate(sample(spec.base, n, seed, stream=(0, t)), k).rate
        ptd_rates[t] = outlier_rate(sample(spec, n, seed, stream=(1, t)), k).rate
    return RateComparison(float(base_rates.mean()), float(ptd_rates.mean()), base_rates, ptd_rates)
