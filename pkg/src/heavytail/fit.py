"""Pareto fit of positive data via the mean log-excess."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import stats

from .dist_core import check_positive_values
from .errors import DegenerateError, InsufficientDataError, ParameterError

MIN_FIT_POINTS = 10


@dataclass(frozen=True)
class FitReport:
    n: int
    x_min: float
    gamma_hat: float
    ks: float
    data: np.ndarray  # admissible values, sorted

    @property
    def tail_exponent(self) -> float:
        return 1.0 / self.gamma_hat

    def model_survival(self, x):
        x = np.asarray(x, dtype=float)
        return np.where(x < self.x_min, 1.0, (np.maximum(x, self.x_min) / self.x_min) ** (-self.tail_exponent))

    def linear_table(self) -> np.ndarray:
        """``(x, F_empirical, F_model)`` at the order statistics."""
        x = self.data
        emp = np.arange(1, x.size + 1) / x.size
        return np.column_stack([x, emp, 1.0 - self.model_survival(x)])

    def loglog_table(self) -> np.ndarray:
        """``(log x, log S_empirical, log S_model)`` with ``S_emp(x_(i)) = (n - i + 1)/n``."""
        x = self.data
        emp = (x.size - np.arange(x.size)) / x.size
        return np.column_stack([np.log(x), np.log(emp), np.log(self.model_survival(x))])


def fit_pareto(data, x_min: float | None = None) -> FitReport:
    """Fit ``S(x) = (x/x_min)**(-1/gamma)`` with ``gamma = mean log(x/x_min)``.

    Values below ``x_min`` are dropped; ``x_min`` defaults to the sample minimum.
    """
    x = np.asarray(data, dtype=float).ravel()
    check_positive_values(x)
    if x_min is None:
        x_min = float(x.min()) if x.size else math.nan
    elif not x_min > 0:
        raise ParameterError(f"x_min must be positive, got {x_min}")
    kept = np.sort(x[x >= x_min])
    if kept.size < MIN_FIT_POINTS:
        raise InsufficientDataError(f"need >= {MIN_FIT_POINTS} values >= x_min, got {kept.size}")
    gamma = float(np.mean(np.log(kept / x_min)))
    if gamma <= 0:
        raise DegenerateError("all admissible values equal x_min; gamma_hat = 0")
    alpha = 1.0 / gamma
    ks = stats.kstest(kept, lambda v: 1.0 - (np.maximum(v, x_min) / x_min) ** (-alpha)).statistic
    return FitReport(int(kept.size), float(x_min), gamma, float(ks), kept)
