"""Tail bounds from average-hazard monotonicity.

Classical IFRA: ``-log S(x) / x`` nondecreasing gives ``S(x) <= S(t)**(x/t)``
for ``x >= t``.  The phi-generalisation replaces ``-log`` by ``phi^{-1}`` and
runs the clock on a log scale; with ``phi(u) = exp(-u)`` the bound becomes
``S(u) <= u**(log S(v) / log v)``, i.e. a power-law certificate.
"""

from __future__ import annotations

import csv
import math
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np

from .dist_core import Distribution
from .errors import DegenerateError, DomainError, ParameterError

MONOTONE_TOL = 1e-9


# ----------------------------------------------------------------------------
# Survival curves and cure fractions
# ----------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SurvivalCurve:
    grid: np.ndarray
    values: np.ndarray
    cure: float | None = None

    def __post_init__(self):
        grid = np.array(self.grid, dtype=float).ravel()
        values = np.array(self.values, dtype=float).ravel()
        if grid.shape != values.shape or grid.size == 0:
            raise ParameterError("grid and values must be non-empty and of equal length")
        if np.any(grid <= 0) or np.any(np.diff(grid) <= 0):
            raise ParameterError("grid must be strictly increasing and positive")
        if np.any((values < 0) | (values > 1)) or np.any(np.diff(values) > 0):
            raise ParameterError("survival values must lie in [0, 1] and be nonincreasing")
        if self.cure is not None and not (0 <= self.cure < 1):
            raise ParameterError(f"cure mass must lie in [0, 1), got {self.cure}")
        grid.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_function(cls, survival: Callable | Distribution, grid) -> "SurvivalCurve":
        fn = survival.survival if isinstance(survival, Distribution) else survival
        grid = np.asarray(grid, dtype=float)
        return cls(grid, np.asarray(fn(grid), dtype=float))

    @classmethod
    def from_csv(cls, path: str | Path) -> "SurvivalCurve":
        """Two-column ``t,S`` file; a non-numeric first row is taken as a header."""
        rows = []
        with open(path, newline="", encoding="utf-8") as fh:
            for lineno, row in enumerate(csv.reader(fh), start=1):
                if not row or all(not c.strip() for c in row):
                    continue
                if len(row) != 2:
                    raise ParameterError(f"{path}:{lineno}: expected 2 columns (t, S), got {len(row)}")
                try:
                    rows.append((float(row[0]), float(row[1])))
                except ValueError:
                    if rows:
                        raise ParameterError(f"{path}:{lineno}: non-numeric row {row!r}") from None
        if not rows:
            raise ParameterError(f"{path}: no data rows")
        arr = np.array(rows)
        return cls(arr[:, 0], arr[:, 1])


def cure_split(curve: SurvivalCurve, a: float) -> SurvivalCurve:
    """Conditional survival ``S_o = (S - a)/(1 - a)`` given eventual failure."""
    if not (0 <= a < 1):
        raise ParameterError(f"cure probability must lie in [0, 1), got {a}")
    if a >= curve.values.min():
        raise ParameterError(f"cure probability {a} must be strictly below every S(t_i) (min {curve.values.min()})")
    values = (curve.values - a) / (1.0 - a)
    return SurvivalCurve(curve.grid, np.clip(values, 0.0, 1.0), cure=a)


def recompose(curve: SurvivalCurve, a: float) -> np.ndarray:
    return a + (1.0 - a) * curve.values


# ----------------------------------------------------------------------------
# Classical IFRA
# ----------------------------------------------------------------------------


def _truncate_at_zero(grid: np.ndarray, values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    zeros = np.flatnonzero(values <= 0)
    if zeros.size:
        i = int(zeros[0])
        warnings.warn(f"survival hits 0 at t={grid[i]!r}; checking only the {i} points before it", stacklevel=3)
        return grid[:i], values[:i]
    return grid, values


def _nondecreasing(h: np.ndarray, tol: float) -> bool:
    scale = np.maximum(1.0, np.abs(h[:-1]))
    return bool(np.all(np.diff(h) >= -tol * scale))


def average_hazard(curve: SurvivalCurve) -> tuple[np.ndarray, np.ndarray]:
    """``(t, -log S(t) / t)`` up to the first zero of ``S``."""
    grid, values = _truncate_at_zero(curve.grid, curve.values)
    return grid, -np.log(values) / grid


def ifra_check(curve: SurvivalCurve | Distribution, grid=None, tol: float = MONOTONE_TOL) -> bool:
    """True iff ``-log S(t)/t`` is nondecreasing on the grid (within ``tol``)."""
    if isinstance(curve, Distribution):
        if not curve.positive:
            raise ParameterError("IFRA membership is defined for laws on the positive half-line")
        grid = np.linspace(0.05, 20.0, 400) if grid is None else grid
        curve = SurvivalCurve.from_function(curve.upper_survival, grid)
    _, h = average_hazard(curve)
    if h.size < 2:
        return True
    return _nondecreasing(h, tol)


def ifra_tail_bound(s_t: float, t: float, x: float) -> float:
    """Upper bound ``S(t)**(x/t)`` on ``S(x)`` for IFRA laws, ``x >= t``."""
    if not (0 < s_t < 1):
        raise ParameterError(f"S(t) must lie in (0, 1), got {s_t}")
    if not t > 0:
        raise ParameterError(f"t must be positive, got {t}")
    if np.any(np.asarray(x) < t):
        raise ParameterError(f"bound needs x >= t = {t}")
    out = np.asarray(s_t, dtype=float) ** (np.asarray(x, dtype=float) / t)
    return float(out) if out.ndim == 0 else out


# ----------------------------------------------------------------------------
# phi-hazard rates
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class PhiFunction:
    """Strictly decreasing ``phi`` on ``[0, inf)`` with ``phi(0) = 1``, ``phi'(0) = -1``."""

    name: str
    phi: Callable[[np.ndarray], np.ndarray]
    inverse: Callable[[np.ndarray], np.ndarray]
    derivative: Callable[[np.ndarray], np.ndarray]

    def __call__(self, u):
        return self.phi(u)

    def validate(self, tol_inverse: float = 1e-10, tol_slope: float = 1e-6) -> None:
        if abs(float(self.phi(0.0)) - 1.0) > 1e-12:
            raise ParameterError(f"{self.name}: phi(0) must be 1")
        # phi lives on [0, inf): forward difference, error ~ h |phi''(0)| / 2
        h = 1e-7
        slope = (float(self.phi(h)) - float(self.phi(0.0))) / h
        if abs(slope + 1.0) > tol_slope:
            raise ParameterError(f"{self.name}: numeric phi'(0) = {slope}, must be -1")
        if abs(float(self.derivative(0.0)) + 1.0) > tol_slope:
            raise ParameterError(f"{self.name}: phi'(0) must be -1")
        s = np.linspace(1e-6, 1.0, 1001)
        if np.max(np.abs(self.phi(self.inverse(s)) - s)) > tol_inverse:
            raise ParameterError(f"{self.name}: phi(phi^-1(s)) != s")


EXP_PHI = PhiFunction(
    "exp",
    phi=lambda u: np.exp(-np.asarray(u, dtype=float)),
    inverse=lambda s: -np.log(np.asarray(s, dtype=float)),
    derivative=lambda u: -np.exp(-np.asarray(u, dtype=float)),
)

# 1/(1+u): a slower-decaying alternative.
RECIPROCAL_PHI = PhiFunction(
    "reciprocal",
    phi=lambda u: 1.0 / (1.0 + np.asarray(u, dtype=float)),
    inverse=lambda s: 1.0 / np.asarray(s, dtype=float) - 1.0,
    derivative=lambda u: -1.0 / (1.0 + np.asarray(u, dtype=float)) ** 2,
)

PHI_FUNCTIONS = {EXP_PHI.name: EXP_PHI, RECIPROCAL_PHI.name: RECIPROCAL_PHI}


@dataclass(frozen=True)
class PhiHazard:
    t: np.ndarray  # log of the grid abscissae
    r: np.ndarray

    @property
    def rho(self) -> np.ndarray:
        """``rho`` at the original abscissae ``e**t``."""
        return self.r * np.exp(-self.t)


def phi_hazard_rate(curve: SurvivalCurve, phi: PhiFunction = EXP_PHI) -> PhiHazard:
    """``r(t) = rho(e^t) e^t`` with ``rho = d/dx phi^{-1}(S(x))``.

    By the chain rule ``r(t) = d/dt phi^{-1}(S(e^t))``, so the derivative is
    taken by central differences in ``t = log x`` on the curve's own points
    (one-sided at the ends).  The grid spacing is the caller's responsibility.
    """
    grid, values = curve.grid, curve.values
    if grid.size < 3:
        raise ParameterError("need at least 3 grid points to difference")
    if np.any(values <= 0):
        raise DomainError("phi^-1 is undefined at S = 0; trim the curve first")
    t = np.log(grid)
    g = np.asarray(phi.inverse(values), dtype=float)
    r = np.gradient(g, t, edge_order=1)
    return PhiHazard(t, r)


def _phi_monotone(curve: SurvivalCurve, phi: PhiFunction, tol: float, sign: int) -> bool:
    r = phi_hazard_rate(curve, phi).r
    # only the interior carries second-order accurate differences
    inner = sign * r[1:-1] if r.size > 3 else sign * r
    return _nondecreasing(inner, tol)


def phi_ifra_check(curve: SurvivalCurve, phi: PhiFunction = EXP_PHI, tol: float = MONOTONE_TOL) -> bool:
    """True iff ``r(t)`` is nondecreasing on the grid."""
    return _phi_monotone(curve, phi, tol, +1)


def phi_dfra_check(curve: SurvivalCurve, phi: PhiFunction = EXP_PHI, tol: float = MONOTONE_TOL) -> bool:
    return _phi_monotone(curve, phi, tol, -1)


def _check_uv(s_v: float, v: float, u) -> np.ndarray:
    if not (0 < s_v < 1):
        raise ParameterError(f"S(v) must lie in (0, 1), got {s_v}")
    if not v > 1:
        raise DomainError(f"v must exceed 1 (log v > 0), got {v}")
    u = np.asarray(u, dtype=float)
    if np.any(u <= v):
        raise ParameterError(f"bound needs u > v = {v}")
    return u


def phi_ifra_bound(s_v: float, v: float, u, phi: PhiFunction = EXP_PHI):
    """``phi((log u / log v) * phi^{-1}(S(v)))``: upper bound on ``S(u)`` for phi-IFRA laws."""
    u = _check_uv(s_v, v, u)
    out = np.asarray(phi.phi(np.log(u) / math.log(v) * float(phi.inverse(s_v))), dtype=float)
    return float(out) if out.ndim == 0 else out


def dfra_bound(s_v: float, v: float, u, phi: PhiFunction = EXP_PHI):
    """Same expression as ``phi_ifra_bound``; a lower bound on ``S(u)`` for phi-DFRA laws."""
    return phi_ifra_bound(s_v, v, u, phi)


def tail_exponent_bound(s_v: float, v: float, warn_below: float = 1e-6) -> float:
    """Decay exponent ``beta = -log S(v) / log v``.

    Under phi=exp IFRA, ``S(u) <= u**-beta`` for every ``u > v``.  Fed with an
    empirical ``S(v)`` this is a plug-in certificate without a confidence level.
    """
    if not v > 1:
        raise DomainError(f"v must exceed 1, got {v}")
    if not (0 < s_v < 1):
        raise DegenerateError(f"S(v) = {s_v} carries no tail information")
    beta = -math.log(s_v) / math.log(v)
    if beta < warn_below:
        warnings.warn(f"S(v) = {s_v} is within rounding of 1; beta = {beta:.3g} is uninformative", stacklevel=2)
    return beta


def bound_table(s_v: float, v: float, u_grid, phi: PhiFunction = EXP_PHI, truth: Callable | None = None) -> np.ndarray:
    """Rows ``(u, bound, truth)``; ``truth`` is NaN when no survival function is given."""
    u = np.asarray(u_grid, dtype=float)
    bound = np.atleast_1d(phi_ifra_bound(s_v, v, u, phi))
    exact = np.asarray(truth(u), dtype=float) if truth is not None else np.full(u.shape, np.nan)
    return np.column_stack([u, bound, exact])
