"""Generative models whose limits are heavy tailed.

* LePage series  ``sum_k Y_k / Gamma_k**a`` -> strictly stable, index ``1/a``.
* Geometric random product ``Z_p = (prod_{j<=nu_p} X_j)**p`` -> Pareto with
  ``S(x) = x**(-1/gamma)``, ``gamma = E log X``, even for bounded ``X``.
* Geometric random minimum ``min_{j<=nu_p} X_j``; ``min/p`` has a limit
  with a power tail of index 1 when ``X`` has a positive density at 0.

``nu_p`` is geometric on ``{1, 2, ...}`` with mean ``1/p``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .dist_core import Degenerate, Distribution, SampleBatch, _check_n, check_positive_values, dist_from_dict
from .errors import DegenerateError, ModelError, ParameterError
from .rng import check_seed, make_rng

# Bound on how many factor draws are held in memory at once.
_CHUNK_DRAWS = 2_000_000


def _values(data) -> np.ndarray:
    if isinstance(data, SampleBatch):
        return np.asarray(data.values, dtype=float)
    return np.asarray(data, dtype=float).ravel()


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


# ----------------------------------------------------------------------------
# LePage series
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class LePageSpec:
    """``X = sum_{k<=N} Y_k / Gamma_k**a`` with ``Gamma_k`` unit-rate Poisson arrivals.

    When ``n_terms`` is None the truncation length is the smallest ``N`` whose
    remainder bound falls below ``tol`` (see ``remainder_bound``).
    """

    a: float
    signal: Distribution = field(default_factory=lambda: Degenerate(1.0))
    n_terms: int | None = None
    tol: float = 1e-4

    def __post_init__(self):
        if isinstance(self.signal, dict):
            object.__setattr__(self, "signal", dist_from_dict(self.signal))
        if not (self.a > 0.5 and math.isfinite(self.a)):
            raise ParameterError(f"depression exponent a must exceed 1/2 (index 1/a < 2), got {self.a}")
        if self.a <= 1 and not self.signal.symmetric:
            raise ModelError(f"series diverges for a = {self.a} <= 1 unless signals are centred; got {self.signal!r}")
        if self.n_terms is not None and self.n_terms < 1:
            raise ParameterError("n_terms must be >= 1")
        if not self.tol > 0:
            raise ParameterError("tol must be positive")

    @property
    def alpha(self) -> float:
        return 1.0 / self.a

    @property
    def truncation(self) -> int:
        return self.n_terms if self.n_terms is not None else truncation_length(self.a, self.signal, self.tol)


def _signal_moment(signal: Distribution, a: float) -> float:
    if isinstance(signal, Degenerate):
        return abs(signal.c) if a > 1 else signal.c**2
    if a > 1:
        return math.sqrt(signal.variance) if math.isfinite(signal.variance) else math.inf
    return signal.variance


def remainder_bound(a: float, n_terms: int, signal: Distribution) -> float:
    """Bound on the part of the series beyond ``n_terms``.

    Uses ``Gamma_k >= k/2`` (which fails with exponentially small probability):
    for ``a > 1`` the mean-magnitude bound ``m * sum_{k>N} (k/2)**-a``;
    for ``a <= 1`` the variance bound ``Var(Y) * sum_{k>N} (k/2)**(-2a)``.
    Sums are bounded by their integrals ``int_N^inf``.  ``m`` is ``|c|`` for a
    constant signal and the signal sd otherwise.
    """
    scale = _signal_moment(signal, a)
    if scale == 0:
        return 0.0
    s = a if a > 1 else 2 * a
    return scale * 2.0**s * n_terms ** (1.0 - s) / (s - 1.0)


def truncation_length(a: float, signal: Distribution, tol: float) -> int:
    scale = _signal_moment(signal, a)
    if scale == 0:
        return 1
    if not math.isfinite(scale):
        raise ModelError("signal law needs a finite second moment for the truncation rule")
    s = a if a > 1 else 2 * a
    n = math.ceil((scale * 2.0**s / ((s - 1.0) * tol)) ** (1.0 / (s - 1.0)))
    return max(1, n)


def lepage_sample(spec: LePageSpec, n: int, seed: int, stream=()) -> SampleBatch:
    """``n`` draws of the truncated LePage series."""
    n = _check_n(n)
    rng = make_rng(check_seed(seed), stream)
    n_terms = spec.truncation
    out = np.empty(n)
    rows = max(1, _CHUNK_DRAWS // n_terms)
    for start in range(0, n, rows):
        m = min(rows, n - start)
        arrivals = np.cumsum(rng.standard_exponential((m, n_terms)), axis=1)
        signals = spec.signal.draw(rng, m * n_terms).reshape(m, n_terms)
        out[start : start + m] = np.sum(signals * arrivals ** (-spec.a), axis=1)
    return SampleBatch(_frozen(out), seed, spec, tuple(stream), aux={"n_terms": np.array(n_terms)})


# ----------------------------------------------------------------------------
# Tail-index estimators
# ----------------------------------------------------------------------------


def default_hill_m(n: int) -> int:
    return math.ceil(n ** (2.0 / 3.0))


def hill_estimator(data, m: int | None = None) -> float:
    """Hill estimate of the tail index from the ``m`` largest ``|x|``.

    ``alpha = m / sum_{i<=m} log(|x|_(n-i+1) / |x|_(n-m))``; ``m`` defaults
    to ``ceil(n**(2/3))``.
    """
    mags = np.sort(np.abs(_values(data)))
    n = mags.size
    if m is None:
        m = default_hill_m(n)
    if not (2 <= m < n):
        raise ParameterError(f"need 2 <= m < n, got m={m}, n={n}")
    top = mags[n - m :]
    threshold = mags[n - m - 1]
    if threshold <= 0:
        raise DegenerateError("the (m+1)-th largest |x| is 0; Hill estimator undefined")
    total = float(np.sum(np.log(top / threshold)))
    if total <= 0:
        raise DegenerateError("all top order statistics tie with the threshold")
    return m / total


def gamma_hat(data) -> float:
    """Sample mean of ``log x``: estimates ``gamma = E log X``."""
    x = _values(data)
    if x.size == 0:
        raise ParameterError("empty sample")
    check_positive_values(x)
    return float(np.mean(np.log(x)))


# ----------------------------------------------------------------------------
# Geometric random products and minima
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class CapitalSpec:
    """Factor law of ``X_j > 0`` and the per-step stopping probability ``p``."""

    factor: Distribution
    p: float

    def __post_init__(self):
        if isinstance(self.factor, dict):
            object.__setattr__(self, "factor", dist_from_dict(self.factor))
        if not (0 < self.p <= 1):
            raise ParameterError(f"p must lie in (0, 1], got {self.p}")

    @property
    def mean_steps(self) -> float:
        return 1.0 / self.p


def geometric_blocks(spec: CapitalSpec, n: int, rng: np.random.Generator) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """Yield ``(nu, factors)`` chunks covering ``n`` draws.

    ``factors`` holds ``sum(nu)`` factor draws laid out draw by draw.
    """
    nu = rng.geometric(spec.p, n)
    ends = np.cumsum(nu)
    start = 0
    while start < n:
        base = ends[start - 1] if start else 0
        stop = int(np.searchsorted(ends, base + _CHUNK_DRAWS, side="right"))
        stop = min(max(stop, start + 1), n)
        block_nu = nu[start:stop]
        yield block_nu, np.asarray(spec.factor.draw(rng, int(block_nu.sum())), dtype=float)
        start = stop


def _offsets(nu: np.ndarray) -> np.ndarray:
    return np.concatenate(([0], np.cumsum(nu)[:-1]))


def capital_sample(spec: CapitalSpec, n: int, seed: int, stream=()) -> SampleBatch:
    """``n`` draws of ``Z_p = exp(p * sum_{j<=nu} log X_j)``."""
    n = _check_n(n)
    rng = make_rng(check_seed(seed), stream)
    out = np.empty(n)
    nus = np.empty(n, dtype=np.int64)
    pos = 0
    for nu, factors in geometric_blocks(spec, n, rng):
        if np.any(~(factors > 0)):
            raise ModelError(f"factor law produced a nonpositive draw; X_j must be > 0 ({spec.factor!r})")
        log_sums = np.add.reduceat(np.log(factors), _offsets(nu))
        out[pos : pos + nu.size] = np.exp(spec.p * log_sums)
        nus[pos : pos + nu.size] = nu
        pos += nu.size
    return SampleBatch(_frozen(out), seed, spec, tuple(stream), aux={"nu": _frozen(nus)})


def random_min_sample(spec: CapitalSpec, n: int, seed: int, stream=(), method: str = "auto") -> SampleBatch:
    """``n`` draws of ``min(X_1, ..., X_nu)``; ``aux['scaled']`` is ``min / p``.

    ``method="direct"`` draws every factor.  ``method="order"`` draws ``nu``
    and then the minimum of ``nu`` uniforms, ``-expm1(log(U)/nu)``, mapped
    through the factor quantile function; ``"auto"`` picks it when available.
    ``aux['first']`` (direct method only) holds ``X_1`` of each draw.
    """
    n = _check_n(n)
    if method == "auto":
        method = "order" if spec.factor.has_ppf else "direct"
    if method not in ("direct", "order"):
        raise ParameterError(f"method must be 'auto', 'direct' or 'order', got {method!r}")
    rng = make_rng(check_seed(seed), stream)
    aux: dict[str, np.ndarray] = {}
    if method == "order":
        nu = rng.geometric(spec.p, n)
        u = 1.0 - rng.random(n)  # (0, 1]
        q = -np.expm1(np.log(u) / nu)
        out = np.asarray(spec.factor.ppf(q), dtype=float)
    else:
        out = np.empty(n)
        first = np.empty(n)
        nus = np.empty(n, dtype=np.int64)
        pos = 0
        for block_nu, factors in geometric_blocks(spec, n, rng):
            offs = _offsets(block_nu)
            out[pos : pos + block_nu.size] = np.minimum.reduceat(factors, offs)
            first[pos : pos + block_nu.size] = factors[offs]
            nus[pos : pos + block_nu.size] = block_nu
            pos += block_nu.size
        nu = nus
        aux["first"] = _frozen(first)
    aux["nu"] = _frozen(np.asarray(nu))
    aux["scaled"] = _frozen(out / spec.p)
    return SampleBatch(_frozen(out), seed, spec, tuple(stream), aux=aux)


def uniform_min_survival(t, p: float):
    """Exact ``P{min > t}`` for uniform(0, 1) factors: ``p(1-t)/(p + t - p t)``."""
    t = np.clip(np.asarray(t, dtype=float), 0.0, 1.0)
    return p * (1.0 - t) / (p + t - p * t)


def min_limit_survival(s):
    """Survival ``1/(1+s)`` of the ``p -> 0`` limit of ``min/p`` for uniform(0,1) factors."""
    return 1.0 / (1.0 + np.maximum(np.asarray(s, dtype=float), 0.0))


def pareto_limit_survival(x, gamma: float):
    """``S(x) = x**(-1/gamma)`` on ``x >= 1``: limit law of the geometric product."""
    x = np.asarray(x, dtype=float)
    return np.where(x < 1.0, 1.0, np.maximum(x, 1.0) ** (-1.0 / gamma))


def survival_comparison(values, model_survival, points: int = 200) -> np.ndarray:
    """Rows ``(x, S_empirical(x), S_model(x))`` on a geometric grid over the sample range."""
    x = np.sort(np.asarray(values, dtype=float))
    lo, hi = x[0], x[-1]
    if lo > 0:
        grid = np.geomspace(lo, hi, points)
    else:
        grid = np.linspace(lo, hi, points)
    emp = 1.0 - np.searchsorted(x, grid, side="right") / x.size
    return np.column_stack([grid, emp, model_survival(grid)])
