"""Distribution catalogue.

Each law is a frozen dataclass that knows how to draw from a numpy
``Generator`` and, where a closed form exists, how to evaluate

* ``survival(x)``       -- the tail ``T(x) = P{|X| > x}`` for ``x >= 0``,
* ``upper_survival(x)`` -- the one-sided ``1 - F(x) = P{X > x}``.

For laws on the positive half-line the two coincide.  Symmetric laws have
``survival(x) == 2 * upper_survival(x)`` for ``x > 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields
from typing import Any, ClassVar, NamedTuple, Sequence

import numpy as np
from scipy import integrate, special, stats

from .errors import DomainError, ParameterError, UnsupportedSpecError
from .rng import check_seed, make_rng


def _as_array(x) -> np.ndarray:
    return np.asarray(x, dtype=float)


def _scalar_or_array(arr: np.ndarray, like):
    return float(arr) if np.ndim(like) == 0 else arr


class Distribution:
    """Common interface of the catalogue.  Not instantiated directly."""

    family: ClassVar[str] = ""
    symmetric: ClassVar[bool] = False
    positive: ClassVar[bool] = False
    # False when survival() is a numeric approximation or unavailable.
    exact_survival: ClassVar[bool] = True

    def draw(self, rng: np.random.Generator, n: int) -> np.ndarray:
        raise NotImplementedError

    def upper_survival(self, x):
        raise UnsupportedSpecError(f"{self.family} has no analytic survival function")

    def log_upper_survival(self, x):
        with np.errstate(divide="ignore"):
            return np.log(self.upper_survival(x))

    def survival(self, x):
        x = _as_array(x)
        if np.any(x < 0):
            raise ParameterError("tail T(x) is defined for x >= 0")
        if self.positive:
            out = self.upper_survival(x)
        elif self.symmetric:
            out = np.where(x > 0, 2.0 * _as_array(self.upper_survival(x)), self._mass_nonzero())
        else:
            raise UnsupportedSpecError(f"{self.family}: tail needs a symmetric or positive law")
        return _scalar_or_array(np.asarray(out, dtype=float), x)

    def _mass_nonzero(self) -> float:
        # P{|X| > 0}; only atoms at zero make this differ from 1.
        return 1.0

    @property
    def variance(self) -> float:
        return math.inf

    def ppf(self, q):
        raise UnsupportedSpecError(f"{self.family} has no quantile function")

    @property
    def has_ppf(self) -> bool:
        return type(self).ppf is not Distribution.ppf

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"family": self.family}
        for f in fields(self):  # type: ignore[arg-type]
            value = getattr(self, f.name)
            if isinstance(value, Distribution):
                value = value.to_dict()
            elif isinstance(value, np.ndarray):
                value = value.tolist()
            out[f.name] = value
        return out


def _positive(name: str, value: float) -> None:
    if not (isinstance(value, (int, float, np.floating)) and math.isfinite(value) and value > 0):
        raise ParameterError(f"{name} must be a positive finite number, got {value!r}")


@dataclass(frozen=True)
class Degenerate(Distribution):
    c: float = 0.0
    family: ClassVar[str] = "degenerate"

    def __post_init__(self):
        if not math.isfinite(self.c):
            raise ParameterError("degenerate location must be finite")

    @property
    def symmetric(self) -> bool:  # type: ignore[override]
        return self.c == 0.0

    @property
    def positive(self) -> bool:  # type: ignore[override]
        return self.c > 0.0

    def draw(self, rng, n):
        return np.full(n, float(self.c))

    def upper_survival(self, x):
        x = _as_array(x)
        return _scalar_or_array((self.c > x).astype(float), x)

    def survival(self, x):
        x = _as_array(x)
        if np.any(x < 0):
            raise ParameterError("tail T(x) is defined for x >= 0")
        return _scalar_or_array((abs(self.c) > x).astype(float), x)

    @property
    def variance(self) -> float:
        return 0.0

    def ppf(self, q):
        return np.full_like(_as_array(q), float(self.c))


@dataclass(frozen=True)
class Exponential(Distribution):
    rate: float = 1.0
    family: ClassVar[str] = "exponential"
    positive: ClassVar[bool] = True

    def __post_init__(self):
        _positive("rate", self.rate)

    def draw(self, rng, n):
        return rng.standard_exponential(n) / self.rate

    def upper_survival(self, x):
        x = _as_array(x)
        return _scalar_or_array(np.exp(-self.rate * np.maximum(x, 0.0)), x)

    def log_upper_survival(self, x):
        return -self.rate * np.maximum(_as_array(x), 0.0)

    @property
    def variance(self) -> float:
        return 1.0 / self.rate**2

    def ppf(self, q):
        return -np.log1p(-_as_array(q)) / self.rate


@dataclass(frozen=True)
class Laplace(Distribution):
    """Symmetric exponential tails: density ``(rate/2) exp(-rate |x|)``."""

    rate: float = 1.0
    family: ClassVar[str] = "laplace"
    symmetric: ClassVar[bool] = True

    def __post_init__(self):
        _positive("rate", self.rate)

    def draw(self, rng, n):
        return rng.laplace(0.0, 1.0 / self.rate, n)

    def upper_survival(self, x):
        x = _as_array(x)
        out = np.where(x >= 0, 0.5 * np.exp(-self.rate * np.abs(x)), 1.0 - 0.5 * np.exp(-self.rate * np.abs(x)))
        return _scalar_or_array(out, x)

    def log_upper_survival(self, x):
        x = _as_array(x)
        return np.where(x >= 0, math.log(0.5) - self.rate * np.abs(x), np.log1p(-0.5 * np.exp(-self.rate * np.abs(x))))

    @property
    def variance(self) -> float:
        return 2.0 / self.rate**2

    def ppf(self, q):
        q = _as_array(q)
        return np.where(q < 0.5, np.log(2 * q), -np.log(2 * (1 - q))) / self.rate


@dataclass(frozen=True)
class Normal(Distribution):
    """Centred normal with standard deviation ``sd``."""

    sd: float = 1.0
    family: ClassVar[str] = "normal"
    symmetric: ClassVar[bool] = True

    def __post_init__(self):
        _positive("sd", self.sd)

    def draw(self, rng, n):
        return self.sd * rng.standard_normal(n)

    def upper_survival(self, x):
        x = _as_array(x)
        return _scalar_or_array(0.5 * special.erfc(x / (self.sd * math.sqrt(2.0))), x)

    def log_upper_survival(self, x):
        return stats.norm.logsf(_as_array(x), scale=self.sd)

    @property
    def variance(self) -> float:
        return self.sd**2

    def ppf(self, q):
        return stats.norm.ppf(_as_array(q), scale=self.sd)


@dataclass(frozen=True)
class ParetoI(Distribution):
    """Pareto type I on ``[1, inf)``: ``S(x) = x**-alpha``."""

    alpha: float = 2.0
    family: ClassVar[str] = "pareto"
    positive: ClassVar[bool] = True

    def __post_init__(self):
        _positive("alpha", self.alpha)

    def draw(self, rng, n):
        # 1 - U lies in (0, 1], so the power never divides by zero.
        return (1.0 - rng.random(n)) ** (-1.0 / self.alpha)

    def upper_survival(self, x):
        x = _as_array(x)
        with np.errstate(divide="ignore"):
            out = np.where(x < 1.0, 1.0, np.maximum(x, 1.0) ** (-self.alpha))
        return _scalar_or_array(out, x)

    def log_upper_survival(self, x):
        x = _as_array(x)
        return np.where(x < 1.0, 0.0, -self.alpha * np.log(np.maximum(x, 1.0)))

    @property
    def variance(self) -> float:
        a = self.alpha
        return a / ((a - 1.0) ** 2 * (a - 2.0)) if a > 2 else math.inf

    def ppf(self, q):
        return (1.0 - _as_array(q)) ** (-1.0 / self.alpha)


@dataclass(frozen=True)
class SymmetricPareto(Distribution):
    """ParetoI magnitude with an independent fair random sign."""

    alpha: float = 3.0
    family: ClassVar[str] = "symmetric_pareto"
    symmetric: ClassVar[bool] = True

    def __post_init__(self):
        _positive("alpha", self.alpha)

    def draw(self, rng, n):
        mag = (1.0 - rng.random(n)) ** (-1.0 / self.alpha)
        sign = np.where(rng.random(n) < 0.5, -1.0, 1.0)
        return sign * mag

    def upper_survival(self, x):
        x = _as_array(x)
        ax = np.maximum(np.abs(x), 1.0)
        tail = 0.5 * ax ** (-self.alpha)
        out = np.where(x >= 1.0, tail, np.where(x <= -1.0, 1.0 - tail, 0.5))
        return _scalar_or_array(out, x)

    def log_upper_survival(self, x):
        x = _as_array(x)
        return np.where(
            x >= 1.0,
            math.log(0.5) - self.alpha * np.log(np.maximum(x, 1.0)),
            np.log(self.upper_survival(x)),
        )

    @property
    def variance(self) -> float:
        a = self.alpha
        return a / (a - 2.0) if a > 2 else math.inf


@dataclass(frozen=True)
class Rademacher(Distribution):
    """Random sign: ``+scale`` or ``-scale`` with probability 1/2 each."""

    scale: float = 1.0
    family: ClassVar[str] = "rademacher"
    symmetric: ClassVar[bool] = True

    def __post_init__(self):
        _positive("scale", self.scale)

    def draw(self, rng, n):
        return np.where(rng.random(n) < 0.5, -self.scale, self.scale)

    def upper_survival(self, x):
        x = _as_array(x)
        out = np.where(x >= self.scale, 0.0, np.where(x < -self.scale, 1.0, 0.5))
        return _scalar_or_array(out, x)

    @property
    def variance(self) -> float:
        return self.scale**2


@dataclass(frozen=True)
class Uniform(Distribution):
    lo: float = 0.0
    hi: float = 1.0
    family: ClassVar[str] = "uniform"

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi) and self.lo < self.hi):
            raise ParameterError(f"uniform needs finite lo < hi, got ({self.lo}, {self.hi})")

    @property
    def symmetric(self) -> bool:  # type: ignore[override]
        return self.lo == -self.hi

    @property
    def positive(self) -> bool:  # type: ignore[override]
        return self.lo >= 0.0

    def draw(self, rng, n):
        return rng.uniform(self.lo, self.hi, n)

    def _cdf(self, x):
        return np.clip((_as_array(x) - self.lo) / (self.hi - self.lo), 0.0, 1.0)

    def upper_survival(self, x):
        x = _as_array(x)
        return _scalar_or_array(1.0 - self._cdf(x), x)

    def survival(self, x):
        x = _as_array(x)
        if np.any(x < 0):
            raise ParameterError("tail T(x) is defined for x >= 0")
        out = (1.0 - self._cdf(x)) + self._cdf(-x)
        return _scalar_or_array(np.where(x == 0, 1.0, out), x)

    @property
    def variance(self) -> float:
        return (self.hi - self.lo) ** 2 / 12.0

    def ppf(self, q):
        return self.lo + (self.hi - self.lo) * _as_array(q)


@dataclass(frozen=True)
class Weibull(Distribution):
    """``S(x) = exp(-(x/scale)**shape)`` on ``[0, inf)``."""

    shape: float = 1.0
    scale: float = 1.0
    family: ClassVar[str] = "weibull"
    positive: ClassVar[bool] = True

    def __post_init__(self):
        _positive("shape", self.shape)
        _positive("scale", self.scale)

    def draw(self, rng, n):
        return self.scale * rng.weibull(self.shape, n)

    def upper_survival(self, x):
        x = _as_array(x)
        return _scalar_or_array(np.exp(-((np.maximum(x, 0.0) / self.scale) ** self.shape)), x)

    def log_upper_survival(self, x):
        return -((np.maximum(_as_array(x), 0.0) / self.scale) ** self.shape)

    @property
    def variance(self) -> float:
        k = self.shape
        return self.scale**2 * (math.gamma(1 + 2 / k) - math.gamma(1 + 1 / k) ** 2)

    def ppf(self, q):
        return self.scale * (-np.log1p(-_as_array(q))) ** (1.0 / self.shape)


def _stable_tail_numeric(alpha: float, x: float) -> float:
    """P{|X| > x} for characteristic function exp(-|t|**alpha), by Fourier inversion."""
    if x == 0:
        return 1.0
    head, _ = integrate.quad(lambda t: x * np.sinc(x * t / math.pi) * math.exp(-(t**alpha)), 0.0, 1.0, limit=200)
    tail, _ = integrate.quad(lambda t: math.exp(-(t**alpha)) / t, 1.0, math.inf, weight="sin", wvar=x)
    return float(min(1.0, max(0.0, 1.0 - (2.0 / math.pi) * (head + tail))))


@dataclass(frozen=True)
class StrictlyStable(Distribution):
    """Symmetric strictly stable law with characteristic function ``exp(-|t|**alpha)``.

    ``alpha = 2`` is the normal law with variance 2; ``alpha = 1`` is standard Cauchy.
    Draws use the Chambers-Mallows-Stuck construction.
    """

    alpha: float = 1.5
    family: ClassVar[str] = "stable"
    symmetric: ClassVar[bool] = True

    def __post_init__(self):
        if not (0 < self.alpha <= 2):
            raise ParameterError(f"stable index must lie in (0, 2], got {self.alpha}")

    @property
    def exact_survival(self) -> bool:  # type: ignore[override]
        return self.alpha in (1.0, 2.0)

    def draw(self, rng, n):
        a = self.alpha
        v = rng.uniform(-math.pi / 2, math.pi / 2, n)
        if a == 1.0:
            return np.tan(v)
        w = rng.standard_exponential(n)
        return np.sin(a * v) / np.cos(v) ** (1.0 / a) * (np.cos((1.0 - a) * v) / w) ** ((1.0 - a) / a)

    def upper_survival(self, x):
        x = _as_array(x)
        if self.alpha == 2.0:
            out = 0.5 * special.erfc(x / 2.0)
        elif self.alpha == 1.0:
            out = 0.5 - np.arctan(x) / math.pi
        else:
            flat = np.ravel(x)
            half = np.array([0.5 * _stable_tail_numeric(self.alpha, abs(v)) for v in flat]).reshape(x.shape)
            out = np.where(x >= 0, half, 1.0 - half)
        return _scalar_or_array(np.asarray(out, dtype=float), x)

    @property
    def variance(self) -> float:
        return 2.0 if self.alpha == 2.0 else math.inf

    @property
    def tail_constant(self) -> float:
        """``lim T(x) x**alpha`` for ``alpha < 2``."""
        a = self.alpha
        return 2.0 * math.gamma(a) * math.sin(math.pi * a / 2.0) / math.pi


@dataclass(frozen=True)
class Empirical(Distribution):
    """Resampling law of an observed sample; survival is the empirical step function."""

    data: np.ndarray = field(default_factory=lambda: np.zeros(1))
    family: ClassVar[str] = "empirical"

    def __post_init__(self):
        arr = np.sort(np.asarray(self.data, dtype=float).ravel())
        if arr.size == 0 or not np.all(np.isfinite(arr)):
            raise ParameterError("empirical law needs a non-empty finite sample")
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    def __eq__(self, other):
        return isinstance(other, Empirical) and np.array_equal(self.data, other.data)

    def __hash__(self):
        return hash(self.data.tobytes())

    @property
    def positive(self) -> bool:  # type: ignore[override]
        return bool(self.data[0] > 0)

    def draw(self, rng, n):
        return self.data[rng.integers(0, self.data.size, n)]

    def upper_survival(self, x):
        x = _as_array(x)
        out = 1.0 - np.searchsorted(self.data, x, side="right") / self.data.size
        return _scalar_or_array(out, x)

    def survival(self, x):
        x = _as_array(x)
        if np.any(x < 0):
            raise ParameterError("tail T(x) is defined for x >= 0")
        mags = np.sort(np.abs(self.data))
        out = 1.0 - np.searchsorted(mags, x, side="right") / mags.size
        return _scalar_or_array(out, x)

    @property
    def variance(self) -> float:
        return float(np.var(self.data))


# ----------------------------------------------------------------------------
# Module-level operations
# ----------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SampleBatch:
    """A seeded batch of draws.  ``aux`` holds model-specific companions."""

    values: np.ndarray
    seed: int
    spec: Any
    stream: tuple[int, ...] = ()
    aux: dict[str, np.ndarray] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return int(self.values.size)

    def __len__(self) -> int:
        return self.n


def _check_n(n: int, minimum: int = 1) -> int:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < minimum:
        raise ParameterError(f"sample size must be an integer >= {minimum}, got {n!r}")
    return int(n)


def sample(spec: Distribution, n: int, seed: int, stream: Sequence[int] = ()) -> SampleBatch:
    """Draw ``n`` values from ``spec``; deterministic in ``(spec, n, seed, stream)``."""
    n = _check_n(n)
    seed = check_seed(seed)
    rng = make_rng(seed, stream)
    values = np.asarray(spec.draw(rng, n), dtype=float)
    values.setflags(write=False)
    return SampleBatch(values=values, seed=seed, spec=spec, stream=tuple(stream))


def survival(spec: Distribution, x):
    """Tail ``T(x) = P{|X| > x}``."""
    return spec.survival(x)


class PowerTail(NamedTuple):
    alpha: float
    lam: float
    approximate: bool = False


def power_tail_parameters(spec: Distribution) -> PowerTail | None:
    """``(alpha, lam)`` with ``T(x) x**alpha -> lam > 0``, or ``None`` if no such limit."""
    if isinstance(spec, (ParetoI, SymmetricPareto)):
        return PowerTail(float(spec.alpha), 1.0)
    if isinstance(spec, StrictlyStable):
        if spec.alpha == 2.0:
            return None
        return PowerTail(float(spec.alpha), spec.tail_constant)
    inner = getattr(spec, "power_tail", None)
    if callable(inner):
        return inner()
    return None


def ks_critical_two_sample(n: int, m: int | None = None, coef: float = 1.63) -> float:
    """Asymptotic two-sample KS critical value; ``coef=1.63`` is the 1% level."""
    m = n if m is None else m
    return coef * math.sqrt((n + m) / (n * m))


def polya_selfcheck(n: int, seed: int, spec: Distribution | None = None) -> float:
    """Two-sample KS statistic between ``X`` and ``(X1 + X2)/sqrt(2)``.

    For the normal law (the default) the rotation leaves the distribution
    unchanged, so the statistic should stay below the KS critical value.
    """
    n = _check_n(n, 100)
    spec = Normal(1.0) if spec is None else spec
    x = sample(spec, n, seed, stream=(0,)).values
    x1 = sample(spec, n, seed, stream=(1,)).values
    x2 = sample(spec, n, seed, stream=(2,)).values
    rotated = (x1 + x2) / math.sqrt(2.0)
    return float(stats.ks_2samp(x, rotated).statistic)


# ----------------------------------------------------------------------------
# Config round-trip
# ----------------------------------------------------------------------------

_FAMILIES: dict[str, type] = {
    cls.family: cls
    for cls in (Degenerate, Exponential, Laplace, Normal, ParetoI, SymmetricPareto, Rademacher, Uniform, Weibull, StrictlyStable, Empirical)
}


def register_family(cls: type) -> type:
    _FAMILIES[cls.family] = cls
    return cls


def dist_from_dict(obj: dict[str, Any]) -> Distribution:
    """Inverse of ``Distribution.to_dict``."""
    if not isinstance(obj, dict) or "family" not in obj:
        raise ParameterError(f"distribution must be an object with a 'family' key, got {obj!r}")
    family = obj["family"]
    try:
        cls = _FAMILIES[family]
    except KeyError:
        raise ParameterError(f"unknown distribution family {family!r}; known: {sorted(_FAMILIES)}") from None
    names = {f.name for f in fields(cls)}
    kwargs = {}
    for key, value in obj.items():
        if key == "family":
            continue
        if key not in names:
            raise ParameterError(f"{family}: unexpected parameter {key!r}")
        kwargs[key] = dist_from_dict(value) if isinstance(value, dict) else value
    try:
        return cls(**kwargs)
    except TypeError as exc:
        raise ParameterError(f"{family}: {exc}") from exc


def check_positive_values(values: np.ndarray, what: str = "value") -> None:
    bad = np.flatnonzero(~(values > 0))
    if bad.size:
        i = int(bad[0])
        raise DomainError(f"{what} at index {i} is {values[i]!r}; must be > 0")
