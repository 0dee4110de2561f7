"""Command-line experiment driver.

    heavytail [--config PATH] [--seed U64] [--out DIR] [--format {csv,svg}] SUBCOMMAND [options]

A run is described by one flat JSON object (``ExperimentConfig``).  Values
given on the command line override the config file; the seed falls back to
``$HEAVYTAIL_SEED`` and then to a fixed default.  Each run writes its CSV
tables plus the resolved ``config.json`` into the output directory, and
re-running that config reproduces the files byte for byte.

Exit codes: 0 success, 1 invalid configuration (nothing written), 2 model or
runtime failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

import jsonschema
import numpy as np

from . import diagnostics, limit_models, put_tail_down, tail_bounds
from .dist_core import Distribution, Exponential, StrictlyStable, Uniform, dist_from_dict, sample
from .errors import HeavyTailError, ParameterError
from .fit import fit_pareto
from .io import Plot, Series, csv_text, ingest_csv, svg_text
from .rng import DEFAULT_SEED, check_seed, derive_seed, seed_from_env

# ----------------------------------------------------------------------------
# Configuration
# ----------------------------------------------------------------------------

_DIST = {"type": "object", "required": ["family"]}
_POS_INT = {"type": "integer", "minimum": 1}
_NUM = {"type": "number"}
_GLOBAL = {
    "subcommand": {"type": "string"},
    "seed": {"type": "integer", "minimum": 0, "maximum": 2**64 - 1},
    "out": {"type": "string"},
    "format": {"enum": ["csv", "svg"]},
}

# name -> (properties, required, defaults)
SCHEMAS: dict[str, tuple[dict, list[str], dict]] = {
    "simulate": ({"dist": _DIST, "n": _POS_INT}, ["dist", "n"], {}),
    "gaps": (
        {"dist": _DIST, "n": {"type": "integer", "minimum": 4}, "transform": {"enum": list(diagnostics.TRANSFORMS)}, "typical": {"enum": ["mean", "median"]}},
        ["n"],
        {"dist": {"family": "pareto", "alpha": 2.0}, "transform": "identity", "typical": "mean"},
    ),
    "outlier-rate": (
        {"dist": _DIST, "n": {"type": "integer", "minimum": 2}, "k": _NUM},
        ["dist", "n"],
        {"k": 3.0},
    ),
    "theorem1": (
        {
            "alpha": _NUM,
            "n_grid": {"type": "array", "items": {"type": "integer", "minimum": 2}, "minItems": 1},
            "k": _NUM,
            "trials": {"type": "integer", "minimum": 30},
            "sampler": {"enum": ["stable", "normal"]},
            "workers": {"type": "integer", "minimum": 1},
        },
        ["n_grid"],
        {"alpha": 1.5, "k": 3.0, "trials": 50, "sampler": "stable", "workers": 1},
    ),
    "put-tail-down": (
        {
            "base": _DIST,
            "p": _NUM,
            "eps": _NUM,
            "k_grid": {"type": "array", "items": _NUM, "minItems": 1},
            "n": {"type": "integer", "minimum": 2},
            "trials": _POS_INT,
        },
        ["n"],
        {"base": {"family": "laplace", "rate": 1.0}, "p": 0.5, "eps": 0.0, "k_grid": [3.0], "trials": 30},
    ),
    "lepage": (
        {"a": _NUM, "signal": _DIST, "n": {"type": "integer", "minimum": 3}, "n_terms": _POS_INT, "tol": _NUM, "m": _POS_INT},
        ["a", "n"],
        {"signal": {"family": "degenerate", "c": 1.0}, "tol": 1e-2},
    ),
    "capital": (
        {"factor": _DIST, "p": _NUM, "n": {"type": "integer", "minimum": 3}, "m": _POS_INT},
        ["factor", "p", "n"],
        {},
    ),
    "random-min": (
        {"factor": _DIST, "p": _NUM, "n": {"type": "integer", "minimum": 3}, "method": {"enum": ["auto", "direct", "order"]}},
        ["p", "n"],
        {"factor": {"family": "uniform", "lo": 0.0, "hi": 1.0}, "method": "auto"},
    ),
    "tail-bound": (
        {
            "dist": _DIST,
            "curve": {"type": "string"},
            "v": _NUM,
            "u_grid": {"type": "array", "items": _NUM, "minItems": 1},
            "phi": {"enum": sorted(tail_bounds.PHI_FUNCTIONS)},
        },
        ["v", "u_grid"],
        {"phi": "exp"},
    ),
    "fit-pareto": (
        {"input": {"type": "string"}, "column": {"type": "string"}, "x_min": _NUM},
        ["input"],
        {},
    ),
}

SUBCOMMANDS = tuple(SCHEMAS)


class ConfigError(HeavyTailError, ValueError):
    """Invalid experiment configuration (exit code 1)."""


@dataclass
class ExperimentConfig:
    subcommand: str
    params: dict[str, Any] = field(default_factory=dict)
    seed: int = DEFAULT_SEED
    out: str = "heavytail-out"
    format: str = "csv"

    def to_dict(self) -> dict[str, Any]:
        return {"subcommand": self.subcommand, "seed": self.seed, "format": self.format, **self.params}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, obj: dict[str, Any]) -> "ExperimentConfig":
        if not isinstance(obj, dict):
            raise ConfigError("config must be a JSON object")
        name = obj.get("subcommand")
        if name not in SCHEMAS:
            raise ConfigError(f"unknown subcommand {name!r}; choose from {', '.join(SUBCOMMANDS)}")
        props, required, defaults = SCHEMAS[name]
        schema = {
            "type": "object",
            "properties": {**_GLOBAL, **props},
            "required": required,
            "additionalProperties": False,
        }
        try:
            jsonschema.validate(obj, schema)
        except jsonschema.ValidationError as exc:
            where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
            raise ConfigError(f"{name}: {where}: {exc.message}") from None
        params = {**defaults, **{k: v for k, v in obj.items() if k not in _GLOBAL}}
        return cls(
            subcommand=name,
            params=params,
            seed=int(obj.get("seed", DEFAULT_SEED)),
            out=obj.get("out", "heavytail-out"),
            format=obj.get("format", "csv"),
        )


# ----------------------------------------------------------------------------
# Handlers: each returns an Outcome; nothing touches the filesystem here.
# ----------------------------------------------------------------------------


@dataclass
class Table:
    name: str
    header: tuple[str, ...]
    rows: Any
    plot: Plot | None = None


@dataclass
class Outcome:
    summary: str
    tables: list[Table]


def _dist(obj: dict, what: str) -> Distribution:
    try:
        return dist_from_dict(obj)
    except ParameterError as exc:
        raise ConfigError(f"{what}: {exc}") from None


def _index_rows(values: np.ndarray):
    return [(i, v) for i, v in enumerate(values)]


def _run_simulate(cfg: ExperimentConfig, prep: dict) -> Outcome:
    batch = sample(prep["dist"], cfg.params["n"], cfg.seed)
    v = batch.values
    summary = f"simulate: {prep['dist'].family} n={batch.n} mean={np.mean(v):.6g} max|x|={np.max(np.abs(v)):.6g}"
    plot = Plot("samples", "index", "value", [Series(np.arange(v.size), v, style="points")])
    return Outcome(summary, [Table("samples.csv", ("index", "value"), _index_rows(v), plot)])


def _run_gaps(cfg: ExperimentConfig, prep: dict) -> Outcome:
    p = cfg.params
    batch = sample(prep["dist"], p["n"], cfg.seed)
    profile = diagnostics.order_gaps(batch, p["transform"])
    ratio = diagnostics.gap_ratio(profile, p["typical"])
    plot = Plot(
        f"gaps between ordered |x| ({p['transform']})",
        "order index",
        "gap",
        [Series(np.arange(1, profile.gaps.size + 1), profile.gaps, style="points")],
    )
    rows = [(i + 1, g) for i, g in enumerate(profile.gaps)]
    summary = f"gaps: {prep['dist'].family} n={p['n']} transform={p['transform']} gap_ratio={ratio:.6g} ({p['typical']} gap)"
    return Outcome(summary, [Table("gaps.csv", ("index", "gap"), rows, plot)])


def _run_outlier_rate(cfg: ExperimentConfig, prep: dict) -> Outcome:
    p = cfg.params
    batch = sample(prep["dist"], p["n"], cfg.seed)
    rep = diagnostics.outlier_rate(batch, p["k"])
    head = ("n", "k", "mean", "sd", "rate", "n_flagged", "degenerate")
    row = (batch.n, float(rep.k), rep.mean, rep.sd, rep.rate, rep.n_flagged, rep.degenerate)
    z = np.abs(batch.values[rep.flagged] - rep.mean) / rep.sd if rep.sd > 0 else np.empty(0)
    flagged = [(int(i), batch.values[i], zi) for i, zi in zip(rep.flagged, z)]
    summary = f"outlier-rate: {prep['dist'].family} n={batch.n} k={rep.k} rate={rep.rate:.6g} flagged={rep.n_flagged}"
    return Outcome(
        summary,
        [Table("outlier_rate.csv", head, [row]), Table("flagged.csv", ("index", "value", "z"), flagged)],
    )


def _run_theorem1(cfg: ExperimentConfig, prep: dict) -> Outcome:
    p = cfg.params
    spec = StrictlyStable(2.0) if p["sampler"] == "normal" else None
    alpha = 2.0 if spec is not None else p["alpha"]
    rows = diagnostics.theorem1_experiment(alpha, p["n_grid"], p["k"], p["trials"], cfg.seed, workers=p["workers"], spec=spec)
    data = [r.as_tuple() for r in rows]
    plot = Plot(
        "mean outlier rate vs n",
        "n",
        "mean rate",
        [Series(np.array([r.n for r in rows]), np.array([r.mean_rate for r in rows]), label=f"alpha={alpha}")],
        logx=True,
        logy=True,
    )
    trend = " -> ".join(f"{r.mean_rate:.4g}" for r in rows)
    summary = f"theorem1: alpha={alpha} k={p['k']} trials={p['trials']} mean_rate {trend}"
    return Outcome(summary, [Table("theorem1.csv", diagnostics.THEOREM1_HEADER, data, plot)])


def _run_put_tail_down(cfg: ExperimentConfig, prep: dict) -> Outcome:
    p = cfg.params
    spec: put_tail_down.PutTailDown = prep["ptd"]
    plain = put_tail_down.PutTailDown(spec.base, 0.0)
    head = (
        "k", "p", "eps", "exact_base", "exact_ptd", "lhs_4a", "rhs_4a", "holds_4a",
        "mc_rate_base", "mc_rate_ptd", "frac_ptd_higher",
    )
    rows = []
    for j, k in enumerate(p["k_grid"]):
        analytic = spec.base.exact_survival and spec.eps == 0
        if analytic:
            exact_base = put_tail_down.outlier_prob_exact(plain, k)
            exact_ptd = put_tail_down.outlier_prob_exact(spec, k)
            cond = put_tail_down.check_condition_4a(spec, k)
            lhs, rhs, holds = cond.lhs, cond.rhs, cond.holds
        else:
            exact_base = exact_ptd = lhs = rhs = math.nan
            holds = ""
        mc = put_tail_down.more_outliers_mc(spec, k, p["n"], p["trials"], derive_seed(cfg.seed, (j,)))
        rows.append((float(k), spec.p, spec.eps, exact_base, exact_ptd, lhs, rhs, holds, mc.rate_base, mc.rate_ptd, mc.frac_ptd_higher))
    last = rows[-1]
    summary = (
        f"put-tail-down: {spec.base.family} p={spec.p} k={last[0]} exact {last[3]:.6g} -> {last[4]:.6g}, "
        f"mc {last[8]:.6g} -> {last[9]:.6g}"
    )
    return Outcome(summary, [Table("put_tail_down.csv", head, rows)])


def _tail_plot(title: str, table: np.ndarray, model_label: str) -> Plot:
    return Plot(
        title,
        "x",
        "P{X > x}",
        [Series(table[:, 0], table[:, 1], "empirical"), Series(table[:, 0], table[:, 2], model_label)],
        logx=True,
        logy=True,
    )


def _run_lepage(cfg: ExperimentConfig, prep: dict) -> Outcome:
    p = cfg.params
    spec: limit_models.LePageSpec = prep["lepage"]
    batch = limit_models.lepage_sample(spec, p["n"], cfg.seed)
    hill = limit_models.hill_estimator(batch, p.get("m"))
    mags = np.abs(batch.values)
    mags = mags[mags > 0]
    table = limit_models.survival_comparison(mags, lambda x: np.full(np.shape(x), np.nan))
    summary = f"lepage: a={spec.a} alpha={spec.alpha:.6g} N={spec.truncation} n={batch.n} hill_alpha={hill:.6g}"
    return Outcome(
        summary,
        [
            Table("lepage_samples.csv", ("index", "value"), _index_rows(batch.values)),
            Table("lepage_survival.csv", ("x", "S_empirical", "S_model"), table.tolist(), _tail_plot("LePage |X| tail", table, "")),
        ],
    )


def _run_capital(cfg: ExperimentConfig, prep: dict) -> Outcome:
    p = cfg.params
    spec: limit_models.CapitalSpec = prep["capital"]
    batch = limit_models.capital_sample(spec, p["n"], cfg.seed)
    # gamma = E log X from an independent factor stream
    factors = sample(spec.factor, 100_000, cfg.seed, stream=(1,))
    gamma = limit_models.gamma_hat(factors)
    hill = limit_models.hill_estimator(batch, p.get("m"))
    table = limit_models.survival_comparison(batch.values, lambda x: limit_models.pareto_limit_survival(x, gamma))
    rows = [(i, v, int(nu)) for i, (v, nu) in enumerate(zip(batch.values, batch.aux["nu"]))]
    summary = f"capital: p={spec.p} n={batch.n} gamma_hat={gamma:.6g} 1/gamma={1 / gamma:.6g} hill_alpha={hill:.6g}"
    return Outcome(
        summary,
        [
            Table("capital_samples.csv", ("index", "value", "nu"), rows),
            Table("capital_survival.csv", ("x", "S_empirical", "S_model"), table.tolist(), _tail_plot("capital Z_p tail", table, "Pareto limit")),
        ],
    )


def _min_limit_density(factor: Distribution) -> float:
    if isinstance(factor, Uniform) and factor.lo == 0:
        return 1.0 / factor.hi
    if isinstance(factor, Exponential):
        return factor.rate
    return math.nan


def _run_random_min(cfg: ExperimentConfig, prep: dict) -> Outcome:
    p = cfg.params
    spec: limit_models.CapitalSpec = prep["capital"]
    batch = limit_models.random_min_sample(spec, p["n"], cfg.seed, method=p["method"])
    scaled = batch.aux["scaled"]
    f0 = _min_limit_density(spec.factor)
    table = limit_models.survival_comparison(scaled, lambda s: 1.0 / (1.0 + f0 * np.asarray(s)))
    hill = limit_models.hill_estimator(1.0 / batch.values[batch.values > 0])
    rows = [(i, v, s) for i, (v, s) in enumerate(zip(batch.values, scaled))]
    summary = f"random-min: p={spec.p} n={batch.n} hill_alpha(1/min)={hill:.6g}"
    return Outcome(
        summary,
        [
            Table("random_min_samples.csv", ("index", "min", "scaled"), rows),
            Table("random_min_survival.csv", ("s", "S_empirical", "S_model"), table.tolist(), _tail_plot("min/p tail", table, "1/(1+s)")),
        ],
    )


def _run_tail_bound(cfg: ExperimentConfig, prep: dict) -> Outcome:
    p = cfg.params
    phi = tail_bounds.PHI_FUNCTIONS[p["phi"]]
    v = float(p["v"])
    u = np.asarray(p["u_grid"], dtype=float)
    if "dist" in prep:
        dist = prep["dist"]
        s_v = float(dist.survival(v))
        truth: Callable | None = dist.survival
        ifra = tail_bounds.ifra_check(dist) if dist.positive else None
    else:
        curve = prep["curve"]
        if not curve.grid[0] <= v:
            raise ParameterError(f"v={v} lies left of the curve's grid")
        s_v = float(curve.values[np.searchsorted(curve.grid, v, side="right") - 1])
        hi = curve.grid[-1]
        truth = lambda x: np.where(np.asarray(x) <= hi, np.interp(x, curve.grid, curve.values), np.nan)  # noqa: E731
        ifra = tail_bounds.ifra_check(curve)
    table = tail_bounds.bound_table(s_v, v, u, phi, truth)
    beta = tail_bounds.tail_exponent_bound(s_v, v) if phi is tail_bounds.EXP_PHI else math.nan
    plot = Plot(
        f"phi={phi.name} tail bound from S({v:g})",
        "u",
        "survival",
        [Series(table[:, 0], table[:, 1], "bound"), Series(table[:, 0], table[:, 2], "truth")],
        logx=True,
        logy=True,
    )
    summary = f"tail-bound: phi={phi.name} v={v:g} S(v)={s_v:.6g} beta={beta:.6g} ifra={ifra}"
    return Outcome(summary, [Table("tail_bound.csv", ("u", "bound", "truth_if_known"), table.tolist(), plot)])


def _run_fit_pareto(cfg: ExperimentConfig, prep: dict) -> Outcome:
    p = cfg.params
    data = ingest_csv(p["input"], p.get("column"))
    rep = fit_pareto(data, p.get("x_min"))
    lin, loglog = rep.linear_table(), rep.loglog_table()
    summary = f"fit-pareto: n={rep.n} x_min={rep.x_min:.6g} gamma_hat={rep.gamma_hat:.6g} 1/gamma={rep.tail_exponent:.6g} ks={rep.ks:.6g}"
    return Outcome(
        summary,
        [
            Table(
                "fit_pareto_linear.csv",
                ("x", "F_empirical", "F_model"),
                lin.tolist(),
                Plot("distribution function", "x", "F(x)", [Series(lin[:, 0], lin[:, 1], "empirical", "points"), Series(lin[:, 0], lin[:, 2], "Pareto")]),
            ),
            Table(
                "fit_pareto_loglog.csv",
                ("log_x", "log_S_empirical", "log_S_model"),
                loglog.tolist(),
                Plot("log-log survival", "log x", "log S(x)", [Series(loglog[:, 0], loglog[:, 1], "empirical", "points"), Series(loglog[:, 0], loglog[:, 2], "Pareto")]),
            ),
        ],
    )


HANDLERS: dict[str, Callable[[ExperimentConfig, dict], Outcome]] = {
    "simulate": _run_simulate,
    "gaps": _run_gaps,
    "outlier-rate": _run_outlier_rate,
    "theorem1": _run_theorem1,
    "put-tail-down": _run_put_tail_down,
    "lepage": _run_lepage,
    "capital": _run_capital,
    "random-min": _run_random_min,
    "tail-bound": _run_tail_bound,
    "fit-pareto": _run_fit_pareto,
}


def _prepare(cfg: ExperimentConfig) -> dict:
    """Build model objects from the config; any failure here is a config error."""
    p = cfg.params
    prep: dict[str, Any] = {}
    try:
        check_seed(cfg.seed)
        if "dist" in p:
            prep["dist"] = _dist(p["dist"], "dist")
        if cfg.subcommand == "put-tail-down":
            prep["ptd"] = put_tail_down.PutTailDown(_dist(p["base"], "base"), p["p"], p["eps"])
        elif cfg.subcommand == "lepage":
            prep["lepage"] = limit_models.LePageSpec(p["a"], _dist(p["signal"], "signal"), p.get("n_terms"), p["tol"])
        elif cfg.subcommand in ("capital", "random-min"):
            prep["capital"] = limit_models.CapitalSpec(_dist(p["factor"], "factor"), p["p"])
        elif cfg.subcommand == "theorem1":
            if p["sampler"] == "stable" and not 0 < p["alpha"] < 2:
                raise ParameterError(f"alpha must lie in (0, 2), got {p['alpha']}")
            grid = p["n_grid"]
            if any(b <= a for a, b in zip(grid, grid[1:])):
                raise ParameterError("n_grid must be strictly increasing")
        elif cfg.subcommand == "tail-bound":
            if ("dist" in p) == ("curve" in p):
                raise ParameterError("tail-bound needs exactly one of 'dist' or 'curve'")
            if "curve" in p:
                prep["curve"] = tail_bounds.SurvivalCurve.from_csv(p["curve"])
        elif cfg.subcommand == "fit-pareto":
            if not Path(p["input"]).is_file():
                raise ParameterError(f"input file {p['input']!r} does not exist")
    except (ParameterError, OSError) as exc:
        raise ConfigError(f"{cfg.subcommand}: {exc}") from None
    return prep


def execute(cfg: ExperimentConfig) -> tuple[Outcome, dict[str, str]]:
    """Run a validated config and render file contents without writing them."""
    prep = _prepare(cfg)
    outcome = HANDLERS[cfg.subcommand](cfg, prep)
    files = {"config.json": cfg.to_json()}
    for table in outcome.tables:
        files[table.name] = csv_text(table.header, table.rows)
        if cfg.format == "svg" and table.plot is not None:
            files[table.name.removesuffix(".csv") + ".svg"] = svg_text(table.plot)
    return outcome, files


def run(cfg: ExperimentConfig, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        outcome, files = execute(cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    except HeavyTailError as exc:
        print(f"error: {cfg.subcommand}: {exc}", file=stderr)
        return 2
    out = Path(cfg.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
        for name, text in files.items():
            (out / name).write_text(text, encoding="utf-8", newline="")
    except OSError as exc:
        print(f"error: cannot write to {out}: {exc}", file=stderr)
        return 2
    print(f"{outcome.summary} -> {out}", file=stdout)
    return 0


# ----------------------------------------------------------------------------
# argparse front end
# ----------------------------------------------------------------------------


def _json_arg(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def _dist_arg(text: str):
    """``'{"family": ...}'`` or the shorthand ``family:key=value,key=value``."""
    text = text.strip()
    if text.startswith("{"):
        return json.loads(text)
    family, _, rest = text.partition(":")
    obj: dict[str, Any] = {"family": family}
    for item in filter(None, rest.split(",")):
        key, _, value = item.partition("=")
        obj[key.strip()] = _json_arg(value.strip())
    return obj


def _list_arg(cast):
    def parse(text: str):
        return [cast(v) for v in text.replace(" ", "").split(",") if v]

    return parse


_OPTIONS: dict[str, list[tuple[str, Callable]]] = {
    "simulate": [("dist", _dist_arg), ("n", int)],
    "gaps": [("dist", _dist_arg), ("n", int), ("transform", str), ("typical", str)],
    "outlier-rate": [("dist", _dist_arg), ("n", int), ("k", float)],
    "theorem1": [("alpha", float), ("n_grid", _list_arg(int)), ("k", float), ("trials", int), ("sampler", str), ("workers", int)],
    "put-tail-down": [("base", _dist_arg), ("p", float), ("eps", float), ("k_grid", _list_arg(float)), ("n", int), ("trials", int)],
    "lepage": [("a", float), ("signal", _dist_arg), ("n", int), ("n_terms", int), ("tol", float), ("m", int)],
    "capital": [("factor", _dist_arg), ("p", float), ("n", int), ("m", int)],
    "random-min": [("factor", _dist_arg), ("p", float), ("n", int), ("method", str)],
    "tail-bound": [("dist", _dist_arg), ("curve", str), ("v", float), ("u_grid", _list_arg(float)), ("phi", str)],
    "fit-pareto": [("input", str), ("column", str), ("x_min", float)],
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="heavytail", description="Heavy-tail and outlier experiments.")
    parser.add_argument("--config", type=Path, help="JSON config (one object per run)")
    parser.add_argument("--seed", type=int, help="64-bit master seed (fallback: $HEAVYTAIL_SEED)")
    parser.add_argument("--out", help="output directory")
    parser.add_argument("--format", choices=("csv", "svg"), help="csv, or csv plus svg plots")
    sub = parser.add_subparsers(dest="subcommand")
    for name, opts in _OPTIONS.items():
        sp = sub.add_parser(name)
        for key, cast in opts:
            sp.add_argument("--" + key.replace("_", "-"), dest=key, type=cast, default=None)
    return parser


def config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    obj: dict[str, Any] = {}
    if args.config is not None:
        try:
            obj = json.loads(args.config.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from None
        if not isinstance(obj, dict):
            raise ConfigError("config must be a JSON object")
    if args.subcommand:
        if obj.get("subcommand", args.subcommand) != args.subcommand:
            raise ConfigError(f"config is for {obj['subcommand']!r} but {args.subcommand!r} was requested")
        obj["subcommand"] = args.subcommand
        for key, _ in _OPTIONS[args.subcommand]:
            value = getattr(args, key, None)
            if value is not None:
                obj[key] = value
    if "subcommand" not in obj:
        raise ConfigError("no subcommand given")
    if args.seed is not None:
        obj["seed"] = args.seed
    elif "seed" not in obj:
        try:
            obj["seed"] = seed_from_env()
        except ParameterError as exc:
            raise ConfigError(str(exc)) from None
    if args.out is not None:
        obj["out"] = args.out
    if args.format is not None:
        obj["format"] = args.format
    return ExperimentConfig.from_dict(obj)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; those are config errors here
        return 0 if exc.code in (0, None) else 1
    try:
        cfg = config_from_args(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
