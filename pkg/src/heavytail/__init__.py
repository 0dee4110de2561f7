"""Simulation and diagnostics for heavy tails and outliers."""

from .diagnostics import GapProfile, OutlierReport, gap_ratio, order_gaps, outlier_rate, theorem1_experiment
from .dist_core import (
    Degenerate,
    Distribution,
    Empirical,
    Exponential,
    Laplace,
    Normal,
    ParetoI,
    PowerTail,
    Rademacher,
    SampleBatch,
    StrictlyStable,
    SymmetricPareto,
    Uniform,
    Weibull,
    dist_from_dict,
    polya_selfcheck,
    power_tail_parameters,
    sample,
    survival,
)
from .errors import (
    DegenerateError,
    DomainError,
    HeavyTailError,
    InsufficientDataError,
    ModelError,
    ParameterError,
    ParseError,
    UnsupportedSpecError,
)
from .fit import FitReport, fit_pareto
from .io import ingest_csv
from .limit_models import (
    CapitalSpec,
    LePageSpec,
    capital_sample,
    gamma_hat,
    hill_estimator,
    lepage_sample,
    random_min_sample,
)
from .put_tail_down import (
    PutTailDown,
    check_condition_4a,
    more_outliers_mc,
    outlier_prob_exact,
    sample_ptd,
)
from .tail_bounds import (
    EXP_PHI,
    RECIPROCAL_PHI,
    PhiFunction,
    SurvivalCurve,
    cure_split,
    dfra_bound,
    ifra_check,
    ifra_tail_bound,
    phi_hazard_rate,
    phi_ifra_bound,
    tail_exponent_bound,
)

__version__ = "0.1.0"
