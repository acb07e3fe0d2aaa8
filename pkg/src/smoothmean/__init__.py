"""Distribution-robust mean estimation via smoothed random perturbations.

Closed-form evaluation of soft-truncated mean estimators under Bernoulli,
Normal, Weibull, and Student-t noise, their deviation bounds, classical
baselines, and a seeded simulation harness with CSV reporting.
"""

from .bounds import (
    BOUNDED_METHODS,
    BernoulliNoise,
    BoundReport,
    NormalNoise,
    StudentNoise,
    WeibullNoise,
    deviation_bound,
    kl,
)
from .estimators import (
    ALL_METHODS,
    DegenerateScaleError,
    EstimatorConfig,
    MomentInfo,
    estimate,
    scale_for,
)
from .harness import (
    DataModel,
    DeviationRecord,
    ExperimentConfig,
    TrueMoments,
    bounds_table,
    dump_deviations,
    generate_sample,
    run_experiment,
    sweep_n,
    sweep_ratio,
)
from .kernels import (
    KernelFamily,
    Normal01,
    ShiftScalePair,
    StudentT,
    Weibull,
    base_moment_indicator,
    d_term,
    raw_moment,
    shifted_moment_indicator,
    smoothed_trunc,
)
from .specfn import (
    EULER_GAMMA,
    digamma,
    gamma_fn,
    gudermannian,
    lower_incomplete_gamma,
    normal_cdf,
    regularized_incomplete_beta,
    student_cdf,
)
from .trunc import SATURATION, trunc, trunc_indicator_form

__version__ = "0.1.0"
