"""Numerical laboratory for normality of holomorphic functions in C^n:
expression kernels, Levi-form and Kobayashi metrics, and rescaling runs."""

from .domains import (
    Ball,
    Domain,
    Polydisc,
    boundary_distance,
    circumscribed_ball,
    contains,
    inscribed_ball,
)
from .errors import (
    BranchError,
    ConfigError,
    DimensionMismatchError,
    DomainError,
    EvaluationError,
    ExprSyntaxError,
    NormlabError,
    PoleError,
)
from .expr import (
    HoloExpr,
    Jet,
    affine_pullback,
    evaluate,
    evaluate_jet,
    parse,
    to_source,
)
from .metrics import (
    NormalityEstimate,
    SamplingPlan,
    SharpValue,
    kobayashi_ball,
    kobayashi_domain_bounds,
    kobayashi_upper,
    levi_form_fd,
    levi_log1p_closed,
    log1p_sq_field,
    normality_scan,
    sharp,
    sharp_fd,
)
from .rescaling import (
    ConvergenceReport,
    ExplicitScale,
    RemarkReport,
    RescalingRun,
    SequenceSpec,
    SharpProfile,
    ZalcmanScale,
    convergence_report,
    explicit_rescale,
    limit_sharp_check,
    make_sequence,
    marty_bound,
    remark_counterexample,
    rescale_sharp_identity_check,
    rescaled_function,
    thm2_verify,
    zalcman_rescale,
)
from .sampling import ball_grid, scan_rays, sphere_directions

__version__ = "0.1.0"

__all__ = [
    "Ball",
    "BranchError",
    "ConfigError",
    "ConvergenceReport",
    "DimensionMismatchError",
    "Domain",
    "DomainError",
    "EvaluationError",
    "ExplicitScale",
    "ExprSyntaxError",
    "HoloExpr",
    "Jet",
    "NormalityEstimate",
    "NormlabError",
    "PoleError",
    "Polydisc",
    "RemarkReport",
    "RescalingRun",
    "SamplingPlan",
    "SequenceSpec",
    "SharpProfile",
    "SharpValue",
    "ZalcmanScale",
    "affine_pullback",
    "ball_grid",
    "boundary_distance",
    "circumscribed_ball",
    "contains",
    "convergence_report",
    "evaluate",
    "evaluate_jet",
    "explicit_rescale",
    "inscribed_ball",
    "kobayashi_ball",
    "kobayashi_domain_bounds",
    "kobayashi_upper",
    "levi_form_fd",
    "levi_log1p_closed",
    "limit_sharp_check",
    "log1p_sq_field",
    "make_sequence",
    "marty_bound",
    "normality_scan",
    "parse",
    "remark_counterexample",
    "rescale_sharp_identity_check",
    "rescaled_function",
    "scan_rays",
    "sharp",
    "sharp_fd",
    "sphere_directions",
    "thm2_verify",
    "to_source",
    "zalcman_rescale",
]
