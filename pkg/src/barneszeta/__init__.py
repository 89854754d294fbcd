"""Numerical toolkit for Barnes multiple zeta functions.

The Barnes multiple zeta function of order ``r`` is

    zeta_r(s, a, w) = sum over m in Z_{>=0}^r of (a + m.w)^(-s),

absolutely convergent for Re(s) > r and continued analytically to
Re(s) > r - 1 by a truncated-sum-plus-boundary-correction formula.  The
package evaluates it directly (with a rigorous tail bound) or through the
truncated formula (with a heuristic error estimate), computes the diagonal
constant ``tilde_zeta`` governing mean-square growth, integrates
``|zeta_r(sigma + it)|^2`` adaptively, and fits residual growth exponents
against the predicted regime bounds.
"""

from .errors import (
    BarnesZetaError,
    BudgetExceeded,
    ConflictingDeclaration,
    DomainError,
    EmptyWeights,
    InsufficientCheckpoints,
    InvalidParameter,
    NearPole,
    NonPositiveShift,
    NonPositiveWeight,
    Overflow,
    PolePoint,
    ResourceError,
    SigmaTooSmall,
    TruncationTooShort,
    UnsupportedWeightStructure,
)
from .evaluate import (
    BoxRange,
    ErrKind,
    EvalResult,
    Method,
    boundary_correction,
    boundary_identity_check,
    direct_tail_bound,
    em_block_sum,
    eval_approx,
    eval_auto,
    eval_direct,
    resolve_term_cap,
)
from .meansquare import (
    MeanSquareTrace,
    Regime,
    VerificationReport,
    XPolicy,
    classify_regime,
    fit_residual_exponent,
    integrate_mean_square,
    report_to_dict,
    report_to_json,
    trace_to_csv,
    verify_theorems,
)
from .oracle import (
    OracleValue,
    equal_weight_reduction,
    hurwitz_zeta,
    naive_multisum,
)
from .params import (
    BarnesParams,
    WeightKind,
    WeightStructure,
    analyze_weights,
    denumerant,
    denumerant_table,
    validate_params,
)
from .tilde import TildePath, TildeResult, tilde_zeta

__version__ = "0.1.0"

__all__ = [
    "BarnesParams",
    "BarnesZetaError",
    "BoxRange",
    "BudgetExceeded",
    "ConflictingDeclaration",
    "DomainError",
    "EmptyWeights",
    "ErrKind",
    "EvalResult",
    "InsufficientCheckpoints",
    "InvalidParameter",
    "MeanSquareTrace",
    "Method",
    "NearPole",
    "NonPositiveShift",
    "NonPositiveWeight",
    "OracleValue",
    "Overflow",
    "PolePoint",
    "Regime",
    "ResourceError",
    "SigmaTooSmall",
    "TildePath",
    "TildeResult",
    "TruncationTooShort",
    "UnsupportedWeightStructure",
    "VerificationReport",
    "WeightKind",
    "WeightStructure",
    "XPolicy",
    "analyze_weights",
    "boundary_correction",
    "boundary_identity_check",
    "classify_regime",
    "denumerant",
    "denumerant_table",
    "direct_tail_bound",
    "em_block_sum",
    "equal_weight_reduction",
    "eval_approx",
    "eval_auto",
    "eval_direct",
    "fit_residual_exponent",
    "hurwitz_zeta",
    "integrate_mean_square",
    "naive_multisum",
    "report_to_dict",
    "report_to_json",
    "resolve_term_cap",
    "tilde_zeta",
    "trace_to_csv",
    "validate_params",
    "verify_theorems",
    "__version__",
]
