"""Upper bounds for B2[g] sets from nonnegative cosine series.

The library is organized around a single object, a finite cosine series
w(t) = sum_j b_j cos(2 pi theta_j t) with b_j >= 0, and the handful of
functionals of w that control the size of B2[g] subsets of {0, ..., N}:
the integrals I1 and I2, the ratio rho = I1^2 / I2, and a certified
curvature bound used to absorb discretization error at finite N.

Modules
    series          series type, closed-form functionals, Fourier data
    bounds          finite-N size bound and asymptotic constant
    yu              one-parameter family with O(M) and limit evaluation
    family          box-constrained rho maximization over a 2M+1 family
    combinatorics   difference counts, spectral identities, exact F(g, N)
    cli             reproducible command-line front end
"""

__version__ = "0.1.0"

from .bounds import BoundReport, finite_majorant, max_size_bound, reference_min
from .combinatorics import (
    DiffProfile,
    IntSet,
    d_identity_residual,
    diff_profile,
    enumerate_b2g,
    exhaustive_f,
    f_table,
    greedy_lower,
    is_b2g,
    s_comb,
    s_dft,
    sdft_inequality_scan,
)
from .errors import (
    BracketError,
    BudgetError,
    DomainError,
    HypothesisError,
    InputError,
    ToleranceError,
    ToolkitError,
    ValidationError,
)
from .family import (
    FamilyParams,
    OptimizeResult,
    gradient,
    initial_params,
    objective,
    optimize,
    to_series,
)
from .series import (
    CosineSeries,
    CosineTerm,
    FunctionalSummary,
    asymptotic_constant,
    curvature_bound,
    eval_w,
    fourier_a,
    fourier_coefficients,
    integral_i1,
    integral_i2,
    ratio_rho,
    summarize,
)
from .yu import LIMIT, YuParams, YuResult, lambda_refine, yu_constant, yu_evaluate, yu_series

__all__ = [
    "__version__",
    "BoundReport",
    "BracketError",
    "BudgetError",
    "CosineSeries",
    "CosineTerm",
    "DiffProfile",
    "DomainError",
    "FamilyParams",
    "FunctionalSummary",
    "HypothesisError",
    "InputError",
    "IntSet",
    "LIMIT",
    "OptimizeResult",
    "ToleranceError",
    "ToolkitError",
    "ValidationError",
    "YuParams",
    "YuResult",
    "asymptotic_constant",
    "curvature_bound",
    "d_identity_residual",
    "diff_profile",
    "enumerate_b2g",
    "eval_w",
    "exhaustive_f",
    "f_table",
    "finite_majorant",
    "fourier_a",
    "fourier_coefficients",
    "gradient",
    "greedy_lower",
    "initial_params",
    "integral_i1",
    "integral_i2",
    "is_b2g",
    "lambda_refine",
    "max_size_bound",
    "objective",
    "optimize",
    "ratio_rho",
    "reference_min",
    "s_comb",
    "s_dft",
    "sdft_inequality_scan",
    "summarize",
    "to_series",
    "yu_constant",
    "yu_evaluate",
    "yu_series",
]
