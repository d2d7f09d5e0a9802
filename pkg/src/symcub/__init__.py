"""Exact Gaussian cubature for symmetric polynomials and rational functions."""

from .bernstein_szego import (
    BernsteinSzego,
    BSParams,
    BSRootSet,
    bs_christoffel,
    bs_eval,
    bs_roots,
    bs_weight,
    c_func,
    h_func,
    v_a,
    v_a_prime,
)
from .orthopoly import (
    Hermite,
    Jacobi,
    Laguerre,
    OrthoFamily,
    QuadratureRule1D,
    family_from_descriptor,
)
from .partitions import (
    dominance_leq,
    elementary_symmetric,
    enumerate_alcove,
    monomial_eval,
)
from .schur import (
    CubatureRule,
    SchurEvaluator,
    build_rule,
    ensemble_density,
    integrate_rational_bs,
    integrate_symmetric,
)
from .verify import (
    OracleConfig,
    VerificationReport,
    monte_carlo_integrate,
    oracle_integrate,
    run_exactness_suite,
    run_orthogonality_suite,
)

__version__ = "0.1.0"

__all__ = [
    "BernsteinSzego",
    "BSParams",
    "BSRootSet",
    "bs_christoffel",
    "bs_eval",
    "bs_roots",
    "bs_weight",
    "c_func",
    "h_func",
    "v_a",
    "v_a_prime",
    "Hermite",
    "Jacobi",
    "Laguerre",
    "OrthoFamily",
    "QuadratureRule1D",
    "family_from_descriptor",
    "dominance_leq",
    "elementary_symmetric",
    "enumerate_alcove",
    "monomial_eval",
    "CubatureRule",
    "SchurEvaluator",
    "build_rule",
    "ensemble_density",
    "integrate_rational_bs",
    "integrate_symmetric",
    "OracleConfig",
    "VerificationReport",
    "monte_carlo_integrate",
    "oracle_integrate",
    "run_exactness_suite",
    "run_orthogonality_suite",
    "__version__",
]
