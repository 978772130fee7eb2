"""Capacity, equilibrium measures, and extremal polynomials on unions of intervals.

The package computes logarithmic potential theory data for finite unions
of closed intervals (capacity, equilibrium measure, Green function) and
the two extremal polynomial families living on top of it: weighted
minimax (Chebyshev) polynomials and monic orthogonal polynomials for
Jacobi-type measures.  Polynomial preimages of [-1, 1] supply exact
rational reference values for everything, which is what the verify
machinery is built on.
"""

__version__ = "1.0.0"

from .errors import (
    WidomlabError,
    ConfigError,
    ConvergenceError,
    QuadratureError,
    AdmissibilityError,
)
from .intervals import IntervalSet, normalize
from .potential import (
    EquilibriumData,
    PWData,
    equilibrium,
    log_capacity,
    green,
    pw_data,
)
from .chebyshev import (
    WeightSpec,
    ChebyshevSolution,
    remez,
    widom_inf,
    sup_bounds,
    kind_polynomial,
    enclosing_preimage,
)
from .orthopoly import (
    JacobiOnEq,
    OrthoData,
    stieltjes,
    widom2_sq,
    entropy,
    gram_oracle,
)
from .preimage import (
    PreimageSpec,
    AdmissibilityReport,
    ExactOracle,
    SaturationReport,
    AffineInstance,
    analyze,
    build_set,
    exact_invariants,
    saturation_verify,
    control_clauses,
    affine_instance,
)
from .verify import run_criteria

__all__ = [
    "__version__",
    "WidomlabError", "ConfigError", "ConvergenceError", "QuadratureError",
    "AdmissibilityError",
    "IntervalSet", "normalize",
    "EquilibriumData", "PWData", "equilibrium", "log_capacity", "green",
    "pw_data",
    "WeightSpec", "ChebyshevSolution", "remez", "widom_inf", "sup_bounds",
    "kind_polynomial", "enclosing_preimage",
    "JacobiOnEq", "OrthoData", "stieltjes", "widom2_sq", "entropy",
    "gram_oracle",
    "PreimageSpec", "AdmissibilityReport", "ExactOracle", "SaturationReport",
    "AffineInstance", "analyze", "build_set", "exact_invariants",
    "saturation_verify", "control_clauses", "affine_instance",
    "run_criteria",
]
