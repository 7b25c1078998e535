"""Doubling weights, weighted Besov-type norms of analytic functions and their comparabilities.

Modules
-------
weights
    Radial weights, tail integrals and numerical class membership.
functions
    Blaschke products, singular inner and outer functions, boundary data.
quantities
    Integral means, Hardy and Besov norms, moduli of continuity and
    Poisson-mean quantities.
verify
    Comparability experiments, factorization and zero-set checks.
cli
    ``doubling-besov`` command line.
"""

__version__ = "1.0.0"

from .config import QuadratureConfig
from .errors import (
    DivisionSingularityError,
    DoublingBesovError,
    InconsistencyError,
    QuadratureError,
    ResolutionError,
    ValidationError,
)
from .functions import (
    AnalyticFunction,
    Blaschke,
    BoundaryGrid,
    Lacunary,
    Monomial,
    Outer,
    Polynomial,
    Product,
    Quotient,
    SingularInner,
    boundary_modulus,
    constant,
    derivative,
    evaluate,
    function_from_spec,
    outer_preset,
    poisson_mean,
    pseudo_hyperbolic,
    sequence_geometry,
    split_min_max,
)
from .quantities import (
    F1,
    F2,
    NormEstimate,
    besov_norm,
    hardy_norm,
    integral_mean,
    modulus_of_continuity,
    multiplier_integral,
    omega_seminorm,
    theorem2_middle,
)
from .weights import (
    Membership,
    RadialWeight,
    WeightClassReport,
    classify,
    effective_weight,
    lemmaA_crosscheck,
    lemmaE_check,
    weight_from_spec,
)
