"""Generalized Levinger transformation toolkit.

``L(A, alpha, beta) = alpha*H_A + beta*S_A`` together with the numerical
range geometry it induces, Frobenius-norm eigenvalue enclosures, spectral
generalized inverses and eigenpair perturbation expansions for
``A + L(E, alpha, beta)``.
"""

from .bounds import EigenBounds, TraceIdentities, eigen_bounds, identity_residuals, trace_identities
from .errors import (
    ConditionNotMetError,
    DefectiveMatrixError,
    DimensionError,
    DomainError,
    EigenvalueNotFoundError,
    GenlevError,
    MatrixSyntaxError,
    NegativeRadicandError,
    NonNormalError,
    NumericalError,
)
from .geninv import GenInverse, moore_penrose_check, spectral_geninv, verify_geninv
from .levinger import (
    LevingerParams,
    inverse_transform,
    map_point,
    ordinary_levinger,
    skew_levinger,
    transform,
)
from .matrix import (
    CartesianSplit,
    EigenSystem,
    cartesian_split,
    eigensystem,
    format_matrix,
    frobenius_norm,
    normalize_vector,
    parse_matrix,
)
from .normality import (
    NormalityReport,
    normality_distance,
    perturbed_normality_identity,
    rank_one_normality,
)
from .numrange import (
    BoundaryCurve,
    CompressionPoints,
    EllipseSpec,
    compress,
    compression_points,
    levinger_boundary,
    levinger_ellipse,
    normal_polygon,
    nr_boundary,
    real_intersection,
)
from .perturbation import (
    EigenDerivatives,
    PerturbationApprox,
    derivatives,
    first_order,
    kernel_condition,
    normal_simplified,
    perturbed_matrix,
    residual_prediction,
    second_order_geninv,
    second_order_sum,
)

__version__ = "0.1.0"
