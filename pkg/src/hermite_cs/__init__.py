"""Holomorphic Hermite coherent states: bases, kernels, transforms, squeezing
and entanglement diagnostics."""
from ._backend import BACKEND
from .bargmann import (
    GaussianKernel,
    TransformKind,
    TransformSpec,
    compose_kernels,
    limit_distance,
    sb_kernel,
    transform_matrix,
    unitarity_defect,
)
from .entanglement import alpha_entropy_sweep, entropy_of, factorization_witness, schmidt
from .errors import (
    ConditioningError,
    ConvergenceError,
    DomainError,
    HermiteCSError,
    NonFiniteIntegrandError,
    NumericRangeError,
    SeriesDivergenceError,
    ToleranceWarning,
    TruncationWarning,
)
from .hermite import (
    AlphaParam,
    BasisSpec,
    ComplexPoint,
    Family,
    basis_eval,
    basis_table,
    generating_partial_sum,
    hermite_poly,
    hermite_poly_2d,
    squeezed_table,
    xi_of_zeta,
    zeta_of_xi,
)
from .quadrature import build_grid, gram_matrix, natural_measure
from .rkhs import (
    KernelKind,
    KernelSpec,
    closed_kernel,
    factorial_ratio_series,
    hermitian_pd_check,
    log_convexity_check,
    zaremba_kernel,
)
from .states import (
    bogoliubov_coefficients,
    coherent_state,
    ladder_ops,
    resolution_identity_residual,
    squeeze_matrix,
    squeezed_basis,
    standard_cs,
)

__version__ = "0.1.0"
