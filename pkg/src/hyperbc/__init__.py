"""Hypergeometric functions for the root system BC_n with middle-root
multiplicity 0 or 1: closed determinant/permanent evaluation, series and
product forms, c-functions, Bessel limits, partial spherical functions,
and finite-difference checks of the defining differential equations."""

from .diffops import (
    StencilConfig,
    SymmetricPolynomial,
    apply_Dp,
    apply_Dp_rational,
    apply_L,
    apply_L_rational,
    commutator_residual,
)
from .errors import (
    ChamberError,
    DegenerateLambda,
    DomainError,
    HalfPlaneError,
    HyperBCError,
    NonConvergence,
    ParameterError,
    PoleError,
    SingularityTooClose,
    SizeError,
    SmallDenominator,
    StencilBlowup,
    TailTooLarge,
    ZeroDenominator,
)
from .hcseries import HCCoeffTable, SeriesValue, compute_coeffs, series_eval
from .hyper import (
    EvalRequest,
    EvalResult,
    bessel_bcn,
    evaluate,
    f_determinant,
    f_permanent,
    f_theta,
    phi_product,
)
from .jacobi import JacobiParams, c_rank1, jacobi_phi, jacobi_phi_asymptotic
from .rootsystem import (
    FULL,
    MIDDLE_ONLY,
    THETA_AN1,
    ChamberPoint,
    MultiplicityBC,
    RootSubset,
    SpectralParam,
    apply_weyl,
    c_normalized,
    c_tilde,
    constant_B,
    delta_m,
    delta_m_rational,
    rho,
    theta_tail,
    weyl_elements,
)
from .special import bessel_j_normalized, gauss_2f1, log_gamma
from .verify import CheckRecord, SUITE_NAMES, run_suite, weyl_sum_oracle

__version__ = "0.1.0"

__all__ = [
    "ChamberError",
    "ChamberPoint",
    "CheckRecord",
    "DegenerateLambda",
    "DomainError",
    "EvalRequest",
    "EvalResult",
    "FULL",
    "HCCoeffTable",
    "HalfPlaneError",
    "HyperBCError",
    "JacobiParams",
    "MIDDLE_ONLY",
    "MultiplicityBC",
    "NonConvergence",
    "ParameterError",
    "PoleError",
    "RootSubset",
    "SUITE_NAMES",
    "SeriesValue",
    "SingularityTooClose",
    "SizeError",
    "SmallDenominator",
    "SpectralParam",
    "StencilBlowup",
    "StencilConfig",
    "SymmetricPolynomial",
    "THETA_AN1",
    "TailTooLarge",
    "ZeroDenominator",
    "apply_Dp",
    "apply_Dp_rational",
    "apply_L",
    "apply_L_rational",
    "apply_weyl",
    "bessel_bcn",
    "bessel_j_normalized",
    "c_normalized",
    "c_rank1",
    "c_tilde",
    "commutator_residual",
    "compute_coeffs",
    "constant_B",
    "delta_m",
    "delta_m_rational",
    "evaluate",
    "f_determinant",
    "f_permanent",
    "f_theta",
    "gauss_2f1",
    "jacobi_phi",
    "jacobi_phi_asymptotic",
    "log_gamma",
    "phi_product",
    "rho",
    "run_suite",
    "series_eval",
    "theta_tail",
    "weyl_elements",
    "weyl_sum_oracle",
]
