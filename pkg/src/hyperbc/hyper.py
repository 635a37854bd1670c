"""Closed-form evaluators: the product form of the Harish-Chandra series,
the BC_n hypergeometric function F via determinant (k_m = 1) or permanent
(k_m = 0), the partial Weyl-sum spherical function over the A_{n-1}
subsystem, and the rational (Bessel) limit."""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import (
    ChamberError,
    DegenerateLambda,
    DomainError,
    HalfPlaneError,
    NonConvergence,
    ParameterError,
)
from .hcseries import root_data
from .jacobi import c_rank1, jacobi_phi, jacobi_phi_asymptotic
from .rootsystem import (
    DEGENERACY_TOL,
    THETA_AN1,
    MultiplicityBC,
    RootSubset,
    constant_B,
    delta_m,
    delta_m_rational,
    rho,
)
from .special import bessel_j_normalized

GENERICITY_ORDER = 12
#: central-difference step (in lambda^2) of the confluent fallback
CONFLUENT_STEP = 1e-4
#: below this sinh^2(t_1) the determinant is evaluated through divided
#: differences in s = sinh^2 t, which stays accurate as the t_j cluster
#: (the plain det / Delta_m ratio loses all digits near t = 0)
SMALL_T_SINH2 = 0.5
_SMALL_T_MAX_TERMS = 2000

TARGETS = ("F", "PhiSeries", "FTheta", "BesselBC")


@dataclass(frozen=True)
class EvalRequest:
    k: MultiplicityBC
    lam: np.ndarray
    t: np.ndarray
    target: str

    def __post_init__(self):
        if self.target not in TARGETS:
            raise ParameterError(f"unknown target {self.target!r}")


@dataclass(frozen=True)
class EvalResult:
    value: complex
    condition_estimate: float
    degenerate_path: bool


def _as_lam(lam) -> np.ndarray:
    return np.asarray(getattr(lam, "lam", lam), dtype=complex)


def _as_t(t) -> np.ndarray:
    return np.asarray(getattr(t, "t", t), dtype=float)


def _require_chamber(t: np.ndarray) -> None:
    if not (np.all(np.diff(t) < 0.0) and t[-1] > 0.0):
        raise ChamberError(f"t = {t} not in the open chamber")


def _vandermonde_sq(lam: np.ndarray) -> complex:
    v = 1.0 + 0.0j
    n = len(lam)
    for i in range(n):
        for j in range(i + 1, n):
            v *= lam[i] ** 2 - lam[j] ** 2
    return v


def _pi(x: np.ndarray) -> complex:
    v = 1.0 + 0.0j
    n = len(x)
    for i in range(n):
        for j in range(i + 1, n):
            v *= x[i] - x[j]
    return v


def _degenerate_pairs(lam: np.ndarray, tol: float = DEGENERACY_TOL):
    scale = max(1.0, float(np.max(np.abs(lam)) ** 2))
    x = lam**2
    return [
        (i, j)
        for i in range(len(lam))
        for j in range(i + 1, len(lam))
        if abs(x[i] - x[j]) <= tol * scale
    ]


def _cond(mat: np.ndarray, result: complex) -> float:
    """Cancellation heuristic: ratio of the no-cancellation magnitude of the
    alternating/plain sum to the achieved result."""
    bound = abs(_kernels.ryser_permanent(np.ascontiguousarray(np.abs(mat) + 0.0j)))
    return float(bound / max(1e-300, abs(result)))


def phi_product(k: MultiplicityBC, lam, t) -> complex:
    """Delta_m(a_t)^(-k_m) prod_j Phi^(alpha,beta)_{-i lambda_j}(t_j), the
    product form of the Harish-Chandra series for k_m in {0, 1}."""
    lam, t = _as_lam(lam), _as_t(t)
    _require_chamber(t)
    _check_genericity(k, lam)
    jp = k.jacobi
    val = 1.0 + 0.0j
    for j in range(k.n):
        val *= jacobi_phi_asymptotic(jp, lam[j], t[j])
    if k.k_m == 1:
        val /= delta_m(t)
    return val


def _check_genericity(k: MultiplicityBC, lam: np.ndarray, order: int = GENERICITY_ORDER):
    data = root_data(k.n, order)
    lam_e = lam / 2.0
    mm = np.sum(data.mu_vecs**2, axis=1)
    lm = data.mu_vecs @ lam_e
    den = np.abs(mm - 2.0 * lm)
    scale = max(1.0, float(np.max(np.abs(lam_e)) ** 2))
    if np.min(den[1:]) <= 1e-8 * scale:
        raise DegenerateLambda(
            "lambda fails the series genericity condition "
            f"(margin {np.min(den[1:]):.3e})"
        )


def _phi_matrix(k: MultiplicityBC, lam: np.ndarray, t: np.ndarray) -> np.ndarray:
    jp = k.jacobi
    n = k.n
    m = np.empty((n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            m[i, j] = jacobi_phi(jp, lam[i], t[j])
    return m


def _f_det_divided(k: MultiplicityBC, lam: np.ndarray, t: np.ndarray) -> EvalResult:
    """Determinant formula through column divided differences in
    s_j = sinh^2 t_j.  With g_i(s) = phi_{i lambda_i} as a power series in
    -s, the matrix DD_ij = g_i[s_1, ..., s_j] satisfies
    det(g_i(s_j)) = det(DD) prod_{j'<j}(s_j - s_j'), and Delta_m =
    2^(n(n-1)) prod_{i<j}(s_i - s_j), so
    F = (-1)^(n(n-1)/2) B det(DD) / [2^(n(n-1)) prod(lambda_i^2-lambda_j^2)].
    Divided differences of s^m are complete homogeneous polynomials
    h_{m-j+1}(s_1..s_j), so each entry is a directly summed series with no
    cancellation between nearby s_j."""
    n = k.n
    jp = k.jacobi
    rho1, c = jp.rho1, jp.alpha + 1.0
    s = np.sinh(t) ** 2
    # work with knots scaled by s_1 so every power stays bounded: with
    # sigma_q = s_q / s_1 <= 1, h_d(s_1..s_j) = s_1^d h_d(sigma_1..sigma_j)
    # and the series coefficients absorb s_1^m (they are then the terms of
    # the convergent 2F1 series at s_1)
    s1 = s[0]
    sigma = s / s1
    dmax = _SMALL_T_MAX_TERMS + n
    h = np.zeros((n, dmax), dtype=float)
    h[0] = sigma[0] ** np.arange(dmax)
    for j in range(1, n):
        h[j, 0] = 1.0
        for d in range(1, dmax):
            h[j, d] = h[j - 1, d] + sigma[j] * h[j, d - 1]
    mat = np.empty((n, n), dtype=complex)
    for i in range(n):
        a, b = 0.5 * (rho1 - lam[i]), 0.5 * (rho1 + lam[i])
        # scaled coefficients C_m = s_1^m [s^m] 2F1(a, b; c; -s)
        coef = [1.0 + 0.0j]
        peak, small = 1.0, 0
        for m in range(1, _SMALL_T_MAX_TERMS):
            cm = -coef[m - 1] * (a + m - 1) * (b + m - 1) * s1 / ((c + m - 1) * m)
            coef.append(cm)
            peak = max(peak, abs(cm))
            small = small + 1 if abs(cm) <= 1e-22 * peak else 0
            if small >= 5 and m > n:
                break
        else:
            raise NonConvergence("divided-difference series did not converge")
        coef = np.asarray(coef)
        for j in range(n):
            # DD'_ij = s_1^(j) g_i[s_1..s_{j+1}] = sum_d C_{d+j} h_d(sigma)
            mat[i, j] = np.sum(coef[j:] * h[j, : len(coef) - j])
    det = complex(np.linalg.det(mat))
    npairs = n * (n - 1) // 2
    sign = -1.0 if npairs % 2 else 1.0
    value = (
        sign
        * constant_B(k)
        * det
        / (s1**npairs * 2.0 ** (n * (n - 1)) * _vandermonde_sq(lam))
    )
    return EvalResult(value=value, condition_estimate=_cond(mat, det), degenerate_path=False)


def f_determinant(k: MultiplicityBC, lam, t) -> EvalResult:
    """F(lambda, k; a_t) for k_m = 1:
    B det(phi_{i lambda_i}(t_j)) / [prod_{i<j}(lambda_i^2 - lambda_j^2)
    Delta_m(a_t)].  Near the origin (sinh^2 t_1 < SMALL_T_SINH2) the ratio
    det / Delta_m is computed by divided differences, which remains
    accurate as the denominator degenerates."""
    if k.k_m != 1:
        raise ParameterError("determinant formula requires k_m = 1")
    lam, t = _as_lam(lam), _as_t(t)
    _require_chamber(t)
    if _degenerate_pairs(lam):
        raise DegenerateLambda(
            "coinciding lambda_i^2; use evaluate() for the confluent path"
        )
    if math.sinh(t[0]) ** 2 < SMALL_T_SINH2:
        return _f_det_divided(k, lam, t)
    mat = _phi_matrix(k, lam, t)
    det = complex(np.linalg.det(mat))
    value = constant_B(k) * det / (_vandermonde_sq(lam) * delta_m(t))
    return EvalResult(value=value, condition_estimate=_cond(mat, det), degenerate_path=False)


def f_permanent(k: MultiplicityBC, lam, t) -> EvalResult:
    """F(lambda, k; a_t) for k_m = 0:
    (1/n!) perm(phi_{i lambda_i}(t_j))."""
    if k.k_m != 0:
        raise ParameterError("permanent formula requires k_m = 0")
    lam, t = _as_lam(lam), _as_t(t)
    mat = _phi_matrix(k, lam, t)
    perm = _kernels.ryser_permanent(np.ascontiguousarray(mat))
    value = perm / math.factorial(k.n)
    return EvalResult(value=complex(value), condition_estimate=_cond(mat, perm), degenerate_path=False)


def f_theta(k: MultiplicityBC, lam, t, theta: RootSubset = THETA_AN1) -> EvalResult:
    """Partial spherical function over the A_{n-1} simple-root subset:
    pi(rho)/pi(lambda) det(Phi_{-i lambda_i}(t_j))/Delta_m for k_m = 1,
    (1/n!) perm(Phi_{-i lambda_i}(t_j)) for k_m = 0."""
    if theta != THETA_AN1:
        raise ParameterError("only the A_{n-1} subset is supported")
    lam, t = _as_lam(lam), _as_t(t)
    if np.any(lam.real <= 0.0):
        raise HalfPlaneError(f"Re lambda_i > 0 required, got {lam}")
    jp = k.jacobi
    n = k.n
    mat = np.empty((n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            mat[i, j] = jacobi_phi_asymptotic(jp, lam[i], t[j])
    if k.k_m == 0:
        perm = _kernels.ryser_permanent(np.ascontiguousarray(mat))
        value = perm / math.factorial(n)
        return EvalResult(complex(value), _cond(mat, perm), False)
    scale = max(1.0, float(np.max(np.abs(lam))))
    for i in range(n):
        for j in range(i + 1, n):
            if abs(lam[i] - lam[j]) <= DEGENERACY_TOL * scale:
                raise DegenerateLambda(f"lambda_{i+1} = lambda_{j+1}")
    det = complex(np.linalg.det(mat))
    value = _pi(rho(k)) / _pi(lam) * det / delta_m(t)
    return EvalResult(complex(value), _cond(mat, det), False)


def _bessel_matrix(k: MultiplicityBC, lam: np.ndarray, t: np.ndarray) -> np.ndarray:
    alpha = k.alpha
    if abs(alpha.imag) > 0.0:
        raise ParameterError("Bessel limit implemented for real alpha only")
    n = k.n
    m = np.empty((n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            m[i, j] = bessel_j_normalized(alpha.real, 1j * lam[i] * t[j])
    return m


def bessel_bcn(k: MultiplicityBC, lam, t) -> EvalResult:
    """Bessel function of type BC_n, the limit of F(eps^-1 lambda, k; a_{eps t}):
    A det(J_alpha(i lambda_i t_j)) / [prod(lambda_i^2 - lambda_j^2)
    Delta_m,rat(a_t)] for k_m = 1, (1/n!) perm(J_alpha(i lambda_i t_j))
    for k_m = 0."""
    lam, t = _as_lam(lam), _as_t(t)
    if np.any(lam == 0.0) or np.any(t == 0.0):
        raise DomainError("lambda_j != 0 and t_j != 0 required")
    mat = _bessel_matrix(k, lam, t)
    if k.k_m == 0:
        perm = _kernels.ryser_permanent(np.ascontiguousarray(mat))
        value = perm / math.factorial(k.n)
        return EvalResult(complex(value), _cond(mat, perm), False)
    if _degenerate_pairs(lam):
        raise DegenerateLambda(
            "coinciding lambda_i^2; use evaluate() for the confluent path"
        )
    det = complex(np.linalg.det(mat))
    value = constant_B(k) * det / (_vandermonde_sq(lam) * delta_m_rational(t))
    return EvalResult(complex(value), _cond(mat, det), False)


def _confluent_det_ratio(row_fn, lam: np.ndarray) -> tuple[complex, np.ndarray]:
    """det(f(x_i))/prod_{i<j}(x_i - x_j) in the variables x_i = lambda_i^2,
    with the unique coinciding pair replaced by a divided-difference row
    (first-order confluence).  row_fn(lam_scalar) gives the matrix row."""
    pairs = _degenerate_pairs(lam)
    if len(pairs) != 1:
        raise DegenerateLambda(
            f"{len(pairs)} coinciding pairs; only single confluence is supported"
        )
    (i, j) = pairs[0]
    others = {i, j}
    for a, b in pairs:
        others |= {a, b}
    x = lam.astype(complex) ** 2
    xbar = 0.5 * (x[i] + x[j])
    scale = max(1.0, float(np.max(np.abs(lam))))
    h = CONFLUENT_STEP * scale
    lam_mid = cmath.sqrt(xbar)
    lam_plus = cmath.sqrt(xbar + h)
    lam_minus = cmath.sqrt(xbar - h)
    n = len(lam)
    mat = np.empty((n, n), dtype=complex)
    for r in range(n):
        if r == i:
            mat[r] = row_fn(lam_mid)
        elif r == j:
            mat[r] = (row_fn(lam_plus) - row_fn(lam_minus)) / (2.0 * h)
        else:
            mat[r] = row_fn(lam[r])
    xeff = x.copy()
    xeff[i] = xeff[j] = xbar
    prod_rest = 1.0 + 0.0j
    for a in range(n):
        for b in range(a + 1, n):
            if (a, b) == (i, j):
                continue
            prod_rest *= xeff[a] - xeff[b]
    det = complex(np.linalg.det(mat))
    # row_j -> f'(xbar) carries a 1/(x_j - x_i) relative to the vanishing
    # Vandermonde factor (x_i - x_j); the leftover sign is -1
    return -det / prod_rest, mat


def evaluate(req: EvalRequest) -> EvalResult:
    """Dispatch on target and k_m; for k_m = 1 determinant targets with a
    single coinciding pair lambda_i^2 = lambda_j^2 the ratio
    det / prod(lambda_i^2 - lambda_j^2) is replaced by a confluent
    divided-difference determinant."""
    k = req.k
    lam, t = _as_lam(req.lam), _as_t(req.t)
    if req.target == "PhiSeries":
        return EvalResult(phi_product(k, lam, t), 1.0, False)
    if req.target == "FTheta":
        return f_theta(k, lam, t)
    if req.target == "F" and k.k_m == 0:
        return f_permanent(k, lam, t)
    if req.target == "BesselBC" and k.k_m == 0:
        return bessel_bcn(k, lam, t)

    # determinant targets
    if not _degenerate_pairs(lam):
        if req.target == "F":
            return f_determinant(k, lam, t)
        return bessel_bcn(k, lam, t)

    if req.target == "F":
        _require_chamber(t)
        jp = k.jacobi

        def row_fn(lam_scalar):
            return np.array([jacobi_phi(jp, lam_scalar, tj) for tj in t])

        denom = delta_m(t)
    else:
        if np.any(lam == 0.0) or np.any(t == 0.0):
            raise DomainError("lambda_j != 0 and t_j != 0 required")
        alpha = k.alpha.real

        def row_fn(lam_scalar):
            return np.array(
                [bessel_j_normalized(alpha, 1j * lam_scalar * tj) for tj in t]
            )

        denom = delta_m_rational(t)
    ratio, mat = _confluent_det_ratio(row_fn, lam)
    value = constant_B(k) * ratio / denom
    return EvalResult(complex(value), _cond(mat, complex(np.linalg.det(mat))), True)
