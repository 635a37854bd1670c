"""BC_n combinatorics and c-function data: positive roots, the
hyperoctahedral Weyl group, rho(k), the middle-root Weyl denominator and
its rational limit, c-functions over positive subsystems, and the
normalization constant B of the determinant formula."""

import cmath
import math
from dataclasses import dataclass
from itertools import permutations, product

import numpy as np

from .errors import ParameterError, PoleError, SizeError, ZeroDenominator
from .jacobi import JacobiParams
from .special import _near_nonpositive_int, log_gamma

MAX_RANK = 8
#: coincidences |lambda_i^2 - lambda_j^2| below this (times max(1, |lambda|^2))
#: lose all significant digits in the determinant / Vandermonde ratio
DEGENERACY_TOL = 1e-8
POLE_TOL = 1e-10


@dataclass(frozen=True)
class MultiplicityBC:
    """Multiplicities (k_s, k_m, k_l) of the short, middle, and long roots
    of BC_n, with the standing assumption k_m in {0, 1}."""

    k_s: complex
    k_m: int
    k_l: complex
    n: int

    def __post_init__(self):
        if self.k_m not in (0, 1):
            raise ParameterError(f"k_m must be 0 or 1, got {self.k_m}")
        if self.n < 1:
            raise ParameterError(f"n must be positive, got {self.n}")
        if _near_nonpositive_int(complex(self.alpha) + 1.0):
            raise ParameterError(f"alpha = {self.alpha} is a negative integer")

    @property
    def alpha(self) -> complex:
        return complex(self.k_s) + complex(self.k_l) - 0.5

    @property
    def beta(self) -> complex:
        return complex(self.k_l) - 0.5

    @property
    def c0(self) -> complex:
        """The BC_1 rho: k_s + 2 k_l."""
        return complex(self.k_s) + 2.0 * complex(self.k_l)

    @property
    def jacobi(self) -> JacobiParams:
        return JacobiParams(alpha=self.alpha, beta=self.beta)


@dataclass(frozen=True)
class RootSubset:
    """Selector for a positive subsystem: the full BC_n system, the middle
    roots only, the A_{n-1} simple-root subset, or the BC tail on
    coordinates j..n."""

    kind: str
    j: int = 0

    FULL_KIND = "full"
    MIDDLE_KIND = "middle"
    AN1_KIND = "theta_an1"
    TAIL_KIND = "theta_tail"

    def validate(self, n: int) -> None:
        if self.kind == self.TAIL_KIND and not 2 <= self.j <= n:
            raise ParameterError(f"theta_tail({self.j}) invalid for n = {n}")
        if self.kind not in (
            self.FULL_KIND,
            self.MIDDLE_KIND,
            self.AN1_KIND,
            self.TAIL_KIND,
        ):
            raise ParameterError(f"unknown subset kind {self.kind!r}")


FULL = RootSubset(RootSubset.FULL_KIND)
MIDDLE_ONLY = RootSubset(RootSubset.MIDDLE_KIND)
THETA_AN1 = RootSubset(RootSubset.AN1_KIND)


def theta_tail(j: int) -> RootSubset:
    return RootSubset(RootSubset.TAIL_KIND, j)


class SpectralParam:
    """lambda in the coordinates lambda_j = (lambda, 2 e_j)."""

    def __init__(self, lam):
        self.lam = np.asarray(lam, dtype=complex)
        if self.lam.ndim != 1:
            raise ParameterError("spectral parameter must be a vector")
        if not np.all(np.isfinite(self.lam.view(float))):
            raise ParameterError("spectral parameter must be finite")

    @property
    def n(self) -> int:
        return self.lam.shape[0]

    def is_regular(self, tol: float = DEGENERACY_TOL) -> bool:
        lam = self.lam
        scale = max(1.0, float(np.max(np.abs(lam)) ** 2))
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if abs(lam[i] ** 2 - lam[j] ** 2) <= tol * scale:
                    return False
        return True


class ChamberPoint:
    """t in R^n, canonical domain t_1 > ... > t_n > 0.  Raw inputs with
    distinct nonzero |t_j| are canonicalized by the Weyl action."""

    def __init__(self, t, canonicalize: bool = True):
        t = np.asarray(t, dtype=float)
        if t.ndim != 1:
            raise ParameterError("chamber point must be a vector")
        a = np.abs(t)
        if canonicalize and np.all(a > 0.0) and len(set(a.tolist())) == len(a):
            t = np.sort(a)[::-1]
        self.t = t

    @property
    def n(self) -> int:
        return self.t.shape[0]

    def in_open_chamber(self) -> bool:
        t = self.t
        return bool(np.all(np.diff(t) < 0.0) and t[-1] > 0.0)


def rho(k: MultiplicityBC) -> np.ndarray:
    """rho(k)_j = k_s + 2 k_l + 2 (n - j) k_m in lambda_j coordinates."""
    n = k.n
    return np.array(
        [k.c0 + 2.0 * (n - j) * k.k_m for j in range(1, n + 1)], dtype=complex
    )


def delta_m(t) -> float:
    """Middle-root Weyl denominator
    2^(n(n-1)/2) prod_{i<j} (cosh 2t_i - cosh 2t_j)."""
    t = np.asarray(getattr(t, "t", t), dtype=float)
    n = len(t)
    c = np.cosh(2.0 * t)
    val = 2.0 ** (0.5 * n * (n - 1))
    for i in range(n):
        for j in range(i + 1, n):
            val *= c[i] - c[j]
    return float(val)


def delta_m_rational(t) -> float:
    """Rational limit prod_{i<j} (4 t_i^2 - 4 t_j^2) of
    eps^(-n(n-1)) delta_m(a_{eps t})."""
    t = np.asarray(getattr(t, "t", t), dtype=float)
    n = len(t)
    val = 1.0
    for i in range(n):
        for j in range(i + 1, n):
            val *= 4.0 * (t[i] ** 2 - t[j] ** 2)
    return float(val)


def weyl_elements(n: int):
    """All 2^n n! signed permutations (signs, perm), acting on spectral
    coordinates by lambda_j -> signs_j * lambda_{perm_j}."""
    if n > MAX_RANK:
        raise SizeError(f"n = {n} exceeds the supported rank {MAX_RANK}")
    return [
        (signs, perm)
        for signs in product((1, -1), repeat=n)
        for perm in permutations(range(n))
    ]


def apply_weyl(w, lam) -> np.ndarray:
    signs, perm = w
    lam = np.asarray(getattr(lam, "lam", lam), dtype=complex)
    return np.array([signs[j] * lam[perm[j]] for j in range(len(lam))])


def _subset_indices(subset: RootSubset, n: int):
    """(middle pairs, A-type only flag, short/long indices) for a subset."""
    subset.validate(n)
    if subset.kind == RootSubset.FULL_KIND:
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        return pairs, False, list(range(n))
    if subset.kind == RootSubset.MIDDLE_KIND:
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        return pairs, False, []
    if subset.kind == RootSubset.AN1_KIND:
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        return pairs, True, []
    lo = subset.j - 1
    pairs = [(i, j) for i in range(lo, n) for j in range(i + 1, n)]
    return pairs, False, list(range(lo, n))


def _c_shortlong(k: MultiplicityBC, x: complex) -> complex:
    """Combined short+long c-factor at coordinate x = lambda_j, in the
    duplication-reduced form
    2^(-x-k_s+1) Gamma(x) / [Gamma((x+k_s+1)/2) Gamma((x+k_s)/2 + k_l)].

    The raw product of Eq-(1.15)-type Gamma quotients over e_j and 2e_j is
    sqrt(pi) times this; the constant cancels in every normalized quantity
    and this form is the one the determinant normalization constant is
    stated against."""
    ks, kl = complex(k.k_s), complex(k.k_l)
    if _near_nonpositive_int(x, POLE_TOL):
        raise PoleError(f"c-function pole: Gamma({x}) in the numerator")
    d1 = 0.5 * (x + ks + 1.0)
    d2 = 0.5 * (x + ks) + kl
    if _near_nonpositive_int(d1, POLE_TOL) or _near_nonpositive_int(d2, POLE_TOL):
        return 0.0 + 0.0j
    s = (-x - ks + 1.0) * math.log(2.0) + log_gamma(x) - log_gamma(d1) - log_gamma(d2)
    return cmath.exp(s)


def c_tilde(k: MultiplicityBC, lam, subset: RootSubset = FULL) -> complex:
    """Gamma-quotient c-function product over the positive roots selected
    by the subset.  For k_m = 1 the middle block collapses to
    2^(n(n-1)) / prod_{i<j} (lambda_i^2 - lambda_j^2)."""
    lam = np.asarray(getattr(lam, "lam", lam), dtype=complex)
    n = len(lam)
    pairs, a_type_only, shortlong = _subset_indices(subset, n)
    scale = max(1.0, float(np.max(np.abs(lam)) ** 2)) if n else 1.0
    val = 1.0 + 0.0j
    if k.k_m == 1:
        for i, j in pairs:
            if a_type_only:
                d = lam[i] - lam[j]
                if abs(d) <= POLE_TOL * math.sqrt(scale):
                    raise PoleError(f"middle c-factor pole at lambda_{i}=lambda_{j}")
                val *= 2.0 / d
            else:
                d = lam[i] ** 2 - lam[j] ** 2
                if abs(d) <= POLE_TOL * scale:
                    raise PoleError(
                        f"middle c-factor pole at lambda_{i}^2 = lambda_{j}^2"
                    )
                val *= 4.0 / d
    for p in shortlong:
        val *= _c_shortlong(k, lam[p])
    return val


def _middle_block_normalized(k: MultiplicityBC, lam, pairs, a_type_only) -> complex:
    """Normalized middle-root c-function.  At k_m = 0 the literal quotient
    is 1, but rho(k) degenerates as k_m -> 0 and the limit of the quotient
    is 1/m! over the m indices the block touches; the limit is the value
    that makes the Weyl-sum representation of F reproduce the permanent
    formula, so it is the one used."""
    if not pairs:
        return 1.0 + 0.0j
    idx = sorted({i for p in pairs for i in p})
    m = len(idx)
    if k.k_m == 0:
        return complex(1.0 / math.factorial(m))
    rh = rho(k)
    num = 1.0 + 0.0j
    den = 1.0 + 0.0j
    for i, j in pairs:
        if a_type_only:
            num *= rh[i] - rh[j]
            den *= lam[i] - lam[j]
        else:
            num *= rh[i] ** 2 - rh[j] ** 2
            den *= lam[i] ** 2 - lam[j] ** 2
    if abs(den) == 0.0:
        raise PoleError("middle c-factor pole in normalized c-function")
    return num / den


def c_normalized(k: MultiplicityBC, lam, subset: RootSubset = FULL) -> complex:
    """c(lambda, k) = c_tilde(lambda, k) / c_tilde(rho(k), k) over the
    selected subsystem, with the k_m = 0 middle block taken in the limit
    sense (value 1/m!)."""
    lam = np.asarray(getattr(lam, "lam", lam), dtype=complex)
    n = len(lam)
    pairs, a_type_only, shortlong = _subset_indices(subset, n)
    val = _middle_block_normalized(k, lam, pairs, a_type_only)
    if shortlong:
        rh = rho(k)
        for p in shortlong:
            den = _c_shortlong(k, rh[p])
            if abs(den) == 0.0:
                raise ZeroDenominator(
                    f"c-tilde vanishes at rho(k) in coordinate {p + 1}"
                )
            val *= _c_shortlong(k, lam[p]) / den
    return val


def constant_B(k: MultiplicityBC) -> complex:
    """Normalization constant of the determinant formula,
    B = 2^(2n(n-1)) prod_{i=1}^{n-1} (alpha+i)^(n-i) i!.

    Taken positive: paired with the Vandermonde prod_{i<j}
    (lambda_i^2 - lambda_j^2) this is the constant that makes
    F(lambda, k; e) = 1 and that equals
    2^(n(n-1)) / [c_tilde(rho(k), k) (2^(2k_s+2k_l-1) Gamma(k_s+k_l+1/2))^n];
    the printed sign factor (-1)^(n(n-1)/2) corresponds to the reversed
    Vandermonde ordering."""
    a = complex(k.alpha)
    if _near_nonpositive_int(a + 1.0) or abs(a) <= POLE_TOL:
        raise ParameterError(f"alpha = {a} in the excluded set 0, -1, -2, ...")
    n = k.n
    val = complex(2.0 ** (2 * n * (n - 1)))
    for i in range(1, n):
        val *= (a + i) ** (n - i) * math.factorial(i)
    return val
