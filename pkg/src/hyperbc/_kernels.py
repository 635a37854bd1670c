"""Hot numeric kernels.

Every kernel here is a tight scalar/array loop that dominates runtime.
By default they are compiled with numba's @njit; setting the environment
variable HYPERBC_NO_NUMBA=1 selects the pure Python/numpy fallback path
(same code, uncompiled).  benchmarks/bench_kernels.py compares the two.
"""

import cmath
import math
import os

import numpy as np

_TRUTHY = ("1", "true", "yes", "on")
NUMBA_DISABLED = os.environ.get("HYPERBC_NO_NUMBA", "").lower() in _TRUTHY

if not NUMBA_DISABLED:
    try:
        from numba import njit as _njit
    except ImportError:  # pragma: no cover
        NUMBA_DISABLED = True

if NUMBA_DISABLED:
    def _njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


_LOG_SQRT_2PI = 0.9189385332046727417803297364056
_LOG_PI = 1.1447298858494001741434273513531

# Lanczos g = 7, 9-term coefficient set.
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


@_njit(cache=True)
def log_gamma_right(z):
    """Lanczos log-Gamma for Re z >= 0.5."""
    zz = z - 1.0
    x = _LANCZOS[0]
    for i in range(1, 9):
        x += _LANCZOS[i] / (zz + i)
    t = zz + 7.5
    return _LOG_SQRT_2PI + (zz + 0.5) * cmath.log(t) - t + cmath.log(x)


@_njit(cache=True)
def log_gamma(z):
    """Complex log-Gamma; reflection formula for Re z < 0.5.

    The branch agrees with the principal one up to multiples of 2*pi*i
    in the reflected half-plane; exp(log_gamma(z)) is always Gamma(z).
    """
    if z.real >= 0.5:
        return log_gamma_right(z)
    return _LOG_PI - cmath.log(cmath.sin(math.pi * z)) - log_gamma_right(1.0 - z)


@_njit(cache=True)
def hyp2f1_series(a, b, c, w, maxterms):
    """Direct Gauss series sum_{k} (a)_k (b)_k / ((c)_k k!) w^k for |w| < 1.

    Returns (value, nterms); nterms == maxterms signals non-convergence.
    """
    s = 1.0 + 0.0j
    term = 1.0 + 0.0j
    aw = abs(w)
    k = 0
    while k < maxterms:
        ratio = (a + k) * (b + k) / ((c + k) * (k + 1.0)) * w
        term = term * ratio
        s += term
        k += 1
        if term == 0.0:
            return s, k
        rr = abs(ratio)
        if rr < 1.0:
            q = rr if rr > aw else aw
            if q < 1.0 and abs(term) * q / (1.0 - q) <= 1e-16 * abs(s):
                return s, k
    return s, maxterms


@_njit(cache=True)
def bessel_series(alpha, x, maxterms):
    """Normalized Bessel series sum_m (-x^2/4)^m / (m! (alpha+1)_m)."""
    q = -(x * x) / 4.0
    s = 1.0 + 0.0j
    term = 1.0 + 0.0j
    m = 0
    while m < maxterms:
        term = term * q / ((m + 1.0) * (alpha + m + 1.0))
        s += term
        m += 1
        if abs(term) <= 1e-17 * abs(s):
            return s, m
    return s, maxterms


@_njit(cache=True)
def ryser_permanent(a):
    """Permanent of a complex square matrix via Ryser's formula (Gray code)."""
    n = a.shape[0]
    if n == 0:
        return 1.0 + 0.0j
    row = np.zeros(n, dtype=np.complex128)
    total = 0.0 + 0.0j
    g_prev = 0
    nbits = 0
    for k in range(1, 1 << n):
        g = k ^ (k >> 1)
        diff = g ^ g_prev
        j = 0
        while (diff >> j) & 1 == 0:
            j += 1
        if (g >> j) & 1:
            nbits += 1
            for i in range(n):
                row[i] += a[i, j]
        else:
            nbits -= 1
            for i in range(n):
                row[i] -= a[i, j]
        g_prev = g
        prod = 1.0 + 0.0j
        for i in range(n):
            prod *= row[i]
        if (n - nbits) % 2 == 0:
            total += prod
        else:
            total -= prod
    return total


@_njit(cache=True)
def hc_coeffs(mu_vecs, starts, roots_of, js_of, srcs_of, root_vecs, kw, lam, rho):
    """Harish-Chandra series coefficients by the height recursion.

    mu_vecs: integer lattice points as float vectors, sorted by height,
    index 0 is the origin.  (starts, roots_of, js_of, srcs_of) flatten,
    per point p, the contributing triples (root, j, index of mu - j*root).
    lam and rho are in Euclidean coordinates.  Returns (coeffs, min |denom|).
    """
    npts, n = mu_vecs.shape
    out = np.zeros(npts, dtype=np.complex128)
    out[0] = 1.0 + 0.0j
    minden = 1e300
    for p in range(1, npts):
        mm = 0.0
        lm = 0.0 + 0.0j
        for i in range(n):
            mm += mu_vecs[p, i] * mu_vecs[p, i]
            lm += lam[i] * mu_vecs[p, i]
        den = mm - 2.0 * lm
        ad = abs(den)
        if ad < minden:
            minden = ad
        if ad == 0.0:
            # exact resonance; caller rejects via the returned minimum
            out[p] = 0.0 + 0.0j
            continue
        acc = 0.0 + 0.0j
        for e in range(starts[p], starts[p + 1]):
            r = roots_of[e]
            j = js_of[e]
            ip = 0.0 + 0.0j
            for i in range(n):
                ip += root_vecs[r, i] * (
                    lam[i] - rho[i] - mu_vecs[p, i] + j * root_vecs[r, i]
                )
            acc += kw[r] * ip * out[srcs_of[e]]
        out[p] = -2.0 * acc / den
    return out, minden
