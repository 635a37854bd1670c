"""Independent verification path: the Harish-Chandra series
sum_mu Gamma_mu a^(lambda - rho - mu) with coefficients from the linear
recursion obtained by substituting the series into the second-order
hypergeometric equation.  Works for arbitrary complex multiplicities,
not only k_m in {0, 1}."""

import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from . import _kernels
from .errors import ChamberError, SmallDenominator, TailTooLarge

DEFAULT_ORDER = 12
#: genericity margin on |(mu,mu) - 2(lambda,mu)| in units of max(1, |lambda|^2)
DENOM_MARGIN = 1e-8


@dataclass(frozen=True)
class RootData:
    """BC_n positive roots and root-lattice shells up to a height cap,
    with the flattened recursion index tables the kernel consumes."""

    n: int
    order: int
    mu_vecs: np.ndarray  # (P, n) integer lattice points, height order
    heights: np.ndarray  # (P,)
    starts: np.ndarray
    roots_of: np.ndarray
    js_of: np.ndarray
    srcs_of: np.ndarray
    root_vecs: np.ndarray  # (R, n)
    root_kinds: tuple  # "s", "l", or "m" per root


def _positive_roots(n: int):
    vecs, kinds = [], []
    for p in range(n):
        e = np.zeros(n)
        e[p] = 1.0
        vecs.append(e)
        kinds.append("s")
        vecs.append(2.0 * e)
        kinds.append("l")
    for i in range(n):
        for j in range(i + 1, n):
            for s in (-1.0, 1.0):
                v = np.zeros(n)
                v[i] = 1.0
                v[j] = s
                vecs.append(v)
                kinds.append("m")
    return np.array(vecs), tuple(kinds)


def _lattice_points(n: int, order: int):
    """Lattice points mu = sum c_i alpha_i (simple-root coefficients c_i >= 0,
    sum c_i <= order) as integer vectors, sorted by height then lexicographic."""
    pts = []
    for c in product(range(order + 1), repeat=n):
        h = sum(c)
        if h > order:
            continue
        v = [c[0]] + [c[i] - c[i - 1] for i in range(1, n)]
        pts.append((h, tuple(v)))
    pts.sort()
    heights = np.array([h for h, _ in pts], dtype=np.int64)
    vecs = np.array([v for _, v in pts], dtype=float)
    return vecs, heights


def _in_lattice(v, n):
    """v is in Q iff its partial sums (the simple-root coefficients) are
    non-negative integers."""
    s = 0.0
    for i in range(n):
        s += v[i]
        if s < -0.5 or abs(s - round(s)) > 1e-9:
            return False
    return True


_ROOT_DATA_CACHE: dict = {}


def root_data(n: int, order: int) -> RootData:
    key = (n, order)
    if key in _ROOT_DATA_CACHE:
        return _ROOT_DATA_CACHE[key]
    root_vecs, kinds = _positive_roots(n)
    mu_vecs, heights = _lattice_points(n, order)
    index = {tuple(int(round(x)) for x in v): i for i, v in enumerate(mu_vecs)}
    starts = [0]
    roots_of, js_of, srcs_of = [], [], []
    for v in mu_vecs:
        for r, alpha in enumerate(root_vecs):
            j = 1
            while True:
                w = v - j * alpha
                if not _in_lattice(w, n):
                    break
                keyw = tuple(int(round(x)) for x in w)
                src = index.get(keyw)
                if src is None:
                    break
                roots_of.append(r)
                js_of.append(j)
                srcs_of.append(src)
                j += 1
        starts.append(len(roots_of))
    data = RootData(
        n=n,
        order=order,
        mu_vecs=mu_vecs,
        heights=heights,
        starts=np.array(starts, dtype=np.int64),
        roots_of=np.array(roots_of, dtype=np.int64),
        js_of=np.array(js_of, dtype=np.float64),
        srcs_of=np.array(srcs_of, dtype=np.int64),
        root_vecs=root_vecs,
        root_kinds=kinds,
    )
    _ROOT_DATA_CACHE[key] = data
    return data


@dataclass(frozen=True)
class HCCoeffTable:
    """Series coefficients Gamma_mu for height(mu) <= order."""

    n: int
    order: int
    lam: np.ndarray  # lambda_j coordinates
    rho: np.ndarray  # rho_j coordinates
    data: RootData
    coeffs: np.ndarray

    def coeff(self, simple_coeffs) -> complex:
        """Gamma_mu for mu given by simple-root coefficients."""
        c = tuple(simple_coeffs)
        v = [c[0]] + [c[i] - c[i - 1] for i in range(1, self.n)]
        key = tuple(int(x) for x in v)
        idx = {tuple(int(round(y)) for y in w): i for i, w in enumerate(self.data.mu_vecs)}
        return complex(self.coeffs[idx[key]])


def _rho_coords(k) -> np.ndarray:
    ks, km, kl = complex(k.k_s), complex(k.k_m), complex(k.k_l)
    n = k.n
    return np.array(
        [ks + 2.0 * kl + 2.0 * (n - j) * km for j in range(1, n + 1)], dtype=complex
    )


def compute_coeffs(k, lam, order: int = DEFAULT_ORDER) -> HCCoeffTable:
    """Coefficients of the recursion
    ((mu,mu) - 2(lambda,mu)) Gamma_mu =
        -2 sum_{alpha>0} k_alpha sum_{j>=1} (alpha, lambda-rho-mu+j alpha)
        Gamma_{mu-j alpha}
    in Euclidean coordinates, with Gamma_0 = 1.

    k needs attributes k_s, k_m, k_l, n; k_m may be any complex number here.
    lam is in the lambda_j = (lambda, 2 e_j) coordinates."""
    lam = np.asarray(getattr(lam, "lam", lam), dtype=complex)
    n = k.n
    data = root_data(n, order)
    kw = np.array(
        [
            {"s": complex(k.k_s), "l": complex(k.k_l), "m": complex(k.k_m)}[kind]
            for kind in data.root_kinds
        ],
        dtype=complex,
    )
    rho_c = _rho_coords(k)
    lam_e = lam / 2.0  # Euclidean coordinates
    rho_e = rho_c / 2.0
    coeffs, minden = _kernels.hc_coeffs(
        data.mu_vecs,
        data.starts,
        data.roots_of,
        data.js_of,
        data.srcs_of,
        data.root_vecs,
        kw,
        np.ascontiguousarray(lam_e),
        np.ascontiguousarray(rho_e),
    )
    scale = max(1.0, float(np.max(np.abs(lam_e)) ** 2))
    if minden <= DENOM_MARGIN * scale:
        raise SmallDenominator(
            f"genericity margin {minden:.3e} below {DENOM_MARGIN * scale:.3e}"
        )
    return HCCoeffTable(n=n, order=order, lam=lam, rho=rho_c, data=data, coeffs=coeffs)


@dataclass(frozen=True)
class SeriesValue:
    value: complex
    tail_bound: float


def series_eval(table: HCCoeffTable, t, tail_tol: float = 1e-10) -> SeriesValue:
    """sum_{height(mu) <= N} Gamma_mu exp((lambda - rho - mu)(log a_t)) with
    a last-shell geometric tail estimate.  t must be deep enough in the
    chamber for the estimate to come in under tail_tol (relative)."""
    t = np.asarray(getattr(t, "t", t), dtype=float)
    if not (np.all(np.diff(t) < 0.0) and t[-1] > 0.0):
        raise ChamberError(f"t = {t} not in the open chamber")
    two_t = 2.0 * t
    lead = np.exp((table.lam - table.rho) @ (t + 0.0j))
    damp = np.exp(-table.data.mu_vecs @ two_t)
    terms = table.coeffs * damp
    value = lead * np.sum(terms)
    last = table.data.heights == table.order
    g = min(
        [2.0 * (t[i] - t[i + 1]) for i in range(len(t) - 1)] + [2.0 * t[-1]]
    )
    shell = float(np.sum(np.abs(terms[last]))) * abs(lead)
    tail = shell * math.exp(-g) / max(1e-300, 1.0 - math.exp(-g))
    rel_tail = tail / max(1e-300, abs(value))
    if rel_tail > tail_tol:
        raise TailTooLarge(
            f"relative tail estimate {rel_tail:.3e} exceeds {tail_tol:.1e}"
        )
    return SeriesValue(value=complex(value), tail_bound=tail)
