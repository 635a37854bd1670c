"""Truncated exponential series: coefficient recursion, lattice
bookkeeping, tail control, and agreement with the independent rank-one
evaluation through the Gauss function."""

import numpy as np
import pytest

from hyperbc.errors import ChamberError, SmallDenominator, TailTooLarge
from hyperbc.hcseries import (
    _in_lattice,
    _lattice_points,
    compute_coeffs,
    root_data,
    series_eval,
)
from hyperbc.jacobi import jacobi_phi_asymptotic
from hyperbc.rootsystem import MultiplicityBC, rho


def rel(a, b):
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


class TestLattice:
    def test_membership(self):
        assert _in_lattice(np.array([1.0, 0.0]), 2)
        assert _in_lattice(np.array([1.0, -1.0]), 2)  # e_1 - e_2
        assert _in_lattice(np.array([0.0, 1.0]), 2)  # e_2 = 0 (e_1 - e_2) + 1 e_2
        assert not _in_lattice(np.array([-1.0, 0.0]), 2)
        assert not _in_lattice(np.array([0.5, 0.5]), 2)

    def test_counts(self):
        vecs, heights = _lattice_points(2, 4)
        # simple-root coefficient tuples with c_1 + c_2 <= 4
        assert len(vecs) == 15
        assert heights[0] == 0 and heights[-1] == 4

    def test_sorted_by_height(self):
        _, heights = _lattice_points(3, 5)
        assert np.all(np.diff(heights) >= 0)

    def test_root_data_tables_consistent(self):
        data = root_data(2, 6)
        assert data.starts[-1] == len(data.roots_of) == len(data.srcs_of)
        assert len(data.root_vecs) == 2 * 2 + 2  # short, long, two middle


class TestCoefficients:
    def test_leading_coefficient(self):
        k = MultiplicityBC(1.0, 1, 0.5, 2)
        table = compute_coeffs(k, [2.55, 1.07], order=6)
        assert table.coeff([0, 0]) == 1.0 + 0.0j

    def test_rank_one_matches_gauss_evaluation(self):
        # the series must reproduce the independently computed rank-one
        # solution with e^((lambda - rho) t) normalization
        k = MultiplicityBC(1.0, 1, 0.5, 1)
        lam = 2.3
        table = compute_coeffs(k, [lam], order=30)
        for t in (2.0, 2.5, 3.0):
            got = series_eval(table, [t], tail_tol=1e-8).value
            ref = jacobi_phi_asymptotic(k.jacobi, lam, t)
            assert rel(got, ref) < 1e-10

    def test_generic_multiplicity_accepted(self):
        # the recursion itself is not restricted to integer middle values
        class K:
            k_s, k_m, k_l, n = 1.0, 0.37, 0.5, 2

        table = compute_coeffs(K(), [2.55, 1.07], order=4)
        assert np.isfinite(table.coeffs).all()

    def test_degenerate_lambda_rejected(self):
        # lambda = (3, 1) hits a resonance: the quadratic denominator
        # vanishes on the lattice point e_1 + e_2 doubled
        k = MultiplicityBC(1.0, 1, 0.5, 2)
        with pytest.raises(SmallDenominator):
            compute_coeffs(k, [3.0, 1.0], order=6)


class TestSeriesEval:
    def test_chamber_required(self):
        k = MultiplicityBC(1.0, 1, 0.5, 2)
        table = compute_coeffs(k, [2.55, 1.07], order=6)
        with pytest.raises(ChamberError):
            series_eval(table, [0.4, 1.0])

    def test_tail_rejected_when_shallow(self):
        k = MultiplicityBC(1.0, 1, 0.5, 2)
        table = compute_coeffs(k, [2.55, 1.07], order=6)
        with pytest.raises(TailTooLarge):
            series_eval(table, [0.9, 0.4], tail_tol=1e-10)

    def test_tail_bound_honest(self):
        # the reported bound must dominate the actual truncation error
        k = MultiplicityBC(1.0, 1, 0.5, 2)
        lam = [2.55, 1.07]
        lo = compute_coeffs(k, lam, order=10)
        hi = compute_coeffs(k, lam, order=22)
        t = [2.7, 1.2]
        sv = series_eval(lo, t, tail_tol=1e-2)
        ref = series_eval(hi, t, tail_tol=1e-10).value
        assert abs(sv.value - ref) <= 2.0 * sv.tail_bound

    def test_leading_exponential(self):
        k = MultiplicityBC(1.0, 1, 0.5, 2)
        lam = np.array([2.55, 1.07])
        table = compute_coeffs(k, lam, order=12)
        t = np.array([10.0, 4.5])
        got = series_eval(table, t, tail_tol=1e-8).value
        lead = np.exp(np.sum((lam - rho(k).real) * t))
        assert rel(got, lead) < 5e-3
