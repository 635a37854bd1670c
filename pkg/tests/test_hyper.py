"""Closed-form evaluators: determinant/permanent forms, product form,
partial Weyl-sum spherical function, rational limit, and the confluent
fallback for coinciding spectral parameters.

Frozen references computed with an arbitrary-precision oracle using the
same closed formulas (independent implementation, 40+ digits); confluent
references via the oracle at a split of 1e-18."""

import numpy as np
import pytest

from hyperbc.errors import (
    ChamberError,
    DegenerateLambda,
    DomainError,
    HalfPlaneError,
    ParameterError,
)
from hyperbc.hyper import (
    EvalRequest,
    bessel_bcn,
    evaluate,
    f_determinant,
    f_permanent,
    f_theta,
    phi_product,
)
from hyperbc.jacobi import jacobi_phi
from hyperbc.rootsystem import MultiplicityBC, apply_weyl, weyl_elements

K1 = MultiplicityBC(k_s=1.0, k_m=1, k_l=0.5, n=2)
K0 = MultiplicityBC(k_s=1.0, k_m=0, k_l=0.5, n=2)
K1_3 = MultiplicityBC(k_s=1.0, k_m=1, k_l=0.5, n=3)

LAM2 = np.array([2.55, 1.07])
T2 = np.array([1.0, 0.4])

F2_REF = 0.5783136644834236
F2_31_REF = 0.6444087364136890  # lambda = (3, 1)
F3_REF = 0.17024906026525241  # lambda = (4.15, 2.55, 1.07), t = (1.5, 0.9, 0.4)
F2_SMALL_REF = 0.9930319499512551  # t = (0.1, 0.06)
F3_SMALL_REF = 0.9896070008805628  # t = (0.1, 0.07, 0.035)
FPERM2_REF = 0.9932591963032883
PHIPROD_REF = -0.0027191113401309988  # t = (2.7, 1.2)
FTHETA2_REF = -5.058910091302564
BESS2_KM1_REF = 1.4341583026391662
BESS2_KM0_REF = 1.7096936114126717
F2_CONFLUENT_REF = 0.5869896167882035  # lambda = (2, 2)
BESS_CONFLUENT_REF = 1.4556642311438184  # lambda = (2, 2)


def rel(a, b):
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


class TestDeterminant:
    def test_rank_two_reference(self):
        assert rel(f_determinant(K1, LAM2, T2).value, F2_REF) < 1e-12

    def test_integer_lambda_reference(self):
        assert rel(f_determinant(K1, [3.0, 1.0], T2).value, F2_31_REF) < 1e-12

    def test_rank_three_reference(self):
        got = f_determinant(K1_3, [4.15, 2.55, 1.07], [1.5, 0.9, 0.4]).value
        assert rel(got, F3_REF) < 1e-12

    def test_small_t_path_matches_reference(self):
        got = f_determinant(K1, LAM2, [0.1, 0.06])
        assert rel(got.value, F2_SMALL_REF) < 1e-12
        got3 = f_determinant(K1_3, [4.15, 2.55, 1.07], [0.1, 0.07, 0.035])
        assert rel(got3.value, F3_SMALL_REF) < 1e-12

    def test_paths_agree_at_moderate_t(self):
        # the divided-difference route and the plain determinant must agree
        # where both are well-conditioned
        from hyperbc.hyper import _f_det_divided

        # t_1 = 0.8 lies above the automatic small-t threshold, so
        # f_determinant takes the plain route there; the series route is
        # still convergent (sinh^2 t_1 < 1) and must agree
        t = np.array([0.8, 0.3])
        plain = f_determinant(K1, LAM2, t).value
        direct = _f_det_divided(K1, LAM2.astype(complex), t).value
        assert rel(direct, plain) < 1e-11

    def test_rank_one_reduces_to_jacobi(self):
        k = MultiplicityBC(1.0, 1, 0.5, 1)
        got = f_determinant(k, [2.3], [0.7]).value
        assert rel(got, jacobi_phi(k.jacobi, 2.3, 0.7)) < 1e-13

    def test_wrong_multiplicity_rejected(self):
        with pytest.raises(ParameterError):
            f_determinant(K0, LAM2, T2)

    def test_chamber_required(self):
        with pytest.raises(ChamberError):
            f_determinant(K1, LAM2, [0.4, 1.0])

    def test_degenerate_lambda_rejected(self):
        with pytest.raises(DegenerateLambda):
            f_determinant(K1, [2.0, 2.0], T2)

    def test_weyl_invariance_spot(self):
        base = f_determinant(K1, LAM2, T2).value
        for w in weyl_elements(2):
            got = f_determinant(K1, apply_weyl(w, LAM2), T2).value
            assert rel(got, base) < 1e-12


class TestPermanent:
    def test_rank_two_reference(self):
        assert rel(f_permanent(K0, LAM2, T2).value, FPERM2_REF) < 1e-12

    def test_wrong_multiplicity_rejected(self):
        with pytest.raises(ParameterError):
            f_permanent(K1, LAM2, T2)

    def test_degenerate_lambda_harmless(self):
        v = f_permanent(K0, [2.0, 2.0], T2).value
        assert rel(v, jacobi_phi(K0.jacobi, 2.0, 1.0) * jacobi_phi(K0.jacobi, 2.0, 0.4)) < 1e-12


class TestProductForm:
    def test_reference(self):
        assert rel(phi_product(K1, LAM2, [2.7, 1.2]), PHIPROD_REF) < 1e-12

    def test_chamber_required(self):
        with pytest.raises(ChamberError):
            phi_product(K1, LAM2, [1.2, 2.7])

    def test_resonant_lambda_rejected(self):
        with pytest.raises(DegenerateLambda):
            phi_product(K1, [3.0, 1.0], [2.7, 1.2])


class TestPartialSphericalFunction:
    def test_reference(self):
        assert rel(f_theta(K1, LAM2, T2).value, FTHETA2_REF) < 1e-12

    def test_half_plane_required(self):
        with pytest.raises(HalfPlaneError):
            f_theta(K1, [2.55, -1.07], T2)

    def test_permutation_invariance(self):
        a = f_theta(K0, LAM2, T2).value
        b = f_theta(K0, LAM2[::-1].copy(), T2).value
        assert rel(a, b) < 1e-12


class TestBessel:
    def test_references(self):
        assert rel(bessel_bcn(K1, LAM2, T2).value, BESS2_KM1_REF) < 1e-12
        assert rel(bessel_bcn(K0, LAM2, T2).value, BESS2_KM0_REF) < 1e-12

    def test_zero_rejected(self):
        with pytest.raises(DomainError):
            bessel_bcn(K1, [2.55, 0.0], T2)

    def test_scaling_symmetry(self):
        # the rational limit depends on lambda and t through the products
        # lambda_i t_j only, up to the explicit homogeneous prefactors
        a = bessel_bcn(K1, LAM2, T2).value
        b = bessel_bcn(K1, 2.0 * LAM2, T2 / 2.0).value
        assert rel(a, b) < 1e-12


class TestEvaluate:
    def test_dispatch_permanent(self):
        req = EvalRequest(k=K0, lam=LAM2, t=T2, target="F")
        assert rel(evaluate(req).value, FPERM2_REF) < 1e-12

    def test_confluent_determinant(self):
        req = EvalRequest(k=K1, lam=np.array([2.0, 2.0]), t=T2, target="F")
        res = evaluate(req)
        assert res.degenerate_path
        assert rel(res.value, F2_CONFLUENT_REF) < 1e-7

    def test_confluent_bessel(self):
        req = EvalRequest(k=K1, lam=np.array([2.0, 2.0]), t=T2, target="BesselBC")
        res = evaluate(req)
        assert res.degenerate_path
        assert rel(res.value, BESS_CONFLUENT_REF) < 1e-7

    def test_triple_confluence_rejected(self):
        k3 = K1_3
        req = EvalRequest(k=k3, lam=np.array([2.0, 2.0, 2.0]), t=np.array([1.5, 0.9, 0.4]),
                          target="F")
        with pytest.raises(DegenerateLambda):
            evaluate(req)

    def test_unknown_target_rejected(self):
        with pytest.raises(ParameterError):
            EvalRequest(k=K1, lam=LAM2, t=T2, target="nope")

    def test_condition_estimate_positive(self):
        req = EvalRequest(k=K1, lam=LAM2, t=T2, target="F")
        assert evaluate(req).condition_estimate >= 1.0
