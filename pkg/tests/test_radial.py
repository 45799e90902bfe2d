import math

import numpy as np
import pytest

from nlosc import radial
from nlosc.errors import LambdaTooSmall, NotAdmissible, OutsideDomain
from nlosc.oracle import radial_residual
from nlosc.orthopoly import hyp2f1_terminating
from nlosc.params import make_model
from nlosc.spectrum import bound_state_count, energy_dimless, is_admissible


class TestWeight:
    def test_lambda_zero(self):
        assert radial.weight(1.0, 0.0) == 1.0

    def test_positive_lambda(self):
        assert radial.weight(2.0, 0.75) == pytest.approx(2.0, rel=1e-15)

    def test_endpoint_singular(self):
        with pytest.raises(OutsideDomain):
            radial.weight(1.0, -1.0)

    def test_origin_rejected(self):
        with pytest.raises(OutsideDomain):
            radial.weight(0.0, 0.5)


class TestBuildState:
    def test_ground_state_negative(self):
        st = radial.build_state(0, 0, -1.0)
        assert st.poly.coeffs == (1.0,)
        assert st.prefactor_exponent == pytest.approx(0.5, abs=0)
        assert st.e == 1.5

    def test_ground_state_positive_l2(self):
        st = radial.build_state(0, 2, 0.1)
        assert st.poly.coeffs == (1.0,)
        assert st.L_power == 2
        assert st.prefactor_exponent == pytest.approx(-5.0, rel=1e-15)

    def test_rejects_inadmissible(self):
        with pytest.raises(NotAdmissible):
            radial.build_state(3, 0, 0.4)

    def test_rejects_tiny_lambda(self):
        with pytest.raises(LambdaTooSmall):
            radial.build_state(0, 0, 1e-12)


class TestEvalState:
    def test_endpoint_zero(self):
        st = radial.build_state(0, 0, -1.0)
        assert radial.eval_state(st, 1.0) == 0.0

    def test_origin_value(self):
        st = radial.build_state(0, 0, -1.0)
        assert radial.eval_state(st, 0.0) == pytest.approx(1.0, abs=0)

    def test_origin_vanishes_for_positive_l(self):
        st = radial.build_state(1, 2, -0.5)
        assert radial.eval_state(st, 0.0) == 0.0

    def test_ground_state_closed_form(self):
        st = radial.build_state(0, 0, -1.0)
        for y in (0.2, 0.5, 0.9):
            assert radial.eval_state(st, y) == pytest.approx(math.sqrt(1 - y * y), rel=1e-14)

    def test_beyond_endpoint_rejected(self):
        st = radial.build_state(0, 0, -1.0)
        with pytest.raises(OutsideDomain):
            radial.eval_state(st, 1.5)

    @pytest.mark.parametrize("n,L,Lambda", [(1, 0, 0.1), (2, 1, -0.5), (3, 0, -1.0)])
    def test_hypergeometric_cross_evaluation(self, n, L, Lambda):
        st = radial.build_state(n, L, Lambda)
        for y in (0.25, 0.5, 0.75):
            w = Lambda * y * y + 1.0
            hyp = hyp2f1_terminating(n, n + L + 1.0 - 1.0 / Lambda, L + 1.5, -Lambda * y * y)
            direct = y**L * w ** st.prefactor_exponent * hyp
            ratio = radial.eval_state(st, y) / direct
            ratio0 = radial.eval_state(st, 0.25) / (
                0.25**L
                * (Lambda * 0.0625 + 1.0) ** st.prefactor_exponent
                * hyp2f1_terminating(n, n + L + 1.0 - 1.0 / Lambda, L + 1.5, -Lambda * 0.0625)
            )
            assert ratio == pytest.approx(ratio0, rel=1e-12)

    def test_derivatives_match_finite_differences(self):
        st = radial.build_state(2, 1, -0.5)
        y, h = 0.6, 1e-5
        r, r1, r2 = radial.eval_state_with_derivatives(st, y)
        assert r == pytest.approx(radial.eval_state(st, y), rel=1e-14)
        fd1 = (radial.eval_state(st, y + h) - radial.eval_state(st, y - h)) / (2 * h)
        fd2 = (radial.eval_state(st, y + h) - 2 * r + radial.eval_state(st, y - h)) / h**2
        assert r1 == pytest.approx(fd1, rel=1e-8)
        assert r2 == pytest.approx(fd2, rel=1e-5)


class TestOdeResidual:
    @pytest.mark.parametrize("Lambda", [-2.0, -1.0, -0.5, 0.05, 0.1])
    @pytest.mark.parametrize("L", [0, 1, 2])
    def test_residual_small_everywhere(self, Lambda, L):
        count = bound_state_count(Lambda, L).count
        n_states = 4 if count is None else min(4, count)
        y_hi = math.sqrt(1.0 / abs(Lambda)) * 0.999 if Lambda < 0 else 8.0
        ys = np.linspace(0.01, y_hi, 100)
        for n in range(n_states):
            st = radial.build_state(n, L, Lambda)

            def f(y):
                return radial.eval_state_with_derivatives(st, y)

            worst = max(radial_residual(f, float(y), st.e, Lambda, L) for y in ys)
            assert worst < 1e-9


class TestBoundaryBehavior:
    @pytest.mark.parametrize("n,L,Lambda", [(0, 0, -1.0), (2, 1, -0.5), (1, 2, 0.05), (3, 0, 0.05)])
    def test_small_y_scaling(self, n, L, Lambda):
        st = radial.build_state(n, L, Lambda)
        r3 = radial.eval_state(st, 1e-3) / 1e-3**L
        r4 = radial.eval_state(st, 1e-4) / 1e-4**L
        assert r4 != 0.0
        assert r3 == pytest.approx(r4, rel=1e-4)

    @pytest.mark.parametrize("n,L,Lambda", [(0, 0, -1.0), (1, 1, -0.5), (2, 0, 0.05)])
    def test_norm_integrand_origin_slope(self, n, L, Lambda):
        st = radial.build_state(n, L, Lambda)
        ys = np.array([1e-4, 1e-3])
        vals = np.array([radial.eval_state(st, float(y)) ** 2 * radial.weight(float(y), Lambda) for y in ys])
        slope = np.log(vals[1] / vals[0]) / np.log(ys[1] / ys[0])
        assert slope == pytest.approx(2 * L + 2, abs=0.01)

    def test_positive_lambda_far_decay(self):
        # tails fall off as the power y^(L - 1/Lambda + 2n); the near-threshold
        # n=4 state decays only as y^-2, so the numeric check is the measured
        # log-log slope rather than a fixed smallness factor
        for n, L in [(0, 0), (2, 1), (4, 0)]:
            if not is_admissible(n, L, 0.1):
                continue
            st = radial.build_state(n, L, 0.1)
            exponent = L - 1.0 / 0.1 + 2 * n
            assert exponent < 0
            r50 = radial.eval_state(st, 50.0)
            r100 = radial.eval_state(st, 100.0)
            slope = math.log(abs(r100 / r50)) / math.log(2.0)
            assert slope == pytest.approx(exponent, abs=0.1)
            assert abs(r100) < abs(r50)


class TestSecondSolution:
    def test_singular_witness_l0(self):
        Lambda, L = -1.0, 0
        e = energy_dimless(0, L, Lambda)
        vals = [y ** (L + 1) * radial.second_solution(L, Lambda, e, y) for y in (1e-3, 1e-4)]
        assert vals[1] != 0.0
        assert vals[0] == pytest.approx(vals[1], rel=1e-3)

    def test_leading_power_l2(self):
        Lambda, L = -0.5, 2
        e = energy_dimless(0, L, Lambda)
        g3 = radial.second_solution(L, Lambda, e, 1e-3)
        g4 = radial.second_solution(L, Lambda, e, 2e-3)
        assert g3 / g4 == pytest.approx(2.0**3, rel=1e-2)

    def test_independent_of_first_solution(self):
        Lambda, L = -1.0, 0
        st = radial.build_state(1, L, Lambda)
        ratios = [
            radial.second_solution(L, Lambda, st.e, y) / radial.eval_state(st, y) for y in (0.3, 0.6)
        ]
        assert abs(ratios[0] - ratios[1]) > 1e-3 * max(abs(ratios[0]), abs(ratios[1]))


class TestInnerProductAndNorm:
    def test_orthogonality_negative_lambda(self):
        a = radial.normalize(radial.build_state(0, 0, -1.0))
        b = radial.normalize(radial.build_state(1, 0, -1.0))
        assert abs(radial.inner_product(a, b).value) < 1e-8

    def test_orthogonality_positive_lambda(self):
        a = radial.normalize(radial.build_state(0, 0, 0.05))
        b = radial.normalize(radial.build_state(1, 0, 0.05))
        assert abs(radial.inner_product(a, b).value) < 1e-8

    def test_norm_positive(self):
        st = radial.build_state(2, 1, -0.5)
        assert radial.inner_product(st, st).value > 0

    def test_normalize_unit_and_idempotent(self):
        st = radial.normalize(radial.build_state(1, 1, -1.0))
        assert radial.inner_product(st, st).value == pytest.approx(1.0, abs=1e-8)
        again = radial.normalize(st)
        assert again.norm_const == pytest.approx(st.norm_const, rel=1e-10)

    def test_normalize_sign_convention(self):
        for n in range(4):
            st = radial.normalize(radial.build_state(n, 0, -1.0))
            assert radial.eval_state(st, 1e-3) > 0

    def test_edge_norm_integrable(self):
        # at Lambda = -3 the norm integrand is unbounded at the endpoint but
        # its exponent -1/6 stays above -1
        st = radial.normalize(radial.build_state(0, 0, -3.0))
        res = radial.inner_product(st, st)
        assert res.value == pytest.approx(1.0, abs=1e-10)
        assert res.est_abs_error < 1e-10

    def test_mismatched_states_rejected(self):
        a = radial.build_state(0, 0, -1.0)
        b = radial.build_state(0, 1, -1.0)
        with pytest.raises(ValueError):
            radial.inner_product(a, b)


class TestGramMatrix:
    def test_identity_negative_lambda(self):
        g = radial.gram_matrix(0, -1.0, 3)
        assert g.shape == (4, 4)
        assert np.max(np.abs(g - np.eye(4))) < 1e-8

    def test_truncation(self):
        g = radial.gram_matrix(0, 0.1, 10)
        assert g.shape == (5, 5)

    def test_single_state(self):
        g = radial.gram_matrix(0, -0.5, 0)
        assert g.shape == (1, 1)
        assert g[0, 0] == pytest.approx(1.0, abs=1e-10)

    def test_no_states_raises(self):
        with pytest.raises(NotAdmissible):
            radial.gram_matrix(0, 2.0, 3)


class TestEffectivePotential:
    def test_pure_harmonic(self):
        p = make_model(1.3, 0.7, 0.0)
        r = 1.9
        assert radial.effective_potential(r, p, 0) == pytest.approx(0.5 * 1.3 * 0.49 * r * r, rel=1e-14)

    def test_example_value(self):
        # V = (1/2)*1*1/(1+1) = 1/4 plus centrifugal L(L+1)*(lam*r^2+1)/(2*m*r^2) = 2
        p = make_model(1.0, 1.0, 1.0)
        assert radial.effective_potential(1.0, p, 1) == pytest.approx(2.25, rel=1e-14)

    def test_mass_form_agreement(self):
        rng = np.random.default_rng(42)
        for _ in range(50):
            p = make_model(rng.uniform(0.5, 2), rng.uniform(0.5, 2), rng.uniform(-0.2, 2))
            r = rng.uniform(0.1, 1.5)
            L = int(rng.integers(0, 4))
            v1 = radial.effective_potential(r, p, L)
            v2 = radial.effective_potential_mass_form(r, p, L)
            assert v1 == pytest.approx(v2, rel=1e-13)

    def test_swap_symmetry(self):
        # V_eff = (alpha^2*M*r^2 + L(L+1)*hbar^2/(M*r^2))/2 is invariant under
        # swapping alpha^2 <-> L(L+1)*hbar^2 together with M*r^2 <-> 1/(M*r^2)
        rng = np.random.default_rng(7)
        for _ in range(50):
            p = make_model(rng.uniform(0.5, 2), rng.uniform(0.5, 2), rng.uniform(-0.2, 2), rng.uniform(0.5, 2))
            r = rng.uniform(0.1, 1.5)
            L = int(rng.integers(0, 4))
            w = p.lam * r * r + 1.0
            mr2 = (p.m / w) * r * r
            a2 = p.alpha**2
            cf = L * (L + 1) * p.hbar**2
            direct = 0.5 * (a2 * mr2 + cf / mr2)
            swapped = 0.5 * (cf / mr2 + a2 * mr2)
            assert radial.effective_potential(r, p, L) == pytest.approx(direct, rel=1e-13)
            assert direct == swapped

    def test_domain_violation(self):
        p = make_model(1.0, 1.0, -1.0)
        with pytest.raises(OutsideDomain):
            radial.effective_potential(2.0, p, 0)


class TestUTransform:
    @pytest.mark.parametrize("n,L,Lambda", [(0, 0, -1.0), (2, 0, -0.5), (1, 2, -1.0), (3, 1, 0.05)])
    def test_residual_small(self, n, L, Lambda):
        st = radial.build_state(n, L, Lambda)
        assert radial.u_transform_residual(st) < 1e-9
