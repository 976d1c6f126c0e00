import math

import numpy as np
import pytest

from spinbath.decoherence import DecoherenceFactors
from spinbath.dynamics import (
    X_PROJECTED,
    FieldConfig,
    GeneralInitialState,
    InitialProductState,
    bloch_product_to_general,
    evolve,
    evolve_ideal,
)
from spinbath.entanglement import (
    NegativityMethod,
    appendix_b_eigenvalues,
    ideal_negativity,
    negativity_closed_form,
    negativity_numeric,
    partial_transpose,
    pt_spectra,
)


def x_state_at(gamma, delta, h=0.0, t=1.0):
    return evolve(X_PROJECTED, DecoherenceFactors(gamma, delta),
                  FieldConfig(h), t)


class TestClosedForm:
    def test_maximal_entanglement(self):
        # gamma = 0, Delta = -pi/8 gives a Bell-like state, N = 1/2
        assert negativity_closed_form(0.0, -math.pi / 8).value == 0.5

    def test_infinite_dephasing(self):
        assert negativity_closed_form(math.inf, -0.3).value == 0.0

    def test_frozen_value(self):
        r = negativity_closed_form(0.01, -0.1)
        assert r.value == pytest.approx(0.16950323791816861488, rel=1e-14)

    def test_zero_point(self):
        r = negativity_closed_form(0.0, 0.0)
        assert r.value == 0.0

    def test_underflow_clamp(self):
        # 16*gamma > 750 must not raise or produce junk
        r = negativity_closed_form(100.0, -0.4)
        assert r.value == 0.0
        assert sum(r.eigenvalues) == pytest.approx(1.0, abs=1e-12)

    def test_negative_gamma_rejected(self):
        with pytest.raises(ValueError):
            negativity_closed_form(-0.1, 0.0)


class TestAppendixB:
    def test_frozen_spectrum(self):
        lams = appendix_b_eigenvalues(0.3, -0.7)
        oracle = (0.25781411551354905376, -0.0098715522758040609696,
                  0.56445202232691530623, 0.18760541443533970098)
        assert np.allclose(lams, oracle, atol=1e-15)

    def test_degenerate_origin(self):
        lam1, lam2, lam3, lam4 = appendix_b_eigenvalues(0.0, 0.0)
        assert lam1 == 0.0 and lam2 == 0.0
        assert lam3 + lam4 == pytest.approx(1.0, abs=1e-15)

    def test_trace_one(self):
        rng = np.random.default_rng(1)
        for _ in range(200):
            lams = appendix_b_eigenvalues(rng.uniform(0, 3), -rng.uniform(0, 3))
            assert sum(lams) == pytest.approx(1.0, abs=1e-12)

    def test_only_lambda2_negative(self):
        rng = np.random.default_rng(2)
        for _ in range(500):
            lam1, lam2, lam3, lam4 = appendix_b_eigenvalues(
                rng.uniform(0, 2), -rng.uniform(0, 2))
            assert lam1 >= -1e-15 and lam3 >= -1e-15 and lam4 >= -1e-15
            assert lam3 >= lam4

    def test_bell_point(self):
        lams = appendix_b_eigenvalues(0.0, -math.pi / 8)
        assert lams[1] == pytest.approx(-0.5, abs=1e-15)


class TestNumericPartialTranspose:
    def test_product_state_separable(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            init = bloch_product_to_general(InitialProductState(
                rng.uniform(0, math.pi), rng.uniform(0, math.pi),
                rng.uniform(0, 2 * math.pi), rng.uniform(0, 2 * math.pi)))
            state = evolve_ideal(init, 0.0)
            assert negativity_numeric(state).value == 0.0

    def test_bell_like_state(self):
        state = evolve_ideal(X_PROJECTED, -math.pi / 8)
        assert negativity_numeric(state).value == pytest.approx(0.5, abs=1e-13)

    def test_matches_closed_form(self):
        state = x_state_at(0.01, -0.1)
        n = negativity_numeric(state)
        c = negativity_closed_form(0.01, -0.1)
        assert abs(n.value - c.value) <= 1e-10

    def test_oracle_equivalence_random(self):
        rng = np.random.default_rng(4)
        for _ in range(300):
            g, d = rng.uniform(0, 2), -rng.uniform(0, 2)
            n = negativity_numeric(x_state_at(g, d))
            c = negativity_closed_form(g, d)
            assert abs(n.value - c.value) <= 1e-10
            assert np.allclose(n.eigenvalues, c.eigenvalues, atol=1e-10)

    def test_spectrum_matches_lapack(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            c = rng.normal(size=4) + 1j * rng.normal(size=4)
            c /= np.linalg.norm(c)
            state = evolve(GeneralInitialState(tuple(c)),
                           DecoherenceFactors(rng.uniform(0, 1), -rng.uniform(0, 1)),
                           FieldConfig(rng.normal()), rng.uniform(0, 4))
            ours = pt_spectra(state.rho)
            lapack = np.linalg.eigvalsh(partial_transpose(state.rho))
            assert np.allclose(ours, lapack, atol=1e-12)

    def test_ppt_iff_zero(self):
        rng = np.random.default_rng(6)
        for _ in range(200):
            g, d = rng.uniform(0, 2), -rng.uniform(0, 2)
            r = negativity_numeric(x_state_at(g, d))
            if r.value == 0.0:
                assert min(r.eigenvalues) >= -1e-10
            else:
                assert min(r.eigenvalues) < -1e-13

    def test_field_invariance(self):
        rng = np.random.default_rng(7)
        for _ in range(30):
            g, d, t = rng.uniform(0, 1), -rng.uniform(0, 1), rng.uniform(0, 5)
            n0 = negativity_numeric(x_state_at(g, d, h=0.0, t=t)).value
            n1 = negativity_numeric(x_state_at(g, d, h=rng.normal() * 5, t=t)).value
            assert abs(n0 - n1) <= 1e-10

    def test_range_bound(self):
        rng = np.random.default_rng(8)
        for _ in range(100):
            c = rng.normal(size=4) + 1j * rng.normal(size=4)
            c /= np.linalg.norm(c)
            state = evolve_ideal(GeneralInitialState(tuple(c)), -rng.uniform(0, 3))
            v = negativity_numeric(state).value
            assert 0.0 <= v <= 0.5 + 1e-12

    def test_method_tag(self):
        assert negativity_numeric(x_state_at(0.1, -0.1)).method \
            is NegativityMethod.NUMERIC_PT


class TestIdealNegativity:
    def test_formula(self):
        rng = np.random.default_rng(9)
        for _ in range(100):
            d = -rng.uniform(0, 3)
            state = evolve_ideal(X_PROJECTED, d)
            assert abs(negativity_numeric(state).value
                       - ideal_negativity(d)) <= 1e-12

    def test_quarter_phase(self):
        assert ideal_negativity(-math.pi / 8) == pytest.approx(0.5, abs=1e-15)


class TestPartialTranspose:
    def test_involution(self):
        rng = np.random.default_rng(10)
        m = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        assert np.array_equal(partial_transpose(partial_transpose(m)), m)

    def test_trace_preserved(self):
        state = x_state_at(0.2, -0.4)
        assert np.trace(partial_transpose(state.rho)) == pytest.approx(1.0)

    def test_known_swap(self):
        # element ((m1,m2),(n1,n2)) moves to ((m1,n2),(n1,m2))
        m = np.zeros((4, 4), complex)
        m[0, 3] = 1.0  # ((+1,+1),(-1,-1)) -> ((+1,-1),(-1,+1)) = (1,2)
        pt = partial_transpose(m)
        assert pt[1, 2] == 1.0 and pt[0, 3] == 0.0
