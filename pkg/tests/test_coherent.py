"""Ladder families and coherent-state coefficient construction."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphene_cs import (
    CUBIC,
    DomainError,
    FamilyError,
    NonConvergenceError,
    ONE,
    PhysicsConfig,
    SHIFTED,
    TOL_MAX,
    apply_annihilation,
    build_coefficients,
    c_n,
    custom_family,
    f1_consistency,
    family_by_name,
)

FAMILIES = (ONE, SHIFTED, CUBIC)

alphas = st.builds(
    complex,
    st.floats(min_value=-3.0, max_value=3.0),
    st.floats(min_value=-3.0, max_value=3.0),
)


class TestFamilies:
    def test_modifier_values(self):
        assert ONE.f(1) == 1.0 and ONE.f(7) == 1.0
        assert SHIFTED.f(1) == 0.0
        assert SHIFTED.f(4) == pytest.approx(math.sqrt(0.75), rel=1e-15)
        assert CUBIC.f(1) == 0.0 and CUBIC.f(2) == 0.0
        assert CUBIC.f(5) == pytest.approx(6.0 / math.sqrt(5.0), rel=1e-15)

    def test_first_nonzero(self):
        assert ONE.first_nonzero == 1
        assert SHIFTED.first_nonzero == 2
        assert CUBIC.first_nonzero == 3

    def test_lookup_by_name(self):
        assert family_by_name("one") is ONE
        assert family_by_name("shifted") is SHIFTED
        assert family_by_name("cubic") is CUBIC
        with pytest.raises(DomainError):
            family_by_name("quartic")

    def test_ladder_elements(self):
        assert c_n(ONE, 0) == 0.0
        assert c_n(ONE, 1) == 1.0 / math.sqrt(2.0)
        assert c_n(ONE, 9) == 3.0
        assert c_n(SHIFTED, 3) == pytest.approx(math.sqrt(2.0), rel=1e-15)
        assert c_n(CUBIC, 2) == 0.0
        assert c_n(CUBIC, 4) == pytest.approx(2.0 * math.sqrt(3.0), rel=1e-15)
        with pytest.raises(DomainError):
            c_n(ONE, -1)

    def test_upper_block_consistency(self):
        assert f1_consistency(ONE, 2) == math.sqrt(2.0)
        assert f1_consistency(SHIFTED, 2) == pytest.approx(1.0, rel=1e-15)
        assert f1_consistency(CUBIC, 3) == pytest.approx(1.0, rel=1e-15)
        with pytest.raises(DomainError):
            f1_consistency(ONE, 1)


class TestCustomFamily:
    def test_accepts_plain_scaling(self):
        fam = custom_family(lambda n: 2.0, label="double")
        assert fam.first_nonzero == 1
        assert fam.kind == "double"

    def test_leading_zero_moves_support(self):
        fam = custom_family(lambda n: 0.0 if n == 1 else 1.0)
        assert fam.first_nonzero == 2
        fam = custom_family(lambda n: 0.0 if n <= 2 else 1.0)
        assert fam.first_nonzero == 3

    def test_zero_at_three_rejected(self):
        with pytest.raises(FamilyError):
            custom_family(lambda n: 0.0 if n == 3 else 1.0)

    def test_gap_rejected(self):
        with pytest.raises(FamilyError):
            custom_family(lambda n: 0.0 if n == 2 else 1.0)

    def test_non_finite_rejected(self):
        with pytest.raises(FamilyError):
            custom_family(lambda n: float("inf"))

    def test_raising_modifier_rejected(self):
        def bad(n):
            raise RuntimeError("boom")

        with pytest.raises(FamilyError):
            custom_family(bad)

    def test_late_zero_surfaces_at_build(self):
        fam = custom_family(lambda n: 0.0 if n == 5 else 1.0)
        cfg = PhysicsConfig(b0=0.5)
        with pytest.raises(FamilyError):
            build_coefficients(fam, 1.0, cfg)

    def test_custom_build_is_normalized(self):
        fam = custom_family(lambda n: 2.0, label="double")
        state = build_coefficients(fam, 1.5 + 0.5j, PhysicsConfig(b0=0.5))
        assert abs(np.linalg.norm(state.coeffs) - 1.0) <= 1e-12


class TestApplyAnnihilation:
    def test_vacuum_annihilates(self):
        e0 = np.zeros(4, dtype=complex)
        e0[0] = 1.0
        assert np.all(apply_annihilation(ONE, e0) == 0.0)

    def test_single_level_steps_down(self):
        e3 = np.zeros(6, dtype=complex)
        e3[3] = 1.0
        out = apply_annihilation(ONE, e3)
        want = np.zeros(6, dtype=complex)
        want[2] = math.sqrt(3.0)
        assert np.array_equal(out, want)

    def test_shape_preserved(self):
        vec = np.arange(1, 8, dtype=complex)
        assert apply_annihilation(SHIFTED, vec).shape == vec.shape

    def test_rejects_bad_input(self):
        with pytest.raises(DomainError):
            apply_annihilation(ONE, np.zeros((2, 2), dtype=complex))
        with pytest.raises(DomainError):
            apply_annihilation(ONE, np.zeros(0, dtype=complex))


class TestBuildCoefficients:
    @pytest.mark.parametrize("family", FAMILIES, ids=lambda f: f.kind)
    def test_zero_alpha_is_lowest_supported_level(self, family, cfg):
        state = build_coefficients(family, 0.0, cfg)
        offset = family.first_nonzero - 1
        assert state.trunc_order == offset
        assert state.coeffs.shape == (offset + 1,)
        assert state.coeffs[offset] == 1.0
        assert np.all(state.coeffs[:offset] == 0.0)
        assert state.tail_bound == 0.0

    def test_shifted_matches_poisson_amplitudes(self, cfg):
        # With this modifier the steps collapse to c_l = sqrt(l - 1),
        # so the amplitudes over the supported levels are the standard
        # coherent-state ones.
        state = build_coefficients(SHIFTED, 1.0, cfg)
        assert state.coeffs[0] == 0.0
        pref = math.exp(-0.5)
        for n in range(0, min(25, state.trunc_order)):
            want = pref / math.sqrt(math.factorial(n))
            got = state.coeffs[1 + n].real
            assert got == pytest.approx(want, rel=1e-12)

    @pytest.mark.parametrize("family", FAMILIES, ids=lambda f: f.kind)
    @given(alpha=alphas)
    @settings(max_examples=25, deadline=None)
    def test_normalized_with_tiny_tail(self, family, alpha):
        state = build_coefficients(family, alpha, PhysicsConfig(b0=0.5))
        assert abs(np.linalg.norm(state.coeffs) - 1.0) <= 1e-12
        assert 0.0 <= state.tail_bound < 1e-15

    @pytest.mark.parametrize("family", FAMILIES, ids=lambda f: f.kind)
    def test_support_zeros_are_exact(self, family, cfg):
        state = build_coefficients(family, 1.7 - 0.4j, cfg)
        offset = family.first_nonzero - 1
        assert np.all(state.coeffs[:offset] == 0.0)
        assert state.coeffs[offset] != 0.0

    @pytest.mark.parametrize("family", FAMILIES, ids=lambda f: f.kind)
    @pytest.mark.parametrize("alpha", [0.5, 2.0 + 1.0j, -3.0j])
    def test_eigen_residual(self, family, alpha, cfg):
        state = build_coefficients(family, alpha, cfg)
        residual = apply_annihilation(family, state.coeffs) - alpha * state.coeffs
        assert np.linalg.norm(residual) <= 1e-8

    @pytest.mark.parametrize("family", FAMILIES, ids=lambda f: f.kind)
    def test_one_step_recursion(self, family, cfg):
        alpha = 1.3 + 0.9j
        state = build_coefficients(family, alpha, cfg)
        a = state.coeffs
        for ell in range(family.first_nonzero, state.trunc_order + 1):
            lhs = c_n(family, ell) * a[ell]
            rhs = alpha * a[ell - 1]
            assert abs(lhs - rhs) <= 1e-12 * max(abs(lhs), abs(rhs), 1e-300)

    def test_large_alpha_still_converges(self, cfg):
        state = build_coefficients(ONE, 10.0, cfg)
        assert abs(np.linalg.norm(state.coeffs) - 1.0) <= 1e-12
        assert state.trunc_order < 400

    def test_unreachable_tolerance(self, cfg):
        with pytest.raises(NonConvergenceError) as err:
            build_coefficients(ONE, 25.0, cfg)
        msg = str(err.value)
        assert "one" in msg and "25" in msg

    def test_coefficients_frozen(self, cfg):
        state = build_coefficients(ONE, 1.0, cfg)
        assert not state.coeffs.flags.writeable
        with pytest.raises(ValueError):
            state.coeffs[0] = 0.0

    def test_negative_real_axis_phases_exact(self, cfg):
        state = build_coefficients(ONE, -2.0, cfg)
        assert np.all(state.coeffs.imag == 0.0)
        signs = np.sign(state.coeffs.real[: state.trunc_order + 1])
        assert np.array_equal(signs[:6], [1, -1, 1, -1, 1, -1])

    def test_imaginary_axis_phases_exact(self, cfg):
        state = build_coefficients(ONE, 2.0j, cfg)
        a = state.coeffs
        assert np.all(a.imag[0::2] == 0.0)
        assert np.all(a.real[1::2] == 0.0)

    def test_tol_validation(self, cfg):
        for bad in (0.0, -1e-12, 2.0 * TOL_MAX, float("nan"), "tight"):
            with pytest.raises(DomainError):
                build_coefficients(ONE, 1.0, cfg, tol=bad)

    def test_alpha_validation(self, cfg):
        with pytest.raises(DomainError):
            build_coefficients(ONE, complex(float("nan"), 0.0), cfg)

    def test_cfg_validation(self):
        with pytest.raises(DomainError):
            build_coefficients(ONE, 1.0, "not a config")

    def test_state_records_inputs(self, cfg):
        state = build_coefficients(SHIFTED, 0.5j, cfg, tol=1e-10)
        assert state.family is SHIFTED
        assert state.alpha == 0.5j
        assert state.cfg is cfg
