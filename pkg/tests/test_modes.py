import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cypol.errors import GridMismatch, NotNormalized
from cypol.modes import (
    CPM_LABELS,
    BeamParams,
    GridSpec,
    check_rotation_law,
    cpm_basis,
    cpm_basis_matrix,
    eval_lg_mode,
    eval_scalar_mode,
    evaluate_field,
    g_operator,
    inner_product_coeff,
    inner_product_grid,
    make_uab,
    pol_rotation4,
    rotation_matrix,
)

S2 = 1.0 / math.sqrt(2.0)


def quad_weight(params, spec):
    return spec.cell_area(params)


class TestScalarModes:
    def test_closed_form_value(self, params):
        # psi10(1, 0) = sqrt(8/pi) * exp(-1)
        want = math.sqrt(8.0 / math.pi) * math.exp(-1.0)
        assert eval_scalar_mode("10", params, 1.0, 0.0) == pytest.approx(want, abs=1e-15)
        assert want == pytest.approx(0.5870507, abs=1e-6)

    def test_odd_mode_vanishes_on_axis(self, params):
        for x in (-2.0, 0.0, 0.7, 3.3):
            assert eval_scalar_mode("01", params, x, 0.0) == 0.0

    def test_gaussian_integral_oracle(self, params, spec):
        # Int x^2 exp(-2 r^2 / w0^2) = pi w0^4 / 8, the normalization source.
        X, Y = spec.meshgrid(params)
        val = np.sum(X**2 * np.exp(-2.0 * (X**2 + Y**2) / params.w0**2))
        val *= quad_weight(params, spec)
        assert val == pytest.approx(math.pi * params.w0**4 / 8.0, abs=1e-12)

    @pytest.mark.parametrize("w0", [1.0, 0.6, 1.7])
    @pytest.mark.parametrize("index", ["10", "01"])
    def test_unit_quadrature_norm(self, index, w0):
        params = BeamParams(w0=w0)
        spec = GridSpec()
        X, Y = spec.meshgrid(params)
        psi = eval_scalar_mode(index, params, X, Y)
        norm = np.sum(np.abs(psi) ** 2) * quad_weight(params, spec)
        assert norm == pytest.approx(1.0, abs=1e-6)

    def test_bad_index(self, params):
        with pytest.raises(ValueError):
            eval_scalar_mode("20", params, 0.0, 0.0)


class TestLGModes:
    def test_closed_form_value(self, params):
        want = math.sqrt(8.0 / math.pi) * math.exp(-1.0) / math.sqrt(2.0)
        got = eval_lg_mode(+1, params, 1.0, 0.0)
        assert got == pytest.approx(want, abs=1e-12)
        assert abs(got.imag) < 1e-15
        assert want == pytest.approx(0.4151075, abs=1e-6)

    def test_vanishes_on_axis(self, params):
        assert eval_lg_mode(-1, params, 0.0, 0.0) == 0.0

    def test_vortex_phase(self, params):
        up = eval_lg_mode(+1, params, 0.0, 1.0)
        right = eval_lg_mode(+1, params, 1.0, 0.0)
        delta = np.angle(up) - np.angle(right)
        assert delta == pytest.approx(math.pi / 2.0, abs=1e-12)

    def test_unit_norm(self, params, spec):
        X, Y = spec.meshgrid(params)
        phi = eval_lg_mode(+1, params, X, Y)
        norm = np.sum(np.abs(phi) ** 2) * quad_weight(params, spec)
        assert norm == pytest.approx(1.0, abs=1e-6)


class TestCpmBasis:
    def test_radial_plus_coefficients(self):
        assert np.allclose(cpm_basis("R+"), [S2, 0, 0, S2], atol=1e-15)

    def test_azimuthal_minus_coefficients(self):
        assert np.allclose(cpm_basis("A-"), [0, S2, S2, 0], atol=1e-15)

    def test_gram_identity(self):
        Q = cpm_basis_matrix()
        assert np.max(np.abs(Q.conj().T @ Q - np.eye(4))) < 1e-12

    def test_unknown_label(self):
        with pytest.raises(ValueError):
            cpm_basis("R0")


class TestMakeUab:
    def test_pure_radial(self):
        assert np.allclose(make_uab(1.0, 0.0, "+"), cpm_basis("R+"), atol=1e-15)

    def test_pure_azimuthal(self):
        assert np.allclose(make_uab(0.0, 1.0, "+"), cpm_basis("A+"), atol=1e-15)

    def test_circular_lg_structure(self):
        # A = iB collapses to a circularly polarized vortex:
        # (i/2) (psi10 + i psi01)(x - i y).
        c = make_uab(1j * S2, S2, "+")
        assert np.allclose(c, [0.5j, 0.5, -0.5, 0.5j], atol=1e-15)

    def test_minus_sphere(self):
        c = make_uab(0.3, math.sqrt(1 - 0.09), "-")
        assert abs(np.vdot(cpm_basis("R+"), c)) < 1e-15
        assert abs(np.vdot(cpm_basis("A+"), c)) < 1e-15

    def test_rejects_unnormalized(self):
        with pytest.raises(NotNormalized):
            make_uab(1.0, 1.0, "+")


class TestEvaluateField:
    def test_radial_pattern(self, params, spec):
        field = evaluate_field(cpm_basis("R+"), params, spec)
        X, Y = spec.meshgrid(params)
        mask = np.abs(field.ex) > 1e-3
        ratio = field.ey[mask] / field.ex[mask]
        assert np.allclose(ratio, (Y / X)[mask], atol=1e-9)

    def test_zero_vector(self, params, spec):
        field = evaluate_field(np.zeros(4), params, spec)
        assert not field.ex.any() and not field.ey.any()

    @pytest.mark.parametrize("label", CPM_LABELS)
    def test_intensity_ring_radius(self, label, params, spec):
        field = evaluate_field(cpm_basis(label), params, spec)
        X, Y = spec.meshgrid(params)
        inten = field.intensity()
        i, j = np.unravel_index(np.argmax(inten), inten.shape)
        r = math.hypot(X[i, j], Y[i, j])
        assert abs(r - params.w0 / math.sqrt(2.0)) <= spec.cell_size(params)


class TestInnerProducts:
    def test_coeff_orthonormality(self):
        assert inner_product_coeff(cpm_basis("R+"), cpm_basis("A+")) == 0
        assert inner_product_coeff(cpm_basis("R+"), cpm_basis("R+")) == pytest.approx(1.0, abs=1e-15)

    def test_grid_cross_sphere(self, params, spec):
        fr = evaluate_field(cpm_basis("R+"), params, spec)
        fm = evaluate_field(cpm_basis("R-"), params, spec)
        assert abs(inner_product_grid(fr, fm)) < 1e-6

    def test_grid_matches_coeff(self, params, spec, rng):
        for _ in range(5):
            a = rng.normal(size=4) + 1j * rng.normal(size=4)
            b = rng.normal(size=4) + 1j * rng.normal(size=4)
            a /= np.linalg.norm(a)
            b /= np.linalg.norm(b)
            got = inner_product_grid(evaluate_field(a, params, spec),
                                     evaluate_field(b, params, spec))
            assert got == pytest.approx(inner_product_coeff(a, b), abs=1e-6)

    def test_grid_mismatch(self, params):
        f = evaluate_field(cpm_basis("R+"), params, GridSpec(n=64))
        g = evaluate_field(cpm_basis("R+"), params, GridSpec(n=128))
        with pytest.raises(GridMismatch):
            inner_product_grid(f, g)


class TestRotationMatrix:
    def test_identity(self):
        assert np.allclose(rotation_matrix(0.0), np.eye(2), atol=1e-15)

    def test_quarter_turn(self):
        assert np.allclose(rotation_matrix(math.pi / 2), [[0, -1], [1, 0]],
                           atol=1e-15)

    @settings(max_examples=50)
    @given(st.floats(-10, 10), st.floats(-10, 10))
    def test_additivity(self, a, b):
        lhs = rotation_matrix(a) @ rotation_matrix(b)
        assert np.max(np.abs(lhs - rotation_matrix(a + b))) < 1e-12


class TestGOperator:
    @pytest.mark.parametrize("phi", [0.3, 1.1, 2.9])
    def test_plus_invariance(self, phi):
        for label in ("R+", "A+"):
            c = cpm_basis(label)
            assert np.linalg.norm(g_operator(+1, phi) @ c - c) < 1e-12

    @pytest.mark.parametrize("phi", [0.3, 1.1, 2.9])
    def test_minus_invariance(self, phi):
        for label in ("R-", "A-"):
            c = cpm_basis(label)
            assert np.linalg.norm(g_operator(-1, phi) @ c - c) < 1e-12

    def test_grid_rotation_oracle(self, params, rng):
        # g_operator(+, phi) must match rotating the field: R(phi) u(R(-phi) x).
        c = np.array([1.0, 0, 0, 0], dtype=complex)
        for phi in (0.4, 1.7):
            cr = g_operator(+1, phi) @ c
            R = rotation_matrix(phi)
            for x, y in rng.uniform(-2, 2, size=(100, 2)):
                xb, yb = rotation_matrix(-phi) @ np.array([x, y])
                want = R @ np.array([eval_scalar_mode("10", params, xb, yb), 0.0])
                p10 = eval_scalar_mode("10", params, x, y)
                p01 = eval_scalar_mode("01", params, x, y)
                got = np.array([cr[0] * p10 + cr[2] * p01,
                                cr[1] * p10 + cr[3] * p01])
                assert np.max(np.abs(got - want)) < 1e-8

    def test_unitary(self, rng):
        for s in (+1, -1):
            phi = rng.uniform(-3, 3)
            G = g_operator(s, phi)
            assert np.max(np.abs(G.T @ G - np.eye(4))) < 1e-12

    def test_group_law(self, rng):
        for s in (+1, -1):
            p1, p2 = rng.uniform(-3, 3, size=2)
            lhs = g_operator(s, p1) @ g_operator(s, p2)
            assert np.max(np.abs(lhs - g_operator(s, p1 + p2))) < 1e-12

    def test_sphere_closure(self, rng):
        Q = cpm_basis_matrix()
        for _ in range(10):
            v = rng.normal(size=4) + 1j * rng.normal(size=4)
            A, B = v[0], v[1]
            nrm = math.sqrt(abs(A) ** 2 + abs(B) ** 2)
            phi = rng.uniform(0, 2 * math.pi)
            cp = make_uab(A / nrm, B / nrm, "+")
            cm = make_uab(A / nrm, B / nrm, "-")
            assert np.linalg.norm(Q[:, 2:].conj().T @ (g_operator(+1, phi) @ cp)) < 1e-12
            assert np.linalg.norm(Q[:, :2].conj().T @ (g_operator(-1, phi) @ cm)) < 1e-12


class TestRotationLaw:
    def test_plus_family_passes(self, rng):
        for _ in range(20):
            v = rng.normal(size=4)
            A = v[0] + 1j * v[1]
            B = v[2] + 1j * v[3]
            nrm = math.sqrt(abs(A) ** 2 + abs(B) ** 2)
            c = make_uab(A / nrm, B / nrm, "+")
            assert check_rotation_law(c, "+") < 1e-12

    def test_counter_fails_plus_law(self):
        res = check_rotation_law(cpm_basis("R-"), "+", [1.0])
        assert res > 0.5

    def test_minus_family_passes(self):
        for label in ("R-", "A-"):
            assert check_rotation_law(cpm_basis(label), "-",
                                      np.linspace(0.1, 3.0, 7)) < 1e-12

    def test_double_angle_identity(self, rng):
        # Global rotation acts on counter modes as a local 2*phi twist.
        for _ in range(10):
            v = rng.normal(size=4)
            A = (v[0] + 1j * v[1])
            B = (v[2] + 1j * v[3])
            nrm = math.sqrt(abs(A) ** 2 + abs(B) ** 2)
            c = make_uab(A / nrm, B / nrm, "-")
            phi = rng.uniform(0, 2 * math.pi)
            res = g_operator(+1, phi) @ c - pol_rotation4(2 * phi) @ c
            assert np.linalg.norm(res) < 1e-12


class TestLGSeparability:
    @pytest.mark.parametrize("sign", [+1, -1])
    def test_uniform_circular_polarization(self, sign, params, rng):
        c = make_uab(sign * 1j * S2, S2, "+")
        # Field must be proportional to (x -/+ i y) at every point.
        for x, y in rng.uniform(-1.5, 1.5, size=(50, 2)):
            p10 = eval_scalar_mode("10", params, x, y)
            p01 = eval_scalar_mode("01", params, x, y)
            ex = c[0] * p10 + c[2] * p01
            ey = c[1] * p10 + c[3] * p01
            assert abs(ex * (-sign * 1j) - ey) < 1e-10


class TestValidation:
    def test_beam_params(self):
        with pytest.raises(ValueError):
            BeamParams(w0=-1.0)
        with pytest.raises(ValueError):
            BeamParams(k=0.0)

    def test_grid_spec(self):
        with pytest.raises(ValueError):
            GridSpec(n=15)
        with pytest.raises(ValueError):
            GridSpec(n=14)
        with pytest.raises(ValueError):
            GridSpec(half_extent=2.0)
