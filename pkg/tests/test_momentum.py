import math

import numpy as np
import pytest

from cypol.errors import NotNormalized
from cypol.modes import (
    CPM_LABELS,
    BeamParams,
    GridSpec,
    cpm_basis,
    eval_scalar_mode,
    g_operator,
    make_uab,
)
from cypol.momentum import (
    analytic_partials,
    helicity_sz,
    integrate,
    momentum_density,
)

S2 = 1.0 / math.sqrt(2.0)


def report(c, params=None, spec=None):
    params = params or BeamParams()
    spec = spec or GridSpec()
    return integrate(momentum_density(c, params, spec))


class TestAnalyticPartials:
    def test_value_at_origin(self, params):
        ddx, ddy = analytic_partials("10", params, 0.0, 0.0)
        want = math.sqrt(8.0 / math.pi) / params.w0**2
        assert ddx == pytest.approx(want, abs=1e-12)
        assert want == pytest.approx(1.595769, abs=1e-6)
        assert ddy == 0.0

    def test_odd_partial_vanishes(self, params):
        for x in (-1.3, 0.2, 2.0):
            assert analytic_partials("10", params, x, 0.0)[1] == 0.0

    def test_finite_difference_oracle(self, rng):
        params = BeamParams(w0=1.3)
        h = 1e-5 * params.w0
        for index in ("10", "01"):
            for x, y in rng.uniform(-2.5, 2.5, size=(100, 2)):
                ax, ay = analytic_partials(index, params, x, y)
                fdx = (eval_scalar_mode(index, params, x + h, y)
                       - eval_scalar_mode(index, params, x - h, y)) / (2 * h)
                fdy = (eval_scalar_mode(index, params, x, y + h)
                       - eval_scalar_mode(index, params, x, y - h)) / (2 * h)
                scale = max(abs(ax), abs(ay), 1e-3)
                assert abs(ax - fdx) / scale < 1e-6
                assert abs(ay - fdy) / scale < 1e-6


class TestMomentumDensity:
    def test_real_mode_has_no_transverse_orbital_current(self, params, spec):
        field = momentum_density(cpm_basis("R+"), params, spec)
        assert np.max(np.abs(field.p_orb[:, :, :2])) == 0.0

    def test_single_component_mode_has_no_spin_current(self, params, spec):
        field = momentum_density(np.array([1.0, 0, 0, 0]), params, spec)
        assert np.max(np.abs(field.p_sp)) == 0.0

    def test_pz_nonnegative(self, params, spec, rng):
        c = rng.normal(size=4) + 1j * rng.normal(size=4)
        c /= np.linalg.norm(c)
        field = momentum_density(c, params, spec)
        assert np.min(field.p_orb[:, :, 2]) >= 0.0

    def test_rejects_unnormalized(self, params, spec):
        with pytest.raises(NotNormalized):
            momentum_density(np.array([1.0, 1.0, 0, 0]), params, spec)


class TestIntegrate:
    @pytest.mark.parametrize("label", CPM_LABELS)
    def test_cpm_zero_tam(self, label):
        rep = report(cpm_basis(label))
        assert np.max(np.abs(rep.L)) < 1e-8
        assert np.max(np.abs(rep.S)) < 1e-8
        assert np.max(np.abs(rep.J)) < 1e-8
        assert rep.P[2] == pytest.approx(1.0, abs=1e-9)
        assert abs(rep.P[0]) < 1e-8 and abs(rep.P[1]) < 1e-8

    def test_j_equals_l_plus_s(self, rng):
        c = rng.normal(size=4) + 1j * rng.normal(size=4)
        c /= np.linalg.norm(c)
        rep = report(c)
        assert np.array_equal(rep.J, rep.L + rep.S)

    def test_spin_surface_term_vanishes(self, rng):
        for _ in range(3):
            c = rng.normal(size=4) + 1j * rng.normal(size=4)
            c /= np.linalg.norm(c)
            assert report(c).p_sp_transverse_max < 1e-8

    def test_uniform_circular_helicity(self):
        k = BeamParams().k
        # Circular polarization on a single spatial profile: S_z = +1/k.
        rep = report(np.array([S2, 1j * S2, 0, 0]))
        assert rep.S[2] * k == pytest.approx(1.0, rel=1e-6)
        # Same with the vortex spatial profile via A = iB.
        rep = report(make_uab(1j * S2, S2, "+"))
        assert abs(rep.S[2]) * k == pytest.approx(1.0, rel=1e-6)

    def test_xpol_vortex_orbital(self):
        k = BeamParams().k
        rep = report(np.array([S2, 0, 1j * S2, 0]))
        assert rep.L[2] * k == pytest.approx(1.0, rel=1e-6)
        assert abs(rep.S[2]) * k < 1e-6

    def test_rotation_covariance(self, rng):
        c = rng.normal(size=4) + 1j * rng.normal(size=4)
        c /= np.linalg.norm(c)
        r0 = report(c)
        r1 = report(g_operator(+1, 1.2) @ c)
        assert abs(r0.L[2] - r1.L[2]) < 1e-8
        assert abs(r0.S[2] - r1.S[2]) < 1e-8
        assert abs(r0.P[2] - r1.P[2]) < 1e-8

    def test_convergence_doubling(self, rng):
        c = rng.normal(size=4) + 1j * rng.normal(size=4)
        c /= np.linalg.norm(c)
        params = BeamParams()
        ra = report(c, params, GridSpec(n=128))
        rb = report(c, params, GridSpec(n=256))
        for fa, fb in ((ra.P, rb.P), (ra.L, rb.L), (ra.S, rb.S), (ra.J, rb.J)):
            assert np.max(np.abs(fa - fb)) < 1e-8

    def test_truncation_estimate_small(self):
        rep = report(cpm_basis("R+"))
        assert rep.truncation_estimate < 1e-12


class TestHelicity:
    def test_cpms_have_no_helicity(self, params):
        for label in CPM_LABELS:
            assert helicity_sz(cpm_basis(label), params) == 0.0

    def test_circular_lg_sign(self, params):
        # A = +iB carries polarization (x - i y): helicity -1/k, orbital +1/k.
        val = helicity_sz(make_uab(1j * S2, S2, "+"), params)
        assert val * params.k == pytest.approx(-1.0, abs=1e-12)
        val = helicity_sz(make_uab(-1j * S2, S2, "+"), params)
        assert val * params.k == pytest.approx(+1.0, abs=1e-12)

    def test_direct_substitution(self, params):
        val = helicity_sz(np.array([S2, 1j * S2, 0, 0]), params)
        assert val * params.k == pytest.approx(+1.0, abs=1e-12)

    def test_matches_quadrature(self, params, rng):
        for _ in range(5):
            c = rng.normal(size=4) + 1j * rng.normal(size=4)
            c /= np.linalg.norm(c)
            assert helicity_sz(c, params) == pytest.approx(
                report(c).S[2], abs=1e-8)

    def test_rejects_unnormalized(self, params):
        with pytest.raises(NotNormalized):
            helicity_sz(np.array([1.0, 1.0, 1.0, 0.0]), params)
