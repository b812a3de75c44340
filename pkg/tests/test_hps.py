import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cypol.elements import jones_hwp, spatial_identity, tensor_transform
from cypol.errors import ForbiddenTransform, ZeroField
from cypol.hps import (
    SpherePoint,
    allowed_transform,
    amplitudes_from_sphere,
    coeff_from_sphere,
    hybrid_stokes,
    mirror_swap,
    sphere_from_amplitudes,
    sphere_from_stokes,
    superselect,
)
from cypol.modes import cpm_basis, eval_scalar_mode

S2 = 1.0 / math.sqrt(2.0)


def circle_dist(a, b):
    d = abs(a - b) % (2 * math.pi)
    return min(d, 2 * math.pi - d)


class TestAmplitudes:
    def test_radial_pole(self):
        fA, fR = amplitudes_from_sphere(SpherePoint(math.pi, 0.0))
        assert abs(fA) < 1e-15
        assert fR == pytest.approx(1.0, abs=1e-15)

    def test_azimuthal_pole(self):
        fA, fR = amplitudes_from_sphere(SpherePoint(0.0, 0.0))
        assert fA == pytest.approx(1.0, abs=1e-15)
        assert abs(fR) < 1e-15

    def test_equator_sample(self):
        fA, fR = amplitudes_from_sphere(SpherePoint(math.pi / 2, 1.5 * math.pi))
        assert fA == pytest.approx(S2, abs=1e-15)
        assert fR == pytest.approx(-1j * S2, abs=1e-12)


class TestHybridStokes:
    def test_radial_pole(self):
        st_ = hybrid_stokes(1.0, 0.0, "+")
        assert (st_.s0, st_.s1, st_.s2, st_.s3) == (1.0, 1.0, 0.0, 0.0)

    def test_azimuthal_pole(self):
        st_ = hybrid_stokes(0.0, 1.0, "+")
        assert (st_.s0, st_.s1, st_.s2, st_.s3) == (1.0, -1.0, 0.0, 0.0)

    def test_circular_point(self):
        st_ = hybrid_stokes(-1j * S2, S2, "+")
        assert st_.s0 == pytest.approx(1.0, abs=1e-12)
        assert abs(st_.s1) < 1e-12 and abs(st_.s2) < 1e-12
        assert st_.s3 == pytest.approx(1.0, abs=1e-12)

    def test_zero_field(self):
        with pytest.raises(ZeroField):
            hybrid_stokes(0.0, 0.0)

    @settings(max_examples=100)
    @given(st.floats(-2, 2), st.floats(-2, 2), st.floats(-2, 2), st.floats(-2, 2))
    def test_purity(self, a, b, c, d):
        fR = a + 1j * b
        fA = c + 1j * d
        if abs(fR) + abs(fA) < 1e-3:
            fR = 1.0
        st_ = hybrid_stokes(fR, fA)
        lhs = st_.s1**2 + st_.s2**2 + st_.s3**2
        assert lhs == pytest.approx(st_.s0**2, abs=1e-10 * max(1.0, st_.s0**2))


class TestRoundTrip:
    @settings(max_examples=200)
    @given(st.floats(1e-3, math.pi - 1e-3), st.floats(0, 2 * math.pi - 1e-9))
    def test_sphere_amplitudes_stokes_sphere(self, theta, phi):
        p = SpherePoint(theta, phi, "-")
        fA, fR = amplitudes_from_sphere(p)
        q = sphere_from_stokes(hybrid_stokes(fR, fA, "-"))
        assert abs(q.theta - p.theta) < 1e-9
        assert circle_dist(q.phi, p.phi) < 1e-9
        assert q.sphere == p.sphere

    def test_amplitude_inverse_ignores_global_phase(self):
        p = SpherePoint(1.1, 2.2, "+")
        fA, fR = amplitudes_from_sphere(p)
        g = cmath.exp(0.7j)
        q = sphere_from_amplitudes(g * fR, g * fA, "+")
        assert abs(q.theta - p.theta) < 1e-12
        assert circle_dist(q.phi, p.phi) < 1e-12

    def test_pole_phi_reported_zero(self):
        q = sphere_from_stokes(hybrid_stokes(1.0, 0.0))
        assert q.phi == 0.0


class TestSuperselect:
    def test_pure_plus(self):
        split = superselect(cpm_basis("R+"))
        assert split.plus.weight == pytest.approx(1.0, abs=1e-15)
        assert split.minus.weight == pytest.approx(0.0, abs=1e-15)

    def test_x_polarized_hg_mode(self):
        # psi10 x = (uR+ - uR-)/sqrt2 splits evenly between the spheres.
        split = superselect(np.array([1.0, 0, 0, 0]))
        assert split.plus.weight == pytest.approx(0.5, abs=1e-15)
        assert split.minus.weight == pytest.approx(0.5, abs=1e-15)
        assert split.plus.A == pytest.approx(S2, abs=1e-15)
        assert split.plus.B == 0
        assert split.minus.A == pytest.approx(-S2, abs=1e-15)
        assert split.minus.B == 0

    def test_total_power(self, rng):
        for _ in range(20):
            c = rng.normal(size=4) + 1j * rng.normal(size=4)
            split = superselect(c)
            total = split.plus.weight + split.minus.weight
            assert total == pytest.approx(np.linalg.norm(c) ** 2, abs=1e-12)


class TestAllowedTransforms:
    def test_rule_a_on_meridian(self):
        q = allowed_transform(SpherePoint(math.pi / 3, 0.0), "a")
        assert q.theta == pytest.approx(2 * math.pi / 3, abs=1e-12)
        assert q.phi == 0.0

    def test_rule_a_rejects_off_meridian(self):
        with pytest.raises(ForbiddenTransform):
            allowed_transform(SpherePoint(math.pi / 3, math.pi / 4), "a")

    def test_rule_b_rejects_off_meridian(self):
        with pytest.raises(ForbiddenTransform):
            allowed_transform(SpherePoint(0.4, 1.0), "b")

    def test_rule_b_map(self):
        q = allowed_transform(SpherePoint(0.4, math.pi / 2), "b")
        assert q.theta == pytest.approx(math.pi - 0.4, abs=1e-12)
        assert q.phi == pytest.approx(1.5 * math.pi, abs=1e-12)

    def test_rule_c_total(self, rng):
        for _ in range(25):
            p = SpherePoint(rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi),
                            "-" if rng.integers(2) else "+")
            q = allowed_transform(p, "c")
            assert q.theta == p.theta
            assert circle_dist(q.phi, p.phi + math.pi) < 1e-12
            assert q.sphere == p.sphere

    def test_meridian_tolerance_wraps(self):
        # phi just below 2*pi counts as phi = 0.
        q = allowed_transform(SpherePoint(1.0, 2 * math.pi - 1e-12), "a")
        assert q.theta == pytest.approx(math.pi - 1.0, abs=1e-12)

    def test_unknown_rule(self):
        with pytest.raises(ValueError):
            allowed_transform(SpherePoint(1.0, 0.0), "d")


class TestMirrorSwap:
    def test_radial_pole_maps_to_radial_pole(self):
        q = mirror_swap(SpherePoint(math.pi, 0.0, "+"))
        assert q.sphere == "-"
        assert q.theta == pytest.approx(math.pi, abs=1e-12)

    def test_azimuthal_pole(self):
        q = mirror_swap(SpherePoint(0.0, 0.0, "+"))
        assert q.sphere == "-"
        assert q.theta == pytest.approx(0.0, abs=1e-12)

    def test_involution(self, rng):
        for _ in range(25):
            p = SpherePoint(rng.uniform(1e-2, math.pi - 1e-2),
                            rng.uniform(0, 2 * math.pi))
            q = mirror_swap(mirror_swap(p))
            assert abs(q.theta - p.theta) < 1e-9
            assert circle_dist(q.phi, p.phi) < 1e-9
            assert q.sphere == p.sphere

    def test_matches_hwp_lift(self, rng):
        hwp0 = tensor_transform(spatial_identity(), jones_hwp(0.0))
        for _ in range(10):
            p = SpherePoint(rng.uniform(1e-2, math.pi - 1e-2),
                            rng.uniform(0, 2 * math.pi))
            img = hwp0 @ coeff_from_sphere(p)
            ref = coeff_from_sphere(mirror_swap(p))
            # Same ray up to a global phase.
            assert abs(abs(np.vdot(ref, img)) - 1.0) < 1e-9


class TestMeridianLinearity:
    def test_locally_linear_polarization(self, params, rng):
        pts = rng.uniform(-1.5, 1.5, size=(50, 2))
        for sphere in ("+", "-"):
            for theta in np.linspace(0.2, math.pi - 0.2, 4):
                c = coeff_from_sphere(SpherePoint(theta, 0.0, sphere))
                for x, y in pts:
                    p10 = eval_scalar_mode("10", params, x, y)
                    p01 = eval_scalar_mode("01", params, x, y)
                    ex = c[0] * p10 + c[2] * p01
                    ey = c[1] * p10 + c[3] * p01
                    assert abs((np.conj(ex) * ey).imag) < 1e-10


class TestSpherePointValidation:
    def test_theta_range(self):
        with pytest.raises(ValueError):
            SpherePoint(-0.1, 0.0)
        with pytest.raises(ValueError):
            SpherePoint(math.pi + 0.1, 0.0)

    def test_phi_normalized(self):
        assert SpherePoint(1.0, 2 * math.pi + 0.5).phi == pytest.approx(0.5)

    def test_sphere_label(self):
        with pytest.raises(ValueError):
            SpherePoint(1.0, 0.0, "x")
