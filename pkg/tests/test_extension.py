import numpy as np
import pytest

from qchardy.boundary import make_map
from qchardy.extension import (
    BAExtension,
    ba_extend,
    circular_distortion_check,
    cone_image_aperture,
    dilatation_estimate,
    identity_disc_map,
    invert,
    make_disc_map,
    moebius_disc_map,
)
from qchardy.geometry import HyperbolicBall


class TestHalfplaneExtension:
    def test_identity_closed_form(self):
        # the averaged extension of h(x) = x is (x, y/2)
        ext = BAExtension(make_map("identity"))
        x = np.array([-2.0, 0.0, 0.7, 5.0])
        y = np.array([0.5, 1.0, 0.01, 3.0])
        u, v = ext.halfplane(x, y)
        assert np.allclose(u, x, atol=1e-10)
        assert np.allclose(v, y / 2.0, atol=1e-10)

    def test_affine_equivariance(self):
        # h(x) = 2x extends to (2x, y); built directly, bypassing the circle
        ext = BAExtension.__new__(BAExtension)
        ext.line_map = lambda x: 2.0 * np.asarray(x, dtype=float)
        u, v = ext.halfplane(np.array([0.3]), np.array([0.8]))
        assert abs(u[0] - 0.6) < 1e-10
        assert abs(v[0] - 0.8) < 1e-10

    def test_upper_halfplane_preserved(self):
        ext = BAExtension(make_map("thm2_sqrt"))
        rng = np.random.default_rng(5)
        x = rng.normal(size=40) * 3
        y = 10.0 ** rng.uniform(-4, 1, size=40)
        _, v = ext.halfplane(x, y)
        assert np.all(v > 0)


class TestDiscExtension:
    def test_boundary_agreement(self, thm2_map):
        # radial limits approach the boundary angle map
        t = np.linspace(-np.pi + 0.05, np.pi - 0.05, 64)
        z = (1.0 - 1e-6) * np.exp(1j * t)
        w = thm2_map(z)
        target = thm2_map.boundary_point(t)
        assert np.max(np.abs(w - target)) < 0.02

    def test_maps_into_disc(self, thm2_map, pow2_map):
        rng = np.random.default_rng(2)
        z = 0.999 * np.sqrt(rng.random(200)) * np.exp(2j * np.pi * rng.random(200))
        for phi in (thm2_map, pow2_map):
            assert np.all(np.abs(phi(z)) < 1.0)

    def test_identity_extension_radial_closed_form(self):
        # conjugating (x, y/2) through the Cayley map sends r to (1+3r)/(3+r)
        # on the real diameter
        phi = ba_extend(make_map("identity"))
        r = np.array([0.0, 0.25, 0.5, 0.9, 0.99])
        assert np.max(np.abs(phi(r + 0j) - (1 + 3 * r) / (3 + r))) < 1e-9

    def test_extension_interior_point_stays_interior(self, thm2_map):
        w = complex(thm2_map(np.array([0j]))[0])
        assert abs(w) < 0.9


class TestDilatation:
    def test_identity_extension(self):
        summary = dilatation_estimate(ba_extend(make_map("identity")))
        assert summary.violations == 0
        assert summary.p99 == pytest.approx(2.0, rel=0.01)

    def test_moebius_extension_nearly_conformal(self):
        summary = dilatation_estimate(ba_extend(make_map("moebius:0.5")))
        assert summary.violations == 0
        assert summary.p99 == pytest.approx(2.0, rel=0.05)

    def test_exact_conformal_members(self, identity_map, moebius_map):
        for phi in (identity_map, moebius_map):
            summary = dilatation_estimate(phi)
            assert summary.violations == 0
            assert summary.median == pytest.approx(1.0, abs=1e-12)

    def test_sqrt_extension(self, thm2_map):
        summary = dilatation_estimate(thm2_map)
        assert summary.violations == 0
        assert summary.median >= 1.0 - 1e-6
        assert summary.p99 < 4.0

    def test_ratio_at_least_one(self, pow2_map):
        summary = dilatation_estimate(pow2_map)
        assert summary.violations == 0
        assert summary.median >= 1.0 - 1e-6


class TestInvert:
    @pytest.mark.parametrize("spec", ["identity", "moebius:0.5", "thm2_sqrt",
                                      "power:2"])
    def test_round_trip(self, spec, catalog_maps):
        label = {"identity": "identity", "moebius:0.5": "moebius(0.5)",
                 "thm2_sqrt": "thm2_sqrt", "power:2": "power(2)"}[spec]
        phi = catalog_maps[label]
        for w in (0.0, 0.3, -0.5j, 0.7 * np.exp(2.2j), 0.95):
            z = invert(phi, w)
            assert abs(complex(phi(np.array([z]))[0]) - w) < 1e-7
            assert abs(z) < 1.0

    def test_moebius_closed_form(self, moebius_map):
        # phi^{-1}(w) = (w + a)/(1 + a w)
        w = 0.4 - 0.2j
        z = invert(moebius_map, w)
        assert abs(z - (w + 0.5) / (1 + 0.5 * w)) < 1e-9


class TestCircularDistortion:
    def test_conformal_band(self, moebius_map):
        balls = [HyperbolicBall(center=(1 - 2.0 ** -k) * np.exp(0.4j), ratio=0.5)
                 for k in range(1, 6)]
        ratios = circular_distortion_check(moebius_map, balls)
        assert all(0.2 < r < 3.0 for r in ratios)

    def test_degenerate_ball_matches_derivative(self, moebius_map):
        # tiny ball: diam(phi^{-1}(B)) ~ 2 r_B |(phi^{-1})'(center)|
        ball = HyperbolicBall(center=0.5, ratio=0.05)
        zc = invert(moebius_map, 0.5)
        dphi = abs(complex(moebius_map.complex_derivative(np.array([zc]))[0]))
        expected = 2.0 * ball.radius * 0.999 / dphi / (1.0 - abs(zc))
        ratio = circular_distortion_check(moebius_map, [ball])[0]
        assert ratio == pytest.approx(expected, rel=0.02)

    def test_qc_band(self, thm2_map):
        balls = [HyperbolicBall(center=(1 - 2.0 ** -k), ratio=0.5)
                 for k in range(1, 5)]
        ratios = circular_distortion_check(thm2_map, balls)
        assert all(0.05 < r < 10.0 for r in ratios)


class TestConeImageAperture:
    def test_identity_recovers_aperture(self, identity_map):
        ap = cone_image_aperture(identity_map, 1.0 + 0j, c=2.0)
        assert ap == pytest.approx(2.0, rel=1e-6)

    def test_monotone_in_aperture(self, thm2_map):
        xi = np.exp(0.9j)
        a1 = cone_image_aperture(thm2_map, xi, c=1.5)
        a2 = cone_image_aperture(thm2_map, xi, c=3.0)
        assert a2 >= a1

    def test_stable_under_sample_doubling(self, thm2_map):
        xi = np.exp(1.3j)
        a1 = cone_image_aperture(thm2_map, xi, c=2.0, samples=96)
        a2 = cone_image_aperture(thm2_map, xi, c=2.0, samples=192)
        assert abs(a2 - a1) <= 0.1 * a1

    def test_validation(self, identity_map):
        with pytest.raises(ValueError):
            cone_image_aperture(identity_map, 1.0 + 0j, c=1.0)


class TestCatalogConstruction:
    def test_conformal_flags(self):
        assert identity_disc_map().conformal
        assert moebius_disc_map(0.3).conformal
        assert not make_disc_map("thm2_sqrt").conformal

    def test_make_disc_map_dispatch(self):
        assert make_disc_map("identity").label == "identity"
        assert make_disc_map("power:2").label == "ba[power(2)]"
        assert make_disc_map("thm2_sqrt").label == "ba[thm2_sqrt]"

    def test_moebius_exact_interior(self):
        phi = moebius_disc_map(0.5)
        z = 0.3 + 0.2j
        assert abs(complex(phi(np.array([z]))[0]) - (z - 0.5) / (1 - 0.5 * z)) < 1e-15

    def test_wirtinger_conformal_exact(self, moebius_map):
        z = np.array([0.2 + 0.1j])
        dz, dzb = moebius_map.wirtinger(z)
        assert abs(dzb[0]) == 0.0
        assert abs(dz[0] - 0.75 / (1 - 0.5 * z[0]) ** 2) < 1e-14

    def test_wirtinger_fd_orientation_preserving(self):
        phi = ba_extend(make_map("identity"))
        dz, dzb = phi.wirtinger(np.array([0.4 + 0.3j, -0.2j, 0.7]))
        assert np.all(np.abs(dzb) < np.abs(dz))
        # dilatation of this extension is exactly 2: (|dz|+|dzb|)^2 = 2 J
        K = (np.abs(dz) + np.abs(dzb)) ** 2 / (np.abs(dz) ** 2 - np.abs(dzb) ** 2)
        assert np.allclose(K, 2.0, rtol=1e-4)
