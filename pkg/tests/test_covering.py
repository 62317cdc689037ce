import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from coeflab.covering import (
    BlaschkeCover,
    MobiusAutomorphism,
    blaschke_coeffs_fast,
    blaschke_series,
    compose_cover,
    factor,
    kappa_coeffs,
    kappa_of,
    omega_decompose,
    random_cover,
    sigma_series,
    winding_number,
)
from coeflab.errors import ConstantOnBoundary, NormExceeded, VanishingFunction
from coeflab.series import PowerSeries, series_compose, series_eval, series_exp

from conftest import random_series

E = math.e


def kappa(w):
    return np.exp((w - 1) / (w + 1))


class TestKappaCoeffs:
    def test_leading_terms(self):
        c = kappa_coeffs(1, 3).coeffs
        assert np.max(np.abs(c - [1 / E, 2 / E, 0, -2 / (3 * E)])) < 1e-12

    def test_interleaving(self):
        c = kappa_coeffs(3, 60).coeffs
        mask = np.arange(61) % 3 != 0
        assert np.all(c[mask] == 0)
        assert np.array_equal(c[::3], kappa_coeffs(1, 20).coeffs)

    def test_recurrence_vs_exp_of_cayley(self):
        N = 199
        rec = kappa_coeffs(1, N).coeffs
        comp = series_exp(series_compose(sigma_series(N) + 1, PowerSeries.variable(N)) - 1).coeffs
        assert np.max(np.abs(rec - comp)) < 1e-10

    def test_large_order_is_linear_time(self):
        c = kappa_coeffs(1, 10**6).coeffs
        assert c.size == 10**6 + 1 and np.all(np.isfinite(c))

    def test_rejects_bad_args(self):
        with pytest.raises(ValueError):
            kappa_coeffs(0, 5)


class TestBlaschke:
    def test_zero_at_origin_is_z(self):
        s = blaschke_series(BlaschkeCover((0j,)), 6)
        assert np.allclose(s.coeffs, [0, 1, 0, 0, 0, 0, 0])

    def test_single_factor(self):
        a = 0.3 - 0.4j
        s = blaschke_series(BlaschkeCover((a,)), 8).coeffs
        want = [-a] + [(1 - abs(a) ** 2) * a.conjugate() ** (k - 1) for k in range(1, 9)]
        assert np.allclose(s, want, atol=1e-15)

    def test_repeated_origin(self):
        s = blaschke_series(BlaschkeCover.monomial(4), 10).coeffs
        assert np.allclose(s, np.eye(11)[4])

    def test_fast_path_matches(self, rng):
        for _ in range(10):
            cov = random_cover(rng, 4)
            assert np.allclose(blaschke_coeffs_fast(cov, 30), blaschke_series(cov, 30).coeffs, atol=1e-13)

    def test_series_matches_direct_evaluation(self, rng):
        cov = random_cover(rng, 3, max_modulus=0.6)
        s = blaschke_series(cov, 200)
        z = 0.5 * np.exp(1j * rng.uniform(0, 2 * np.pi, 20))
        assert np.max(np.abs(series_eval(s, z) - cov(z))) < 1e-12

    def test_validation(self):
        with pytest.raises(ValueError):
            BlaschkeCover((1.5,))
        with pytest.raises(ValueError):
            BlaschkeCover((), 0.0, 0.0)
        with pytest.raises(ValueError):
            BlaschkeCover((), 0.0, 1.0, center=1.0)

    def test_rotated(self, rng):
        cov = random_cover(rng, 3)
        beta = 0.7
        z = 0.4 * np.exp(1j * rng.uniform(0, 2 * np.pi, 5))
        assert np.allclose(cov.rotated(beta)(z), cov(np.exp(1j * beta) * z))

    @given(st.lists(st.floats(-20, 20), min_size=10, max_size=10), st.floats(0.1, 1.0))
    def test_unconstrained_decode_is_feasible(self, x, radius):
        cov = BlaschkeCover.from_unconstrained(np.array(x), 4, radius)
        assert all(abs(a) <= 1 for a in cov.zeros)
        assert 0 < cov.scale <= radius


class TestComposeCover:
    def test_monomial_gives_kappa_n(self):
        for n in (1, 2, 5):
            c = compose_cover(BlaschkeCover.monomial(n), 12).coeffs
            assert np.allclose(c, kappa_coeffs(n, 12).coeffs, atol=1e-14)
            assert c[n] == pytest.approx(2 / E, abs=1e-14)

    def test_zero_cover(self):
        c = compose_cover(PowerSeries.constant(0, 6), 6).coeffs
        assert c[0] == pytest.approx(1 / E) and np.allclose(c[1:], 0)

    def test_tiny_scale_limit(self):
        c = compose_cover(BlaschkeCover((), 0.0, 1e-300), 4).coeffs
        assert c[0] == pytest.approx(1 / E)

    def test_half_z(self):
        c = compose_cover(BlaschkeCover((0j,), 0.0, 0.5), 4).coeffs
        assert c[1] == pytest.approx(0.5 * 2 / E, abs=1e-15)

    def test_shifted_route_matches_direct(self, rng):
        for _ in range(10):
            cov = random_cover(rng, 3)
            N = 20
            a = compose_cover(cov, N).coeffs
            b = kappa_of(blaschke_series(cov, N)).coeffs
            assert np.max(np.abs(a - b)) < 1e-12

    def test_nonvanishing_at_random_points(self, rng):
        # the modulus floor uses |fhat(z)| <= |z|, so the covers fix the origin
        for _ in range(5):
            cov = random_cover(rng, 2, origin_zeros=1)
            f = compose_cover(cov, 160)
            r = 0.6 * np.sqrt(rng.uniform(size=100))
            z = r * np.exp(1j * rng.uniform(0, 2 * np.pi, 100))
            vals = series_eval(f, z)
            direct = kappa(cov(z))
            assert np.max(np.abs(vals - direct)) < 1e-9
            assert np.all(np.abs(vals) >= np.exp(-(1 + r) / (1 - r)) * 0.99)
            assert np.all(np.abs(vals) < 1)


class TestFactor:
    def test_kappa_lifts_to_z(self):
        fhat = factor(kappa_coeffs(1, 64))
        assert np.max(np.abs(fhat.coeffs[:32] - np.eye(65)[1][:32])) < 1e-8

    def test_constant(self):
        fhat = factor(PowerSeries.constant(1 / E, 8))
        assert np.allclose(fhat.coeffs, 0, atol=1e-15)

    def test_roundtrip_random_degree_three(self, rng):
        for _ in range(10):
            cov = random_cover(rng, 3)
            f = compose_cover(cov, 64)
            back = kappa_of(factor(f))
            assert np.max(np.abs(back.coeffs - f.coeffs)) < 1e-10

    def test_real_center_lift_is_exact(self, rng):
        for c0 in (-0.4, 0.0, 0.3):
            cov = BlaschkeCover((0j, 0.2 + 0.1j), 0.3, 0.8, center=c0)
            fhat = blaschke_series(cov, 48)
            got = factor(compose_cover(cov, 48))
            assert np.max(np.abs(got.coeffs[:24] - fhat.coeffs[:24])) < 1e-9

    def test_vanishing_detected(self):
        f = PowerSeries([0.3, 1.0], order=32) * kappa_coeffs(1, 32) * 0.7
        with pytest.raises(VanishingFunction):
            factor(f)

    def test_zero_constant(self):
        with pytest.raises(VanishingFunction):
            factor(PowerSeries([0.0, 0.5]))

    def test_norm_exceeded(self):
        with pytest.raises(NormExceeded):
            factor(PowerSeries([0.5, 0.9], order=8))


class TestOmega:
    def test_identity_when_centered(self, rng):
        c = random_series(rng, 6, 0.1)
        c[0] = 0
        om, g = omega_decompose(PowerSeries(c))
        assert om.is_identity() or om.a == 0
        assert np.allclose(g.coeffs, c)

    def test_constant(self):
        om, g = omega_decompose(PowerSeries.constant(0.3 + 0.2j, 5))
        assert np.allclose(g.coeffs, 0)

    def test_reconstruction(self, rng):
        cov = random_cover(rng, 4)
        cov = BlaschkeCover(cov.zeros, cov.rotation, 0.9, center=0.2 - 0.3j)
        fhat = blaschke_series(cov, 30)
        om, g = omega_decompose(fhat)
        assert g.coeffs[0] == 0
        assert np.max(np.abs(om.apply_series(g).coeffs - fhat.coeffs)) < 1e-12

    def test_boundary_constant(self):
        with pytest.raises(ConstantOnBoundary):
            omega_decompose(PowerSeries([1.0, 0.0]))


class TestMobius:
    def test_inverse(self, rng):
        m = MobiusAutomorphism(1.1, 0.3 - 0.5j)
        z = 0.7 * np.exp(1j * rng.uniform(0, 2 * np.pi, 8))
        assert np.allclose(m.inverse()(m(z)), z)

    def test_disk_preserved(self, rng):
        m = MobiusAutomorphism(0.4, 0.8j)
        z = np.exp(1j * rng.uniform(0, 2 * np.pi, 8))
        assert np.allclose(np.abs(m(z)), 1)

    def test_rejects_outside(self):
        with pytest.raises(ValueError):
            MobiusAutomorphism(0.0, 1.0)


def test_winding_number():
    th = np.linspace(0, 2 * np.pi, 400, endpoint=False)
    assert winding_number(np.exp(2j * th)) == 2
    assert winding_number(2 + np.exp(1j * th)) == 0
