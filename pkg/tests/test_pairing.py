import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from coeflab.pairing import (
    BeltramiField,
    DiskGrid,
    apply_L,
    bergman_norm,
    coeff_functional,
    coefficient_constant,
    derived_coefficient_constant,
    disk_grid,
    integrate_against,
    pair,
    printed_coefficient_constant,
    reproduce,
)
from coeflab.series import PowerSeries, series_eval

from conftest import random_series


@pytest.fixture(scope="module")
def grid():
    return DiskGrid(128, 512)


class TestGrid:
    def test_area(self, grid):
        assert grid.integrate(np.ones(grid.points.shape)) == pytest.approx(math.pi, abs=1e-12)
        assert np.all(grid.weights > 0)

    def test_weighted_area(self, grid):
        assert grid.integrate(grid.bergman_weight).real == pytest.approx(math.pi / 3, abs=1e-12)

    def test_odd_moment(self, grid):
        assert abs(grid.integrate(grid.points)) < 1e-14

    @given(st.integers(0, 60))
    def test_radial_moments_exact(self, k):
        g = DiskGrid(32, 16)
        # iint |z|^(2k) dA = pi / (k + 1)
        assert g.integrate(np.abs(g.points) ** (2 * k)).real == pytest.approx(math.pi / (k + 1), rel=1e-12)

    def test_rejects_small(self):
        with pytest.raises(ValueError):
            DiskGrid(4, 64)

    def test_settings_default(self):
        g = disk_grid()
        assert (g.n_r, g.n_theta) == (128, 512)


class TestPair:
    def test_ones(self, grid):
        assert pair(PowerSeries([1.0]), PowerSeries([1.0]), grid) == pytest.approx(math.pi / 3, abs=1e-12)

    def test_orthogonal(self, grid):
        assert abs(pair(PowerSeries.monomial(2, 4), PowerSeries.monomial(3, 4), grid)) < 1e-14

    def test_z_z(self, grid):
        # 2 pi int_0^1 (1 - r^2)^2 r^3 dr = 2 pi (1/4 - 1/3 + 1/8) = pi / 12
        assert pair(PowerSeries([0, 1.0]), PowerSeries([0, 1.0]), grid) == pytest.approx(math.pi / 12, abs=1e-12)

    def test_sesquilinear(self, grid, rng):
        a, b, c = (PowerSeries(random_series(rng, 5)) for _ in range(3))
        s = 0.3 - 1.2j
        assert pair(a + s * b, c, grid) == pytest.approx(pair(a, c, grid) + s * pair(b, c, grid), abs=1e-12)
        assert pair(a, s * c, grid) == pytest.approx(np.conj(s) * pair(a, c, grid), abs=1e-12)


class TestBergmanNorm:
    def test_one(self):
        assert bergman_norm(PowerSeries([1.0])) == pytest.approx(1.0, abs=1e-12)

    def test_z(self):
        assert bergman_norm(PowerSeries([0, 1.0])) == pytest.approx(0.64 / math.sqrt(5), abs=1e-10)

    def test_zero(self):
        assert bergman_norm(PowerSeries([0.0, 0.0])) == 0

    def test_lower_bounds_samples(self, rng):
        psi = PowerSeries(random_series(rng, 6))
        z = 0.95 * np.sqrt(rng.uniform(size=2000)) * np.exp(2j * np.pi * rng.uniform(size=2000))
        sampled = np.max((1 - np.abs(z) ** 2) ** 2 * np.abs(series_eval(psi, z)))
        assert bergman_norm(psi) >= sampled - 1e-12


class TestReproduce:
    def test_constant_at_origin(self, grid):
        assert reproduce(PowerSeries([1.0]), 0, grid) == pytest.approx(1.0, abs=1e-12)

    def test_cube(self, grid):
        zeta = 0.4 + 0.2j
        assert abs(reproduce(PowerSeries.monomial(3, 3), zeta, grid) - zeta**3) < 1e-8

    def test_zero(self, grid):
        assert reproduce(PowerSeries([0.0]), 0.3, grid) == 0

    def test_random_polynomials(self, grid, rng):
        for _ in range(5):
            psi = PowerSeries(random_series(rng, int(rng.integers(0, 9))))
            for _ in range(20):
                zeta = 0.7 * math.sqrt(rng.uniform()) * complex(np.exp(2j * np.pi * rng.uniform()))
                assert abs(reproduce(psi, zeta, grid) - series_eval(psi, zeta)) < 1e-8

    def test_precondition(self, grid):
        with pytest.raises(ValueError):
            reproduce(PowerSeries([1.0]), 0.95, grid)


class TestCoefficientFunctional:
    def test_p0(self, grid):
        coef, const = coeff_functional(0, PowerSeries([1.0]), grid)
        assert coef == pytest.approx(1.0, abs=1e-12)
        assert const == pytest.approx(3 / math.pi, abs=1e-12)

    def test_p2(self, grid):
        coef, _ = coeff_functional(2, PowerSeries.monomial(2, 2, 5.0), grid)
        assert coef == pytest.approx(5.0, abs=1e-9)

    def test_orthogonal(self, grid):
        coef, _ = coeff_functional(1, PowerSeries.monomial(3, 3), grid)
        assert abs(coef) < 1e-13

    def test_constants(self, grid):
        for p in range(9):
            assert coefficient_constant(p, grid) == pytest.approx(derived_coefficient_constant(p), rel=1e-8)
            assert printed_coefficient_constant(p) == pytest.approx((p + 4) * derived_coefficient_constant(p))

    def test_extracts_random_coefficients(self, grid, rng):
        c = random_series(rng, 8)
        psi = PowerSeries(c)
        for p in range(9):
            assert coeff_functional(p, psi, grid)[0] == pytest.approx(c[p], abs=1e-10)


class TestApplyL:
    def test_zero(self, grid):
        out = apply_L(BeltramiField(grid, np.zeros(grid.points.shape)), 5)
        assert np.all(out.coeffs == 0)

    @pytest.mark.parametrize("p", range(7))
    def test_weighted_holomorphic_density(self, grid, p):
        mu = BeltramiField(grid, grid.bergman_weight * grid.points**p)
        assert np.max(np.abs(apply_L(mu, p + 3).coeffs - np.eye(p + 4)[p])) < 1e-8

    @pytest.mark.parametrize("p", range(1, 7))
    def test_weighted_antiholomorphic_density_vanishes(self, grid, p):
        # conj(z)^p conj(z)^k has angular frequency -(p + k) != 0
        mu = BeltramiField(grid, grid.bergman_weight * np.conj(grid.points) ** p)
        assert np.max(np.abs(apply_L(mu, p + 3).coeffs)) < 1e-12

    def test_indicator(self, grid):
        ind = (np.abs(grid.points) <= 0.5).astype(float)
        out = apply_L(BeltramiField(grid, ind), 6).coeffs
        assert np.max(np.abs(out[1:])) < 1e-12
        assert out[0] == pytest.approx(3 / math.pi * grid.integrate(ind), abs=1e-12)

    def test_linear(self, grid, rng):
        a = BeltramiField(grid, rng.normal(size=grid.points.shape) * grid.bergman_weight)
        b = BeltramiField(grid, rng.normal(size=grid.points.shape) * grid.bergman_weight)
        s = 0.5 + 2j
        lhs = apply_L(a + s * b, 8).coeffs
        rhs = apply_L(a, 8).coeffs + s * apply_L(b, 8).coeffs
        assert np.allclose(lhs, rhs, atol=1e-12)

    def test_duality(self, grid, rng):
        zz = grid.points
        for _ in range(5):
            phi = PowerSeries(random_series(rng, int(rng.integers(0, 9))))
            q = PowerSeries(random_series(rng, int(rng.integers(0, 9))))
            mu = BeltramiField(grid, grid.bergman_weight * grid.sample(q) * (1 + 0.5 * np.conj(zz)))
            lhs = pair(phi, apply_L(mu, 40), grid)
            rhs = integrate_against(phi, mu)
            assert abs(lhs - rhs) < 1e-8 * max(1, abs(rhs))

    def test_recovers_coefficients_of_weighted_series(self, grid, rng):
        c = random_series(rng, 6)
        mu = BeltramiField(grid, grid.bergman_weight * grid.sample(PowerSeries(c)))
        assert np.allclose(apply_L(mu, 6).coeffs, c, atol=1e-10)


class TestBeltramiField:
    def test_supnorm(self, grid):
        mu = BeltramiField.from_function(lambda z: 0.3 * z, grid)
        assert mu.supnorm == pytest.approx(0.3 * grid.radii.max())

    def test_shape_checked(self, grid):
        with pytest.raises(ValueError):
            BeltramiField(grid, np.zeros(3))


def test_bergman_norm_peak_near_origin():
    # (1 - r^2)^2 (1 + eps r) peaks at r ~ eps/4 on the positive axis
    from scipy.optimize import minimize_scalar
    eps = 0.02
    res = minimize_scalar(lambda r: -(1 - r * r) ** 2 * (1 + eps * r), bounds=(0, 0.5), method="bounded",
                          options={"xatol": 1e-12})
    assert bergman_norm(PowerSeries([1, eps])) == pytest.approx(-res.fun, abs=1e-13)
