"""Weighted area integrals on the disk.

The space of holomorphic ``psi`` with ``sup (1 - |z|^2)^2 |psi(z)| < inf`` is
paired with integrable holomorphic functions through

    <psi, phi> = iint_D (1 - |z|^2)^2 conj(psi) phi dx dy,

and its elements are reproduced by the kernel ``(3/pi) (1 - conj(z) zeta)^-4``.
Integrals use a polar product rule: Gauss-Legendre in ``u = r^2`` times the
uniform rule in the angle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.optimize import minimize
from scipy.special import comb

from .config import current
from .series import PowerSeries, series_eval


@dataclass(frozen=True)
class DiskGrid:
    """Product quadrature on the unit disk.

    ``n_r`` Gauss-Legendre nodes in ``u = r^2`` integrate polynomials in ``r^2``
    of degree ``<= 2 n_r - 1`` exactly; ``n_theta`` equispaced angles integrate
    ``exp(i k theta)`` exactly for ``|k| < n_theta``.
    """

    n_r: int = 128
    n_theta: int = 512

    def __post_init__(self):
        if self.n_r < 8 or self.n_theta < 16:
            raise ValueError("need n_r >= 8 and n_theta >= 16")

    @cached_property
    def radii(self) -> np.ndarray:
        x, _ = np.polynomial.legendre.leggauss(self.n_r)
        return np.sqrt((x + 1) / 2)

    @cached_property
    def angles(self) -> np.ndarray:
        return 2 * math.pi * np.arange(self.n_theta) / self.n_theta

    @cached_property
    def points(self) -> np.ndarray:
        """Nodes as an ``(n_r, n_theta)`` complex array."""
        return self.radii[:, None] * np.exp(1j * self.angles)[None, :]

    @cached_property
    def weights(self) -> np.ndarray:
        # dA = r dr dtheta = (1/2) du dtheta; GL weights on [-1, 1] carry another 1/2
        _, w = np.polynomial.legendre.leggauss(self.n_r)
        wr = w / 4
        return np.broadcast_to(wr[:, None] * (2 * math.pi / self.n_theta), (self.n_r, self.n_theta))

    @cached_property
    def bergman_weight(self) -> np.ndarray:
        """``(1 - |z|^2)^2`` at the nodes."""
        return np.broadcast_to(((1 - self.radii**2) ** 2)[:, None], (self.n_r, self.n_theta))

    def integrate(self, values) -> complex:
        """``iint_D values dA`` for node samples of shape ``(n_r, n_theta)``."""
        v = np.asarray(values)
        # fixed summation order: angles first, then radii
        return complex(np.sum(np.sum(v * self.weights, axis=1)))

    def sample(self, psi: PowerSeries) -> np.ndarray:
        return series_eval(psi, self.points)


def disk_grid(n_r: int | None = None, n_theta: int | None = None) -> DiskGrid:
    return DiskGrid(n_r or current().grid_nr, n_theta or current().grid_ntheta)


def pair(phi: PowerSeries, psi: PowerSeries, grid: DiskGrid) -> complex:
    """``iint_D (1 - |z|^2)^2 conj(psi(z)) phi(z) dA``."""
    return grid.integrate(grid.bergman_weight * np.conj(grid.sample(psi)) * grid.sample(phi))


def bergman_norm(psi: PowerSeries, n_radii: int | None = None, n_angles: int | None = None) -> float:
    """``sup_D (1 - |z|^2)^2 |psi(z)|`` from a polar lattice plus one local refinement."""
    n_radii = n_radii or current().bergman_radii
    n_angles = n_angles or current().bergman_angles
    r = np.arange(n_radii) / n_radii
    th = 2 * math.pi * np.arange(n_angles) / n_angles
    z = r[:, None] * np.exp(1j * th)[None, :]
    vals = (1 - r[:, None] ** 2) ** 2 * np.abs(series_eval(psi, z))
    i, j = np.unravel_index(int(np.argmax(vals)), vals.shape)
    best = float(vals[i, j])

    # refine in Cartesian coordinates: polar ones degenerate when the peak sits near 0
    def neg(x):
        w = complex(x[0], x[1])
        if abs(w) >= 1:
            return 0.0
        return -(1 - abs(w) ** 2) ** 2 * abs(series_eval(psi, w))

    w0 = z[i, j]
    h = max(r[i], 1.0 / n_radii) * 2 * math.pi / n_angles + 0.5 / n_radii
    res = minimize(neg, [w0.real, w0.imag], method="Nelder-Mead",
                   options={"xatol": 1e-12, "fatol": 1e-15, "initial_simplex":
                            np.array([[w0.real, w0.imag], [w0.real + h, w0.imag], [w0.real, w0.imag + h]])})
    return max(best, float(-res.fun))


def reproduce(psi: PowerSeries, zeta: complex, grid: DiskGrid) -> complex:
    """``(3/pi) iint_D (1 - |z|^2)^2 psi(z) / (1 - conj(z) zeta)^4 dA``."""
    if abs(zeta) > 0.9:
        raise ValueError("|zeta| must be <= 0.9 for the kernel quadrature")
    z = grid.points
    kern = 1.0 / (1 - np.conj(z) * zeta) ** 4
    return 3 / math.pi * grid.integrate(grid.bergman_weight * grid.sample(psi) * kern)


def derived_coefficient_constant(p: int) -> float:
    """``(p+1)(p+2)(p+3)/(2 pi)``, from differentiating the reproducing kernel p times."""
    return (p + 1) * (p + 2) * (p + 3) / (2 * math.pi)


def printed_coefficient_constant(p: int) -> float:
    """``(p+1)(p+2)(p+3)(p+4)/(2 pi)``, the alternative normalization carried in reports."""
    return (p + 1) * (p + 2) * (p + 3) * (p + 4) / (2 * math.pi)


def coefficient_constant(p: int, grid: DiskGrid) -> float:
    """The real ``M`` with ``M iint (1 - |z|^2)^2 z^p conj(z)^p dA = 1`` on ``grid``."""
    r2p = grid.radii ** (2 * p)
    integral = grid.integrate(grid.bergman_weight * r2p[:, None])
    return 1.0 / integral.real


def coeff_functional(p: int, psi: PowerSeries, grid: DiskGrid) -> tuple[complex, float]:
    """Taylor coefficient ``p`` of ``psi`` as a weighted area integral.

    Returns ``(coefficient, constant)`` where the constant is calibrated so the
    identity is exact for ``psi = z^p``.
    """
    if p < 0:
        raise ValueError("p must be >= 0")
    const = coefficient_constant(p, grid)
    zbar_p = np.conj(grid.points) ** p
    return const * grid.integrate(grid.bergman_weight * grid.sample(psi) * zbar_p), const


@dataclass(frozen=True, eq=False)
class BeltramiField:
    """Samples of a bounded density ``mu`` at the nodes of a :class:`DiskGrid`."""

    grid: DiskGrid
    samples: np.ndarray

    def __post_init__(self):
        s = np.asarray(self.samples, dtype=complex)
        if s.shape != (self.grid.n_r, self.grid.n_theta):
            raise ValueError("samples must have shape (n_r, n_theta)")
        s = s.copy()
        s.flags.writeable = False
        object.__setattr__(self, "samples", s)

    @cached_property
    def supnorm(self) -> float:
        return float(np.max(np.abs(self.samples)))

    @classmethod
    def from_function(cls, fn, grid: DiskGrid) -> "BeltramiField":
        return cls(grid, fn(grid.points))

    def __add__(self, other: "BeltramiField") -> "BeltramiField":
        return BeltramiField(self.grid, self.samples + other.samples)

    def __mul__(self, k: complex) -> "BeltramiField":
        return BeltramiField(self.grid, self.samples * k)

    __rmul__ = __mul__


def apply_L(mu: BeltramiField, N: int) -> PowerSeries:
    """Taylor coefficients of ``(3/pi) iint_D mu(z) / (1 - conj(z) zeta)^4 dA`` in ``zeta``.

    The kernel is expanded as ``sum_k C(k+3, 3) conj(z)^k zeta^k`` and integrated
    term by term on the field's grid.
    """
    grid = mu.grid
    zbar = np.conj(grid.points)
    weighted = mu.samples * grid.weights
    coeffs = np.empty(N + 1, dtype=complex)
    power = np.ones_like(zbar)
    for k in range(N + 1):
        coeffs[k] = comb(k + 3, 3, exact=True) * np.sum(np.sum(weighted * power, axis=1))
        power = power * zbar
    return PowerSeries(3 / math.pi * coeffs)


def integrate_against(phi: PowerSeries, mu: BeltramiField) -> complex:
    """``iint_D phi conj(mu) dA``, the right-hand side of the duality with ``apply_L``."""
    return mu.grid.integrate(mu.grid.sample(phi) * np.conj(mu.samples))
