"""Schwarzian derivatives and the Beltrami densities built from them.

A series ``psi`` on the disk is carried to the exterior disk ``|zeta| > 1`` as
``S(zeta) = psi(1/zeta) / zeta^4``.  When the exterior norm
``sup (|zeta|^2 - 1)^2 |S(zeta)|`` is below 2, the Ahlfors-Weill formula gives an
explicit Beltrami coefficient of a quasiconformal extension.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.optimize import minimize

from .config import current
from .errors import DegenerateDerivative, NormTooLarge, ZeroDensity
from .pairing import BeltramiField, DiskGrid, disk_grid
from .series import PowerSeries, series_derivative, series_div, series_eval


@dataclass(frozen=True, eq=False)
class ExteriorSeries:
    """``F(zeta) = zeta + b_1/zeta + b_2/zeta^2 + ...`` truncated after ``b_order``."""

    b: np.ndarray

    def __init__(self, b):
        arr = np.array(b, dtype=complex).ravel()
        arr.flags.writeable = False
        object.__setattr__(self, "b", arr)

    @property
    def order(self) -> int:
        return self.b.size

    def __call__(self, zeta):
        zeta = np.asarray(zeta, dtype=complex)
        u = 1 / zeta
        return zeta + u * series_eval(PowerSeries(np.concatenate([self.b, [0]])), u)

    def inverted(self, order: int = 64) -> PowerSeries:
        """Series of ``G(u) = 1 / F(1/u) = u / (1 + b_1 u^2 + b_2 u^3 + ...)``."""
        n = max(order, self.order + 2)
        den = np.zeros(n + 1, dtype=complex)
        den[0] = 1
        den[2 : 2 + self.order] = self.b
        return series_div(PowerSeries.variable(n), PowerSeries(den))


def _schwarzian_series(F: PowerSeries) -> PowerSeries:
    d1 = series_derivative(F)
    if abs(d1.coeffs[0]) <= current().zero_tol:
        raise DegenerateDerivative("F'(0) = 0")
    q = series_div(series_derivative(d1), d1)
    dq = series_derivative(q)
    return dq - 0.5 * q.truncate(dq.order) * q.truncate(dq.order)


def schwarzian(F: PowerSeries | ExteriorSeries, order: int = 64) -> PowerSeries:
    """Schwarzian derivative ``(F''/F')' - (F''/F')^2 / 2``.

    For a disk series of order N the result has order N - 3.  For an
    :class:`ExteriorSeries` the result ``T`` is a series in ``u = 1/zeta`` with
    ``S_F(zeta) = T(1/zeta)``; it is ``u^4 S_G(u)`` where ``G(u) = 1/F(1/u)``
    (inversion is Moebius, so it does not change the Schwarzian); ``order``
    sets the truncation of ``G``.
    """
    if isinstance(F, ExteriorSeries):
        sg = _schwarzian_series(F.inverted(order))
        return PowerSeries(np.concatenate([np.zeros(4, dtype=complex), sg.coeffs]))
    return _schwarzian_series(F)


@dataclass(frozen=True, eq=False)
class ExteriorTransfer:
    """The rule ``zeta -> psi(1/zeta) / zeta^4`` on ``|zeta| > 1`` and its weighted sup norm."""

    psi: PowerSeries
    rmax: float = 4.0

    def __call__(self, zeta):
        zeta = np.asarray(zeta, dtype=complex)
        return series_eval(self.psi, 1 / zeta) / zeta**4

    def weighted(self, zeta):
        """``(|zeta|^2 - 1)^2 |S(zeta)|``."""
        zeta = np.asarray(zeta, dtype=complex)
        return (np.abs(zeta) ** 2 - 1) ** 2 * np.abs(self(zeta))

    @cached_property
    def norm(self) -> float:
        """Sup of :meth:`weighted` over ``|zeta| > 1``.

        A lattice covers ``1 < |zeta| <= rmax``; the remainder ``|zeta| > rmax`` is
        sampled through ``z = 1/zeta`` (where the weight becomes
        ``(1 - |z|^2)^2 |psi(z)|``), including the point at infinity.
        A local refinement polishes the best lattice point.
        """
        s = current()
        nr, na = s.bergman_radii, s.bergman_angles
        th = 2 * math.pi * np.arange(na) / na
        rho = 1 + (self.rmax - 1) * np.arange(1, nr + 1) / nr
        ext = self.weighted(rho[:, None] * np.exp(1j * th)[None, :])
        rz = np.arange(nr) / (nr * self.rmax)
        inner = (1 - rz[:, None] ** 2) ** 2 * np.abs(series_eval(self.psi, rz[:, None] * np.exp(1j * th)[None, :]))

        # local refinement in Cartesian coordinates (polar ones degenerate near z = 0)
        if ext.max() >= inner.max():
            i, j = np.unravel_index(int(np.argmax(ext)), ext.shape)
            best = float(ext[i, j])
            w0 = rho[i] * np.exp(1j * th[j])
            h = rho[i] * 2 * math.pi / na + (self.rmax - 1) / (2 * nr)

            def neg(x):
                w = complex(x[0], x[1])
                return 0.0 if abs(w) <= 1 else -float(self.weighted(w))
        else:
            i, j = np.unravel_index(int(np.argmax(inner)), inner.shape)
            best = float(inner[i, j])
            w0 = rz[i] * np.exp(1j * th[j])
            h = max(rz[i], 1.0 / (nr * self.rmax)) * 2 * math.pi / na + 1.0 / (2 * nr * self.rmax)

            def neg(x):
                w = complex(x[0], x[1])
                if abs(w) > 1.0 / self.rmax:
                    return 0.0
                return -(1 - abs(w) ** 2) ** 2 * abs(series_eval(self.psi, w))

        res = minimize(neg, [w0.real, w0.imag], method="Nelder-Mead",
                       options={"xatol": 1e-12, "fatol": 1e-15, "initial_simplex":
                                np.array([[w0.real, w0.imag], [w0.real + h, w0.imag], [w0.real, w0.imag + h]])})
        return max(best, float(-res.fun))


def transfer_exterior(psi: PowerSeries) -> ExteriorTransfer:
    return ExteriorTransfer(psi, current().exterior_rmax)


def ahlfors_weill(psi: PowerSeries, grid: DiskGrid | None = None) -> BeltramiField:
    """Sample ``mu(zeta) = -(1/2) (1 - |zeta|^2)^2 (zeta^2 / conj(zeta)^2) S(1/conj(zeta))``.

    ``S`` is the exterior transfer of ``psi``; requires its norm to be < 2.
    """
    grid = grid or disk_grid()
    S = transfer_exterior(psi)
    if S.norm >= 2:
        raise NormTooLarge(f"exterior norm {S.norm:.6g} is not < 2")
    z = grid.points
    mu = -0.5 * (1 - np.abs(z) ** 2) ** 2 * (z**2 / np.conj(z) ** 2) * S(1 / np.conj(z))
    return BeltramiField(grid, mu)


def teichmuller_mu(phi: PowerSeries, r: float, t: complex, grid: DiskGrid | None = None) -> BeltramiField:
    """Sample ``r t |phi| / phi``; nodes where ``phi`` vanishes get 0."""
    if not 0 < r < 1:
        raise ValueError("r must lie in (0, 1)")
    if not np.any(np.abs(phi.coeffs) > 0):
        raise ZeroDensity("phi is identically zero")
    grid = grid or disk_grid()
    vals = grid.sample(phi)
    mag = np.abs(vals)
    mu = np.zeros_like(vals)
    ok = mag > current().zero_tol
    mu[ok] = r * t * mag[ok] / vals[ok]
    return BeltramiField(grid, mu)
