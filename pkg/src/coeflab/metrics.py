"""Hyperbolic geometry of the disk and the cover-side distance estimates.

Conventions: the disk carries ``|dz| / (1 - |z|^2)``, curvature -4, with
distance ``atanh |(z1 - z2)/(1 - conj(z2) z1)|``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from .config import current
from .covering import BlaschkeCover, MobiusAutomorphism, blaschke_series
from .errors import DegenerateLeadingCoefficient, GridTooCoarse, NormExceeded, OutsideDisk
from .series import PowerSeries, series_eval

#: returned by :func:`ball_distance` when the shifted cover touches the unit circle
BOUNDARY = math.inf


def hyp_distance(z1: complex, z2: complex) -> float:
    if abs(z1) >= 1 or abs(z2) >= 1:
        raise OutsideDisk(f"points must lie in the open disk: {z1!r}, {z2!r}")
    q = abs((z1 - z2) / (1 - complex(z2).conjugate() * z1))
    return math.atanh(q)


def golusin_bound(m: int, c_m: complex, t) -> np.ndarray | float:
    """Upper bound ``|t|^m (|t| + |c_m|)/(1 + |c_m||t|)`` for a self-map with a zero of order m."""
    if m < 1:
        raise ValueError("m must be >= 1")
    c = abs(c_m)
    if c == 0:
        raise DegenerateLeadingCoefficient("leading coefficient c_m is zero")
    if c > 1 + current().norm_slack:
        raise ValueError(f"|c_m| = {c} exceeds 1")
    r = np.abs(t)
    return r**m * (r + c) / (1 + c * r)


def radial_lower_bound(m: int, c: float, r):
    """Minimal radial metric ``m c r^(m-1) / (1 - c^2 r^(2m))`` for curvature <= -4."""
    r = np.asarray(r, dtype=float)
    out = m * c * r ** (m - 1) / (1 - c * c * r ** (2 * m))
    return out[()] if out.ndim == 0 else out


def dominating_metric(m: int, r):
    """``lambda_m(r) = m r^(m-1) / (1 - r^(2m))``, the pullback of the disk metric by ``t^m``."""
    return radial_lower_bound(m, 1.0, r)


def log_radial_grid(r0: float, r1: float, n: int) -> np.ndarray:
    """``n`` radii in ``[r0, r1]`` equally spaced in ``log r``."""
    return np.geomspace(r0, r1, n)


@dataclass(frozen=True)
class RadialMetricSample:
    radii: np.ndarray
    density: np.ndarray
    m: int = 1
    c: float = 1.0
    # optional accurate samples of log(lambda / (m c r^(m-1))); where that ratio is
    # 1 + tiny, computing it from ``density`` loses most digits
    log_ratio: np.ndarray | None = None

    def __post_init__(self):
        r = np.asarray(self.radii, dtype=float)
        lam = np.asarray(self.density, dtype=float)
        if r.shape != lam.shape or r.ndim != 1:
            raise ValueError("radii and density must be 1-d arrays of equal length")
        if np.any(r <= 0) or np.any(r >= 1) or np.any(np.diff(r) <= 0):
            raise ValueError("radii must increase strictly inside (0, 1)")
        if not np.all(np.isfinite(lam)) or np.any(lam <= 0):
            raise ValueError("density must be positive and finite")
        if not 0 < self.c <= 1:
            raise ValueError("c must lie in (0, 1]")
        object.__setattr__(self, "radii", r)
        object.__setattr__(self, "density", lam)
        if self.log_ratio is not None:
            lr = np.asarray(self.log_ratio, dtype=float)
            if lr.shape != r.shape:
                raise ValueError("log_ratio must match radii")
            object.__setattr__(self, "log_ratio", lr)

    @classmethod
    def from_function(cls, fn: Callable[[np.ndarray], np.ndarray], m: int = 1, c: float = 1.0,
                      r0: float = 0.1, r1: float = 0.9, n: int = 512) -> "RadialMetricSample":
        r = log_radial_grid(r0, r1, n)
        return cls(r, np.broadcast_to(fn(r), r.shape).astype(float), m, c)

    @classmethod
    def dominating(cls, m: int, c: float = 1.0, r0: float = 0.1, r1: float = 0.9,
                   n: int = 512) -> "RadialMetricSample":
        """Samples of ``m c r^(m-1) / (1 - c^2 r^(2m))`` with an exact log ratio."""
        r = log_radial_grid(r0, r1, n)
        return cls(r, radial_lower_bound(m, c, r), m, c, -np.log1p(-(c * c) * r ** (2 * m)))

    def log_normalized(self) -> np.ndarray:
        if self.log_ratio is not None:
            return self.log_ratio
        return np.log(self.normalization_ratio())

    def normalization_ratio(self) -> np.ndarray:
        """``lambda(r) / (m c r^(m-1))``; tends to 1 as ``r -> 0`` for normalized metrics."""
        return self.density / (self.m * self.c * self.radii ** (self.m - 1))


# sixth-order central second difference
_D2 = np.array([1 / 90, -3 / 20, 3 / 2, -49 / 18, 3 / 2, -3 / 20, 1 / 90])
_HALF = 3


def curvature_defect(metric: RadialMetricSample) -> tuple[np.ndarray, np.ndarray]:
    """Curvature defect ``4 lambda^2 - Laplacian(log lambda)`` at interior radii.

    Zero for curvature exactly -4; positive where the curvature exceeds -4.
    The radial Laplacian is taken in ``s = log r``, where it reads
    ``r^-2 d^2u/ds^2``; the grid must be uniform in ``log r``.
    The harmonic part ``log(m c r^(m-1))`` of ``log lambda`` is removed before
    differencing, which keeps the round-off small where ``lambda`` is tiny.
    Returns ``(radii, defect)`` for the points the stencil reaches.
    """
    r = metric.radii
    if r.size < 2 * _HALF + 5:
        raise GridTooCoarse(f"need at least {2 * _HALF + 5} radii, got {r.size}")
    s = np.log(r)
    h = np.diff(s)
    if not np.allclose(h, h[0], rtol=1e-8, atol=0):
        raise GridTooCoarse("radii must be equally spaced in log r (see log_radial_grid)")
    h = (s[-1] - s[0]) / (r.size - 1)
    u = metric.log_normalized()
    u_ss = np.convolve(u, _D2[::-1], mode="valid") / h**2
    ri = r[_HALF:-_HALF]
    lam = metric.density[_HALF:-_HALF]
    return ri, 4 * lam**2 - u_ss / ri**2


def max_relative_defect(metric: RadialMetricSample) -> float:
    ri, d = curvature_defect(metric)
    lam = metric.density[_HALF:-_HALF]
    return float(np.max(np.abs(d) / lam**2))


def boundary_sup(g: PowerSeries, samples: int | None = None) -> float:
    """``max |g|`` on the unit circle: dense sampling then one bounded refinement."""
    n = max(samples or current().boundary_samples, 8 * g.order)
    theta = np.linspace(0.0, 2 * math.pi, n, endpoint=False)
    vals = np.abs(series_eval(g, np.exp(1j * theta)))
    i = int(np.argmax(vals))
    h = 2 * math.pi / n
    res = minimize_scalar(
        lambda th: -abs(series_eval(g, complex(math.cos(th), math.sin(th)))),
        bounds=(theta[i] - h, theta[i] + h),
        method="bounded",
        options={"xatol": 1e-12},
    )
    return max(float(vals[i]), float(-res.fun))


def ball_distance(fhat: PowerSeries, c0hat: complex) -> float:
    """Distance ``atanh || (fhat - c0)/(1 - conj(c0) fhat) ||_inf`` in the unit ball of bounded functions."""
    if abs(c0hat) >= 1:
        raise OutsideDisk(f"|c0hat| = {abs(c0hat)} is not < 1")
    if boundary_sup(fhat) > 1 + current().norm_slack:
        raise NormExceeded("fhat leaves the closed unit disk on the boundary")
    g = MobiusAutomorphism(0.0, c0hat).apply_series(fhat)
    sup = boundary_sup(g)
    if sup >= 1 - current().boundary_tol:
        return BOUNDARY
    return math.atanh(sup)


def leading_coefficient(fhat: PowerSeries, tol: float | None = None) -> tuple[int, complex]:
    """Order ``m`` and coefficient ``c_m`` of the first nonzero term past the constant."""
    tol = current().zero_tol if tol is None else tol
    for k in range(1, fhat.order + 1):
        if abs(fhat.coeffs[k]) > tol:
            return k, complex(fhat.coeffs[k])
    raise DegenerateLeadingCoefficient("series is constant to its order")


DEFAULT_TGRID = tuple(np.geomspace(1e-3, 5e-2, 12))


def homotopy_exponent(cover: BlaschkeCover | PowerSeries,
                      tgrid: Sequence[float] = DEFAULT_TGRID,
                      order: int = 48) -> tuple[float, float]:
    """Fit ``log delta(t) = slope log t + log constant`` along the homotopy ``fhat(t z)``.

    ``delta(t)`` is :func:`ball_distance` of ``fhat(t z)`` from the origin.
    The slope estimates the zero order ``m`` and the constant ``|c_m|``.
    A term linear in ``t`` joins the regression to absorb the first correction
    ``delta = |c_m| t^m (1 + O(t))``.
    """
    t = np.asarray(tgrid, dtype=float)
    if t.size < 4 or np.any(t <= 0) or np.any(t > 0.05):
        raise ValueError("tgrid needs at least 4 points in (0, 0.05]")
    fhat = cover if isinstance(cover, PowerSeries) else blaschke_series(cover, order)
    if abs(fhat.coeffs[0]) > 1e-12:
        raise ValueError("the cover must vanish at the origin")
    delta = np.array([ball_distance(fhat.scale_variable(tk), 0j) for tk in t])
    design = np.column_stack([np.log(t), np.ones_like(t), t])
    (slope, intercept, _), *_ = np.linalg.lstsq(design, np.log(delta), rcond=None)
    return float(slope), float(math.exp(intercept))
