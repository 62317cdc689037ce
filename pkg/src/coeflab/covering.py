"""The covering map ``kappa(z) = exp((z - 1)/(z + 1))`` and its lifts.

Every non-vanishing self-map ``f`` of the disk factors as ``f = kappa o fhat``
with ``fhat`` a self-map of the disk.  This module computes the coefficients
of ``kappa`` and ``kappa(z^n)``, renders finite Blaschke products (the search
space for ``fhat``) as series, composes and inverts the factorization, and
splits a cover into a Moebius shift and a cover fixing the origin.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .config import current
from .errors import ConstantOnBoundary, NormExceeded, VanishingFunction
from .series import (
    PowerSeries,
    series_compose,
    series_div,
    series_exp,
    series_eval,
    series_log,
    series_mul,
)

TWO_PI = 2 * math.pi


@dataclass(frozen=True)
class MobiusAutomorphism:
    """``z -> exp(i*phase) * (z - a) / (1 - conj(a) z)`` with ``|a| < 1``."""

    phase: float = 0.0
    a: complex = 0j

    def __post_init__(self):
        if not abs(self.a) < 1:
            raise ValueError(f"|a| must be < 1, got {abs(self.a)}")
        object.__setattr__(self, "phase", float(self.phase) % TWO_PI)
        object.__setattr__(self, "a", complex(self.a))

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = cmath.exp(1j * self.phase) * (z - self.a) / (1 - np.conj(self.a) * z)
        return out[()] if out.ndim == 0 else out

    def inverse(self) -> "MobiusAutomorphism":
        # z = e^{-it} (w + a e^{it}) / (1 + conj(a) e^{-it} w)
        return MobiusAutomorphism(-self.phase, -self.a * cmath.exp(1j * self.phase))

    def compose_rotation(self, beta: float) -> "MobiusAutomorphism":
        """The map ``z -> self(exp(i*beta) z)``."""
        e = cmath.exp(1j * beta)
        # e^{it}(e z - a)/(1 - a' e z) = e^{i(t+beta)} (z - a/e)/(1 - conj(a/e) z)
        return MobiusAutomorphism(self.phase + beta, self.a / e)

    def apply_series(self, g: PowerSeries) -> PowerSeries:
        """Series of ``self o g``; ``g`` may have any constant term in the disk."""
        num = g - self.a
        den = 1 - self.a.conjugate() * g
        return series_div(num, den) * cmath.exp(1j * self.phase)

    def is_identity(self) -> bool:
        return self.a == 0 and self.phase == 0.0


def _squash_zero(x: complex) -> complex:
    """Smooth map of the plane onto the closed unit disk: ``x * sin|x| / |x|``."""
    r = abs(x)
    if r <= 1e-8:
        return x * (1.0 - r * r / 6.0)
    # |sin r| can round to just above 1 after the division; clip radially
    return cmath.rect(min(abs(math.sin(r)), 1.0), cmath.phase(x) + (math.pi if math.sin(r) < 0 else 0.0))


@dataclass(frozen=True)
class BlaschkeCover:
    """``fhat(z) = scale * exp(i*rotation) * prod (z - a_j)/(1 - conj(a_j) z)``.

    ``center`` (default 0) post-composes with the shift ``w -> (w + c)/(1 + conj(c) w)``;
    it is used only for searches with a prescribed value ``fhat(0)``.
    """

    zeros: tuple = ()
    rotation: float = 0.0
    scale: float = 1.0
    center: complex = 0j

    def __post_init__(self):
        zs = tuple(complex(a) for a in self.zeros)
        if any(abs(a) > 1 + 1e-12 for a in zs):
            raise ValueError("Blaschke zeros must lie in the disk")
        # round-off from rotations can push a unimodular zero a few ulps out
        zs = tuple(a / abs(a) if abs(a) > 1 else a for a in zs)
        if not 0 < self.scale <= 1:
            raise ValueError(f"scale must be in (0, 1], got {self.scale}")
        if not abs(self.center) < 1:
            raise ValueError("center must lie in the open disk")
        object.__setattr__(self, "zeros", zs)
        object.__setattr__(self, "rotation", float(self.rotation))
        object.__setattr__(self, "center", complex(self.center))

    @property
    def degree(self) -> int:
        return len(self.zeros)

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        w = np.full(z.shape, self.scale * cmath.exp(1j * self.rotation), dtype=complex)
        for a in self.zeros:
            w = w * (z - a) / (1 - a.conjugate() * z)
        if self.center:
            w = (w + self.center) / (1 + self.center.conjugate() * w)
        return w[()] if w.ndim == 0 else w

    def rotated(self, beta: float) -> "BlaschkeCover":
        """The cover ``z -> fhat(exp(i*beta) z)``, again in product form."""
        e = cmath.exp(1j * beta)
        return BlaschkeCover(
            tuple(a / e for a in self.zeros),
            self.rotation + self.degree * beta,
            self.scale,
            self.center,
        )

    def params(self) -> np.ndarray:
        """Real parameter vector ``(Re a_1, Im a_1, ..., rotation, scale)``."""
        out = []
        for a in self.zeros:
            out += [a.real, a.imag]
        return np.array(out + [self.rotation % TWO_PI, self.scale])

    @classmethod
    def monomial(cls, n: int, scale: float = 1.0) -> "BlaschkeCover":
        return cls((0j,) * n, 0.0, scale)

    @classmethod
    def from_unconstrained(cls, x: Sequence[float], degree: int, radius: float = 1.0,
                           center: complex = 0j, fixed_zeros: int = 0) -> "BlaschkeCover":
        """Decode an unconstrained optimizer vector.

        Layout: ``2*degree`` zero coordinates, one rotation angle, one scale
        coordinate ``s`` with ``scale = radius / (1 + s^2)``.  ``fixed_zeros``
        extra zeros are pinned at the origin.
        """
        x = np.asarray(x, dtype=float)
        zeros = tuple(_squash_zero(complex(x[2 * j], x[2 * j + 1])) for j in range(degree))
        zeros = (0j,) * fixed_zeros + zeros
        rot = float(x[2 * degree])
        s = float(x[2 * degree + 1])
        return cls(zeros, rot, radius / (1.0 + s * s), center)


def kappa_coeffs(n: int, N: int) -> PowerSeries:
    """Coefficients of ``kappa(z^n)`` up to ``z^N``.

    Uses ``(k+1) c_{k+1} = (2 - 2k) c_k - (k - 1) c_{k-1}``, which follows from
    ``kappa'(z) (1 + z)^2 = 2 kappa(z)``; linear in ``N``.
    """
    if n < 1 or N < 0:
        raise ValueError("need n >= 1 and N >= 0")
    m = N // n
    c = [0.0] * (m + 1)
    c[0] = math.exp(-1.0)
    prev, cur = 0.0, c[0]
    for k in range(m):
        nxt = ((2 - 2 * k) * cur - (k - 1) * prev) / (k + 1)
        c[k + 1] = nxt
        prev, cur = cur, nxt
    out = np.zeros(N + 1)
    out[::n] = c
    return PowerSeries(out)


def sigma_series(order: int) -> PowerSeries:
    """Series of ``(z - 1)/(z + 1)``, the map of the disk onto the left half-plane."""
    z = PowerSeries.variable(order)
    return series_div(z - 1, z + 1)


def factor_coeffs(a: complex, N: int) -> np.ndarray:
    """Closed-form coefficients of ``(z - a)/(1 - conj(a) z)``."""
    c = np.empty(N + 1, dtype=complex)
    c[0] = -a
    if N:
        ab = complex(a).conjugate()
        c[1:] = (1 - abs(a) ** 2) * ab ** np.arange(N)
    return c


def blaschke_series(cover: BlaschkeCover, N: int) -> PowerSeries:
    """Taylor coefficients of the cover, one series division per factor."""
    z = PowerSeries.variable(N) if N >= 1 else PowerSeries([0.0])
    acc = PowerSeries.constant(cover.scale * cmath.exp(1j * cover.rotation), N)
    for a in cover.zeros:
        acc = series_mul(acc, series_div(z - a, 1 - a.conjugate() * z))
    if cover.center:
        acc = MobiusAutomorphism(0.0, -cover.center).apply_series(acc)
    return acc


def blaschke_coeffs_fast(cover: BlaschkeCover, N: int) -> np.ndarray:
    """Same as :func:`blaschke_series` but with closed-form factors; returns an array."""
    acc = np.zeros(N + 1, dtype=complex)
    acc[0] = cover.scale * cmath.exp(1j * cover.rotation)
    for a in cover.zeros:
        acc = np.convolve(acc, factor_coeffs(a, N))[: N + 1]
    if cover.center:
        acc = MobiusAutomorphism(0.0, -cover.center).apply_series(PowerSeries(acc)).coeffs
    return acc


def kappa_of(fhat: PowerSeries) -> PowerSeries:
    """``kappa o fhat`` computed directly as ``exp((fhat - 1)/(fhat + 1))``."""
    return series_exp(series_div(fhat - 1, fhat + 1))


def omega_decompose(fhat: PowerSeries) -> tuple[MobiusAutomorphism, PowerSeries]:
    """Split ``fhat = omega o ghat`` with ``ghat(0) = 0``.

    ``ghat = (fhat - c0)/(1 - conj(c0) fhat)`` and ``omega(w) = (w + c0)/(1 + conj(c0) w)``.
    """
    c0 = complex(fhat.coeffs[0])
    if abs(c0) >= 1:
        raise ConstantOnBoundary(f"|fhat(0)| = {abs(c0)} is not < 1")
    ghat = MobiusAutomorphism(0.0, c0).apply_series(fhat)
    ghat = PowerSeries(np.concatenate([[0j], ghat.coeffs[1:]]))
    return MobiusAutomorphism(0.0, -c0), ghat


def compose_cover(cover: BlaschkeCover | PowerSeries, N: int) -> PowerSeries:
    """Coefficients of ``kappa o fhat`` to order ``N``.

    When ``fhat(0) != 0`` the constant is shifted out first: the outer series
    ``kappa o omega`` is expanded about the origin and composed with ``ghat``.
    """
    fhat = cover if isinstance(cover, PowerSeries) else blaschke_series(cover, N)
    fhat = fhat.truncate(N)
    if abs(fhat.coeffs[0]) <= current().zero_tol:
        g = PowerSeries(np.concatenate([[0j], fhat.coeffs[1:]]))
        return series_compose(kappa_coeffs(1, N), g)
    omega, ghat = omega_decompose(fhat)
    outer = kappa_of(omega.apply_series(PowerSeries.variable(N)))
    return series_compose(outer, ghat)


def winding_number(values: np.ndarray) -> int:
    """Net number of turns of a closed sampled curve around the origin."""
    v = np.asarray(values, dtype=complex)
    steps = np.angle(np.roll(v, -1) / v)
    return int(round(steps.sum() / TWO_PI))


def lift(f: PowerSeries) -> PowerSeries:
    """``sigma^{-1}(log f) = (1 + log f)/(1 - log f)`` with the fixed log branch; no checks."""
    L = series_log(f)
    return series_div(1 + L, 1 - L)


def _check_circle(f: PowerSeries, samples: int) -> tuple[float, np.ndarray, float]:
    """Pick the outermost circle on which the truncated series is trustworthy.

    Starts at ``r = 1 - 1/N`` and halves the gap to 1 while the size of the
    upper half of the coefficient tail exceeds a tenth of ``min |f|`` there.
    Returns the radius, the samples and the tail estimate.
    """
    N = max(f.order, 1)
    theta = np.linspace(0.0, TWO_PI, samples, endpoint=False)
    absc = np.abs(f.coeffs)
    k = np.arange(N + 1)
    upper = k > N // 2
    gap = 1.0 / N
    while True:
        r = max(1.0 - gap, 0.5)
        vals = series_eval(f, r * np.exp(1j * theta))
        tail = float(np.sum(absc[upper] * r ** k[upper]))
        if np.min(np.abs(vals)) > 10 * tail or r <= 0.5:
            return r, vals, tail
        gap *= 2


def factor(f: PowerSeries, samples: int | None = None) -> PowerSeries:
    """Recover the cover ``fhat`` with ``kappa o fhat = f``.

    The branch ``0 <= arg < 2*pi`` of the logarithm selects one lift among the
    deck translates, so the result is a function of ``f``.  Zeros are detected
    by the winding number of ``f`` on a circle close to the boundary.
    """
    samples = samples or current().boundary_samples
    if abs(f.coeffs[0]) <= current().zero_tol:
        raise VanishingFunction("f(0) = 0")
    r, vals, tail = _check_circle(f, samples)
    if np.max(np.abs(vals)) - tail > 1 + current().norm_slack:
        raise NormExceeded(f"|f| reaches {np.max(np.abs(vals)):.6g} on |z| = {r:.6g}")
    if np.min(np.abs(vals)) <= current().zero_tol or winding_number(vals) != 0:
        raise VanishingFunction(f"f has zeros inside |z| = {r:.6g}")
    return lift(f)


def random_cover(rng: np.random.Generator, degree: int, origin_zeros: int = 0,
                 max_modulus: float = 0.95, scale: float | None = None) -> BlaschkeCover:
    """A cover with ``degree`` zeros uniform on ``|a| <= max_modulus`` plus ``origin_zeros`` zeros at 0."""
    rad = max_modulus * np.sqrt(rng.uniform(size=degree))
    ang = rng.uniform(0, TWO_PI, size=degree)
    zeros = (0j,) * origin_zeros + tuple(complex(z) for z in rad * np.exp(1j * ang))
    rho = float(rng.uniform(0.2, 1.0)) if scale is None else scale
    return BlaschkeCover(zeros, float(rng.uniform(0, TWO_PI)), rho)
