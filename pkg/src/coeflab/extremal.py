"""Coefficient functionals on ``kappa o fhat`` and their maximization over Blaschke covers.

A functional ``J(f) = c_n + F(c_{m_1}, ..., c_{m_s})`` with ``F`` a polynomial
without constant or linear part is evaluated on ``f = kappa o fhat`` where
``fhat`` ranges over scaled finite Blaschke products.  :func:`optimize` runs a
seeded multistart Nelder-Mead search in unconstrained coordinates.
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.optimize import minimize

from .config import current
from .covering import (
    BlaschkeCover,
    blaschke_coeffs_fast,
    compose_cover,
    kappa_coeffs,
    kappa_of,
    lift,
)
from .series import PowerSeries

Monomial = tuple  # ((index, power), ...)


@dataclass(frozen=True)
class FunctionalSpec:
    """``J = c_n + sum_t coef_t * prod_j c_{m_j}^{k_j}``."""

    n: int
    terms: tuple = ()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("target index n must be >= 1")
        norm = []
        for coef, mono in self.terms:
            mono = tuple((int(m), int(k)) for m, k in mono)
            if any(m < 0 or k < 1 for m, k in mono):
                raise ValueError(f"bad monomial {mono}")
            if sum(k for _, k in mono) < 2:
                raise ValueError("every monomial of F needs total degree >= 2")
            norm.append((complex(coef), mono))
        object.__setattr__(self, "terms", tuple(norm))

    @classmethod
    def coefficient(cls, n: int) -> "FunctionalSpec":
        return cls(n)

    @classmethod
    def parse(cls, text: str) -> "FunctionalSpec":
        """Parse e.g. ``"c2 + 1.0*c1^2"`` or ``"c3 - 0.5*c1*c2"``; the first term must be bare ``c_n``."""
        src = text.replace(" ", "").replace("**", "^")
        parts = re.findall(r"[+-]?[^+-]+", src)
        if not parts:
            raise ValueError("empty functional")
        head = re.fullmatch(r"\+?c(\d+)", parts[0])
        if head is None:
            raise ValueError(f"functional must start with c<n>, got {parts[0]!r}")
        terms = []
        for part in parts[1:]:
            sign = -1.0 if part.startswith("-") else 1.0
            coef = sign
            mono: dict[int, int] = {}
            for factor in part.lstrip("+-").split("*"):
                m = re.fullmatch(r"c(\d+)(?:\^(\d+))?", factor)
                if m:
                    idx, pw = int(m.group(1)), int(m.group(2) or 1)
                    mono[idx] = mono.get(idx, 0) + pw
                else:
                    coef *= complex(factor.replace("i", "j")) if "i" in factor else float(factor)
            terms.append((coef, tuple(sorted(mono.items()))))
        return cls(int(head.group(1)), tuple(terms))

    @property
    def max_index(self) -> int:
        idx = [self.n] + [m for _, mono in self.terms for m, _ in mono]
        return max(idx)

    def evaluate(self, c: Sequence[complex]) -> complex:
        val = complex(c[self.n])
        for coef, mono in self.terms:
            p = coef
            for m, k in mono:
                p *= c[m] ** k
            val += p
        return val

    def __str__(self) -> str:
        out = f"c{self.n}"
        for coef, mono in self.terms:
            body = "*".join(f"c{m}" + (f"^{k}" if k > 1 else "") for m, k in mono)
            out += f" + ({coef.real:g}{coef.imag:+g}i)*{body}" if coef.imag else f" + {coef.real:g}*{body}"
        return out


def _kappa_cover_coeffs(cover: BlaschkeCover, N: int) -> np.ndarray:
    return kappa_of(PowerSeries(blaschke_coeffs_fast(cover, N))).coeffs


def objective(spec: FunctionalSpec, cover: BlaschkeCover) -> float:
    """``|J(kappa o fhat)|``."""
    return abs(spec.evaluate(_kappa_cover_coeffs(cover, spec.max_index)))


def objective_reference(spec: FunctionalSpec, cover: BlaschkeCover) -> float:
    """Same value through :func:`compose_cover` (series composition route)."""
    return abs(spec.evaluate(compose_cover(cover, spec.max_index).coeffs))


@dataclass
class SearchResult:
    best: float
    cover: BlaschkeCover
    normalized: BlaschkeCover
    normalized_lift: PowerSeries
    trace: list = field(default_factory=list)
    seed: int = 0
    converged: bool = True
    evaluations: int = 0

    def monomial_distance(self, n: int) -> float:
        """Max coefficient distance between the normalized lift and ``z^n``."""
        target = np.zeros(self.normalized_lift.order + 1, dtype=complex)
        target[n] = 1
        return float(np.max(np.abs(self.normalized_lift.coeffs - target)))


def normalize_phase(cover: BlaschkeCover, n: int) -> BlaschkeCover:
    """Rotate ``z`` so that ``c_n(kappa o fhat)`` is real and non-negative."""
    cn = _kappa_cover_coeffs(cover, n)[n]
    if abs(cn) == 0:
        return cover
    return cover.rotated(-cmath.phase(cn) / n)


def normalized_lift(cover: BlaschkeCover, n: int, order: int | None = None) -> PowerSeries:
    """Canonical cover of ``e1 f(e2 z)`` with ``f = kappa o fhat`` and unimodular ``e1, e2``.

    ``e1`` makes ``f(0)`` positive and ``e2`` makes ``c_n`` non-negative; the
    lift then uses the fixed logarithm branch.  For ``f = kappa(z^n)`` up to the
    rotation symmetries this returns ``z^n``.
    """
    order = order or 2 * n + 4
    c = _kappa_cover_coeffs(cover, order)
    c = c * (abs(c[0]) / c[0])
    c[0] = abs(c[0])  # a stray -0j imaginary part would flip the log branch by 2 pi
    if abs(c[n]) > 0:
        beta = -cmath.phase(c[n]) / n
        c = c * np.exp(1j * beta * np.arange(order + 1))
    return lift(PowerSeries(c))


def _random_start(rng: np.random.Generator, degree: int, rmax: float) -> np.ndarray:
    x = np.empty(2 * degree + 2)
    for j in range(degree):
        rad = rmax * math.sqrt(rng.uniform())
        ang = rng.uniform(0, 2 * math.pi)
        s = math.asin(rad)  # inverse of the squashing map |x| -> sin|x|
        x[2 * j], x[2 * j + 1] = s * math.cos(ang), s * math.sin(ang)
    x[2 * degree] = rng.uniform(0, 2 * math.pi)
    x[2 * degree + 1] = rng.uniform(0, 1)
    return x


def _simplex(x: np.ndarray, step: float) -> np.ndarray:
    pts = [x]
    for i in range(x.size):
        y = x.copy()
        y[i] += step
        pts.append(y)
    return np.array(pts)


def optimize(spec: FunctionalSpec, degree: int | None = None, radius: float = 1.0,
             starts: int = 200, seed: int = 0, center: complex = 0j,
             fixed_zeros: int = 0, max_iter: int | None = None) -> SearchResult:
    """Maximize ``|J(kappa o fhat)|`` over covers ``fhat = rho e^{i theta} prod B_a`` with ``rho <= radius``.

    ``degree`` counts the free zeros (default ``n + 2``).  ``center`` fixes
    ``fhat(0)`` by post-composing a disk automorphism; it is combined with
    ``fixed_zeros`` pinned zeros at the origin (one is needed for the inner
    product to vanish at 0).  Each start runs Nelder-Mead with an iteration cap;
    the best few are then restarted with shrinking simplices.  Deterministic
    given ``seed``.
    """
    s = current()
    degree = spec.n + 2 if degree is None else degree
    max_iter = max_iter or s.max_iter
    if starts < 1:
        raise ValueError("starts must be >= 1")
    if not 0 < radius <= 1:
        raise ValueError("radius must lie in (0, 1]")
    N = spec.max_index
    rng = np.random.default_rng(seed)
    evals = 0

    def decode(x):
        return BlaschkeCover.from_unconstrained(x, degree, radius, center, fixed_zeros)

    def neg(x):
        nonlocal evals
        evals += 1
        return -abs(spec.evaluate(_kappa_cover_coeffs(decode(x), N)))

    dim = 2 * degree + 2
    runs = []
    trace = []
    for k in range(starts):
        x0 = _random_start(rng, degree, s.start_zero_radius)
        res = minimize(neg, x0, method="Nelder-Mead",
                       options={"maxiter": max_iter, "xatol": 1e-10, "fatol": 1e-14,
                                "adaptive": dim > 6, "initial_simplex": _simplex(x0, 0.3)})
        runs.append([float(-res.fun), res.x, bool(res.success)])
        trace.append((k, float(-res.fun)))

    order = sorted(range(starts), key=lambda i: -runs[i][0])
    for i in order[: s.polish_top]:
        val, x, _ = runs[i]
        step = 0.1
        for _ in range(s.polish_rounds):
            res = minimize(neg, x, method="Nelder-Mead",
                           options={"maxiter": 4 * max_iter, "xatol": 1e-8, "fatol": 1e-15,
                                    "adaptive": dim > 6, "initial_simplex": _simplex(x, step)})
            new = float(-res.fun)
            improved = new > val + 1e-15
            if new >= val:
                val, x = new, res.x
            runs[i][2] = runs[i][2] or bool(res.success)
            if not improved:
                break
            step = max(step * 0.5, 1e-4)
        runs[i][0], runs[i][1] = val, x

    best_val = max(r[0] for r in runs)
    tied = [r for r in runs if best_val - r[0] <= 1e-12]
    candidates = []
    for val, x, _ in tied:
        cov = decode(x)
        norm = normalize_phase(cov, spec.n)
        candidates.append((tuple(np.round(norm.params(), 12)), val, cov, norm))
    candidates.sort(key=lambda t: t[0])
    _, _, cover, norm = candidates[0]
    best = objective(spec, cover)
    return SearchResult(
        best=best,
        cover=cover,
        normalized=norm,
        normalized_lift=normalized_lift(cover, spec.n),
        trace=trace,
        seed=seed,
        converged=any(r[2] for r in runs),
        evaluations=evals,
    )


def lemma_interior_bound(a: float) -> float:
    """``(1 - a^2) * 2 e^{(a-1)/(a+1)} / (a+1)^2``: the largest ``|c_1|`` once ``fhat(0) = a``."""
    return (1 - a * a) * 2 * math.exp((a - 1) / (a + 1)) / (a + 1) ** 2


def parseval_partial_sums(n: int, N: int) -> np.ndarray:
    """Cumulative sums ``sum_{k<=K} |c_k(kappa(z^n))|^2`` for ``K = 0..N``."""
    if N > 10**6:
        raise ValueError("N must be <= 10**6")
    c = kappa_coeffs(n, N).coeffs
    return np.cumsum(np.abs(c) ** 2)


def parseval_check(n: int, N: int) -> float:
    return float(parseval_partial_sums(n, N)[-1])


def homogeneity_check(spec: FunctionalSpec, cover: BlaschkeCover, t: complex) -> float:
    """``|c_n(f_t) - t^n c_n(f)|`` where ``f_t`` is rebuilt from the cover ``fhat(t z)``."""
    if spec.terms:
        raise ValueError("homogeneity holds for the bare coefficient functional only")
    if abs(t) >= 1:
        raise ValueError("|t| must be < 1")
    n = spec.n
    fhat = PowerSeries(blaschke_coeffs_fast(cover, n))
    cn = compose_cover(fhat, n).coeffs[n]
    cn_t = compose_cover(fhat.scale_variable(t), n).coeffs[n]
    return abs(cn_t - t**n * cn)
