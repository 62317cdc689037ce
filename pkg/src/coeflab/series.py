"""Truncated complex power series on the unit disk.

A :class:`PowerSeries` holds the Taylor coefficients ``c_0 .. c_N`` of a
function holomorphic near the origin.  Coefficients beyond ``N`` are unknown
rather than zero, so every binary operation returns a series truncated at the
smaller of the two orders.

All algebra is schoolbook (direct convolution); the orders used here never
call for transform-based products.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Union

import numpy as np

from .config import current
from .errors import NonzeroInnerConstant, ZeroConstantTerm

Number = Union[int, float, complex]


@dataclass(frozen=True, eq=False)
class PowerSeries:
    """Coefficients ``c_0 .. c_N`` of a truncated Taylor expansion."""

    coeffs: np.ndarray
    __array_ufunc__ = None  # keep numpy scalars from broadcasting over the series

    def __init__(self, coeffs: Iterable[Number] | np.ndarray, order: int | None = None):
        c = np.array(coeffs, dtype=complex).ravel()
        if order is not None:
            if order < 0:
                raise ValueError("order must be >= 0")
            if c.size <= order:
                c = np.concatenate([c, np.zeros(order + 1 - c.size, dtype=complex)])
            else:
                c = c[: order + 1].copy()
        if c.size == 0:
            raise ValueError("a power series needs at least one coefficient")
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    @classmethod
    def constant(cls, value: Number, order: int) -> "PowerSeries":
        return cls([value], order=order)

    @classmethod
    def variable(cls, order: int) -> "PowerSeries":
        """The identity map ``z``."""
        return cls([0.0, 1.0], order=order)

    @classmethod
    def monomial(cls, power: int, order: int, scale: Number = 1.0) -> "PowerSeries":
        c = np.zeros(order + 1, dtype=complex)
        if power <= order:
            c[power] = scale
        return cls(c)

    def __getitem__(self, k):
        return self.coeffs[k]

    def __len__(self) -> int:
        return self.coeffs.size

    def __repr__(self) -> str:
        return f"PowerSeries(order={self.order}, coeffs={np.array2string(self.coeffs[:8], precision=6)}{'...' if self.order > 7 else ''})"

    def truncate(self, order: int) -> "PowerSeries":
        return PowerSeries(self.coeffs, order=order)

    def scale_variable(self, t: Number) -> "PowerSeries":
        """Coefficients of ``z -> f(t z)``."""
        return PowerSeries(self.coeffs * np.asarray(t, dtype=complex) ** np.arange(self.coeffs.size))

    def __call__(self, z):
        return series_eval(self, z)

    def __add__(self, other):
        if isinstance(other, PowerSeries):
            n = min(self.order, other.order)
            return PowerSeries(self.coeffs[: n + 1] + other.coeffs[: n + 1])
        c = self.coeffs.copy()
        c[0] += other
        return PowerSeries(c)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries(-self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, PowerSeries):
            return series_mul(self, other)
        return PowerSeries(self.coeffs * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, PowerSeries):
            return series_div(self, other)
        return PowerSeries(self.coeffs / other)

    def __rtruediv__(self, other):
        return series_div(PowerSeries.constant(other, self.order), self)


def _as_series(a) -> PowerSeries:
    return a if isinstance(a, PowerSeries) else PowerSeries(a)


def series_mul(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    """Truncated Cauchy product."""
    n = min(a.order, b.order)
    if n > current().max_schoolbook_order:
        raise ValueError(f"order {n} exceeds the schoolbook limit")
    return PowerSeries(np.convolve(a.coeffs[: n + 1], b.coeffs[: n + 1])[: n + 1])


def series_div(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    """Quotient ``a / b``; requires ``b_0 != 0``."""
    n = min(a.order, b.order)
    bc = b.coeffs
    if abs(bc[0]) <= current().zero_tol:
        raise ZeroConstantTerm("divisor has zero constant term")
    q = np.zeros(n + 1, dtype=complex)
    ac = a.coeffs
    inv = 1.0 / bc[0]
    for k in range(n + 1):
        # q_k = (a_k - sum_{j=1..k} b_j q_{k-j}) / b_0
        s = ac[k]
        if k:
            s -= np.dot(bc[1 : k + 1], q[k - 1 :: -1][:k])
        q[k] = s * inv
    return PowerSeries(q)


def series_compose(outer: PowerSeries, inner: PowerSeries) -> PowerSeries:
    """Taylor coefficients of ``outer(inner(z))`` by Horner's scheme."""
    if abs(inner.coeffs[0]) > current().zero_tol:
        raise NonzeroInnerConstant(f"inner constant term {inner.coeffs[0]!r} is not zero")
    n = min(outer.order, inner.order)
    g = inner.truncate(n)
    # inner has no constant term, so outer coefficients above n never reach order n
    acc = PowerSeries.constant(outer.coeffs[min(n, outer.order)], n)
    for k in range(min(n, outer.order) - 1, -1, -1):
        acc = series_mul(acc, g) + outer.coeffs[k]
    return acc


def series_exp(a: PowerSeries) -> PowerSeries:
    """``exp`` of a series, via ``k b_k = sum_j j a_j b_{k-j}``."""
    n = a.order
    ac = a.coeffs
    b = np.zeros(n + 1, dtype=complex)
    b[0] = cmath.exp(ac[0])
    ja = np.arange(n + 1) * ac
    for k in range(1, n + 1):
        b[k] = np.dot(ja[1 : k + 1], b[k - 1 :: -1][:k]) / k
    return PowerSeries(b)


def branch_log(w: complex) -> complex:
    """Logarithm with ``arg w`` in ``[0, 2*pi)`` (so ``log(-1) = i*pi``)."""
    arg = math.atan2(w.imag, w.real)
    if arg < 0:
        arg += 2 * math.pi
        if arg >= 2 * math.pi:  # below the positive axis by less than an ulp
            arg = 0.0
    return complex(math.log(abs(w)), arg)


def series_log(a: PowerSeries) -> PowerSeries:
    """Logarithm of a series with the fixed branch ``0 <= arg < 2*pi``."""
    ac = a.coeffs
    if abs(ac[0]) <= current().zero_tol:
        raise ZeroConstantTerm("log of a series with zero constant term")
    n = a.order
    u = ac / ac[0]
    # log(u) for u_0 = 1:  k b_k = k u_k - sum_{j=1}^{k-1} j b_j u_{k-j}
    b = np.zeros(n + 1, dtype=complex)
    jb = np.zeros(n + 1, dtype=complex)
    for k in range(1, n + 1):
        s = k * u[k]
        if k > 1:
            s -= np.dot(jb[1:k], u[k - 1 : 0 : -1])
        b[k] = s / k
        jb[k] = k * b[k]
    b[0] = branch_log(complex(ac[0]))
    return PowerSeries(b)


def series_derivative(a: PowerSeries) -> PowerSeries:
    if a.order == 0:
        return PowerSeries([0.0])
    k = np.arange(1, a.order + 1)
    return PowerSeries(k * a.coeffs[1:])


def series_eval(a: PowerSeries, z):
    """Horner evaluation; ``z`` may be a scalar or an array."""
    z = np.asarray(z, dtype=complex)
    acc = np.full(z.shape, a.coeffs[-1], dtype=complex)
    for c in a.coeffs[-2::-1]:
        acc = acc * z + c
    return acc[()] if acc.ndim == 0 else acc
