"""Truncated Taylor series ("jets") about a fixed base point.

A jet of order ``N`` about ``x0`` stores the coefficients ``c_0..c_N`` of

    f(z) = sum_j c_j (z - x0)**j + O((z - x0)**(N+1))

Arithmetic on jets is exact up to the truncation order, so the n-th
derivative of a composite expression at ``x0`` is simply ``n! * c_n``. This
avoids both symbolic algebra and finite differences, which lose all accuracy
for derivative orders of 10 or more.

Coefficients may be real or complex.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from numbers import Number

import numpy as np

__all__ = [
    "Jet",
    "JetMismatchError",
    "jet_constant",
    "jet_variable",
    "jet_one",
    "jet_zero",
    "jet_add",
    "jet_mul",
    "jet_exp",
    "jet_int_pow",
    "jet_derivative_at_base",
    "jet_log_derivative_at_base",
]


class JetMismatchError(ValueError):
    """Raised when two jets with different base points or orders are combined."""


@dataclass(frozen=True, eq=False)
class Jet:
    """Truncated Taylor expansion about ``base_point``.

    Parameters
    ----------
    base_point : float
        Expansion point ``x0``.
    coeffs : ndarray
        Taylor coefficients ``c_0..c_N``; the order is ``len(coeffs) - 1``.
    """

    base_point: float
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs)
        if c.ndim != 1 or c.size == 0:
            raise ValueError("jet coefficients must be a non-empty 1-d array")
        if not np.iscomplexobj(c):
            c = c.astype(float)
        c = c.copy()
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    def __repr__(self):
        return f"Jet(base_point={self.base_point!r}, coeffs={self.coeffs.tolist()!r})"

    def _coerce(self, other):
        if isinstance(other, Jet):
            _check_compatible(self, other)
            return other
        if isinstance(other, Number):
            return jet_constant(self.base_point, self.order, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return jet_add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return Jet(self.base_point, -self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return jet_add(self, -other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return jet_add(other, -self)

    def __mul__(self, other):
        if isinstance(other, Number):
            return Jet(self.base_point, self.coeffs * other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return jet_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Number):
            return Jet(self.base_point, self.coeffs / other)
        return NotImplemented

    def __pow__(self, p):
        if isinstance(p, (int, np.integer)) and p >= 0:
            return jet_int_pow(self, int(p))
        return NotImplemented

    def truncate(self, order: int) -> "Jet":
        """Drop all coefficients above ``order``."""
        if not 0 <= order <= self.order:
            raise ValueError(f"cannot truncate order-{self.order} jet to order {order}")
        return Jet(self.base_point, self.coeffs[: order + 1])

    def exp(self) -> "Jet":
        return jet_exp(self)

    def derivative(self, n: int):
        return jet_derivative_at_base(self, n)


def _check_compatible(a: Jet, b: Jet):
    if a.base_point != b.base_point:
        raise JetMismatchError(
            f"base points differ: {a.base_point!r} vs {b.base_point!r}")
    if a.order != b.order:
        raise JetMismatchError(f"orders differ: {a.order} vs {b.order}")


def _check_order(order):
    if order < 0:
        raise ValueError(f"jet order must be non-negative, got {order}")


def jet_constant(base_point: float, order: int, value) -> Jet:
    _check_order(order)
    dtype = complex if isinstance(value, complex) else float
    c = np.zeros(order + 1, dtype=dtype)
    c[0] = value
    return Jet(base_point, c)


def jet_variable(base_point: float, order: int) -> Jet:
    """Jet of the identity map ``f(z) = z`` about ``base_point``."""
    _check_order(order)
    c = np.zeros(order + 1)
    c[0] = base_point
    if order >= 1:
        c[1] = 1.0
    return Jet(base_point, c)


def jet_one(base_point: float, order: int) -> Jet:
    return jet_constant(base_point, order, 1.0)


def jet_zero(base_point: float, order: int) -> Jet:
    return jet_constant(base_point, order, 0.0)


def jet_add(a: Jet, b: Jet) -> Jet:
    _check_compatible(a, b)
    return Jet(a.base_point, a.coeffs + b.coeffs)


def jet_mul(a: Jet, b: Jet) -> Jet:
    """Cauchy product truncated at the common order."""
    _check_compatible(a, b)
    n = a.order + 1
    return Jet(a.base_point, np.convolve(a.coeffs, b.coeffs)[:n])


def jet_exp(a: Jet) -> Jet:
    """Exponential of a jet.

    Uses ``e_0 = exp(c_0)`` and ``e_n = (1/n) sum_{j=1..n} j c_j e_{n-j}``,
    which follows from ``e' = c' e``.
    """
    c = a.coeffs
    n = c.size
    dtype = complex if np.iscomplexobj(c) else float
    e = np.zeros(n, dtype=dtype)
    e[0] = cmath.exp(c[0]) if dtype is complex else math.exp(c[0])
    jc = np.arange(n) * c
    for k in range(1, n):
        # jc[1..k] against e[k-1..0]
        e[k] = np.dot(jc[1:k + 1], e[k - 1::-1]) / k
    return Jet(a.base_point, e)


def jet_int_pow(a: Jet, p: int) -> Jet:
    """``a**p`` for a non-negative integer ``p`` by repeated squaring."""
    if p < 0:
        raise ValueError("jet_int_pow needs a non-negative exponent")
    dtype = complex if np.iscomplexobj(a.coeffs) else float
    result = jet_constant(a.base_point, a.order, dtype(1))
    base = a
    while p:
        if p & 1:
            result = jet_mul(result, base)
        p >>= 1
        if p:
            base = jet_mul(base, base)
    return result


def _check_derivative_order(a: Jet, n: int):
    if n < 0:
        raise ValueError("derivative order must be non-negative")
    if n > a.order:
        raise ValueError(f"derivative order {n} exceeds jet order {a.order}")


def jet_log_derivative_at_base(a: Jet, n: int):
    """n-th derivative at the base point as ``(phase, log|value|)``.

    ``phase`` is ``+-1`` for real jets and a unit complex number otherwise;
    ``log|value|`` is ``-inf`` when the coefficient vanishes. The ``n!``
    factor never leaves the log domain, so this stays finite for any ``n``.
    """
    _check_derivative_order(a, n)
    c = a.coeffs[n]
    mag = abs(c)
    if mag == 0:
        return (1.0 if not np.iscomplexobj(a.coeffs) else 1 + 0j), -math.inf
    phase = c / mag
    if not np.iscomplexobj(a.coeffs):
        phase = float(np.sign(c))
    return phase, math.log(mag) + math.lgamma(n + 1)


def jet_derivative_at_base(a: Jet, n: int):
    """Return ``n! * c_n``, the n-th derivative at ``base_point``.

    For ``n <= 170`` the product is formed directly (bit-exact for integer
    coefficients); otherwise, or on overflow, it is recombined from logs.
    """
    _check_derivative_order(a, n)
    if n <= 170:
        with np.errstate(over="ignore"):
            value = a.coeffs[n] * float(math.factorial(n))
        if np.isfinite(value):
            return value
    phase, logmag = jet_log_derivative_at_base(a, n)
    if logmag == -math.inf:
        return a.coeffs.dtype.type(0)
    if logmag > 709.0:
        return phase * math.inf
    return phase * math.exp(logmag)
