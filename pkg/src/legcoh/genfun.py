"""Generating functions for associated Legendre functions.

Three families are provided, each as a truncated series and as a closed form
so the two can be checked against each other.

Even family, fixed ``k >= 0`` (sequence ``l - m = 2k``)::

    G_k^even(x, t) = sum_{m>=-k} t^{k+m}/(k+m)! P_{2k+m}^{(m)}(x) / a_{2k+m}^{(m)}
                   = (1-x^2)^{k/2} [ (d/dz)^{2k} (1-z^2)^k exp(t (1-z^2)/sqrt(1-x^2)) ]_{z=x}

Odd family (``l - m = 2k + 1``)::

    G_k^odd(x, t)  = sum_{m>=-k} t^{k+m}/(k+m)! P_{2k+m+1}^{(m)}(x) / a_{2k+m+1}^{(m)}
                   = (1-x^2)^{k/2} [ (d/dz)^{2k+1} (1-z^2)^{k+1} exp(t (1-z^2)/sqrt(1-x^2)) ]_{z=x}

Both converge for every finite ``t`` (complex ``t`` is accepted).

Fixed-m family, ``m >= 0`` and ``|t| < 1``::

    G_m(x, t) = sum_{l>=m} t^{l-m}/(l-m)! P_l^{(m)}(x) / (2^l a_l^{(m)})
              = ((-1 - x t + S) / (t^2 sqrt(1-x^2)))^m / S,   S = sqrt(t^2 + 2 x t + 1)

For ``m = 0`` this is the classical ``sum_l (-t)^l P_l(x) = 1/S``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .jets import Jet, jet_exp, jet_int_pow, jet_derivative_at_base
from .legendre import EDGE_GUARD, assoc_legendre_scaled, rodrigues_coefficient

__all__ = [
    "GenFunQuery",
    "SeriesResult",
    "genfun_even_series",
    "genfun_even_closed",
    "genfun_odd_series",
    "genfun_odd_closed",
    "genfun_fixed_m_series",
    "genfun_fixed_m_closed",
    "fixed_m_closed_literal",
    "rodrigues_exponential_derivative",
    "DEFAULT_TRUNCATION",
    "DEFAULT_SERIES_TOL",
]

DEFAULT_TRUNCATION = 200
DEFAULT_SERIES_TOL = 1e-16
# consecutive small terms required before a series is declared converged
_QUIET_TERMS = 3


@dataclass(frozen=True)
class GenFunQuery:
    """Evaluation request for one generating function.

    ``index`` is ``k`` for the even/odd families and ``m`` for the fixed-m
    family. ``truncation`` caps the number of series terms and ``tolerance``
    is the relative size below which a term counts as negligible.
    """

    x: float
    t: complex
    index: int
    truncation: int = DEFAULT_TRUNCATION
    tolerance: float = DEFAULT_SERIES_TOL

    def __post_init__(self):
        if not math.isfinite(self.x) or abs(self.x) >= 1.0 - EDGE_GUARD:
            raise DomainError(f"x must lie in (-1, 1), got {self.x!r}")
        if not cmath.isfinite(self.t):
            raise DomainError(f"t must be finite, got {self.t!r}")
        if self.index < 0:
            raise DomainError(f"index must be non-negative, got {self.index}")
        if self.truncation < 1:
            raise DomainError("truncation must be at least 1")
        if not self.tolerance > 0:
            raise DomainError("tolerance must be positive")

    @property
    def w(self) -> float:
        return (1.0 - self.x) * (1.0 + self.x)


@dataclass(frozen=True)
class SeriesResult:
    """Partial sum of a generating series.

    ``tail`` is the largest magnitude among the last few terms, an empirical
    bound on what was dropped. ``converged`` is False when the term cap was
    hit first.
    """

    value: complex
    converged: bool
    terms: int
    tail: float

    def __float__(self):
        return float(np.real(self.value))

    def __complex__(self):
        return complex(self.value)


def _accumulate(terms, q: GenFunQuery) -> SeriesResult:
    total = 0.0
    quiet = 0
    recent = []
    n = 0
    for n, term in enumerate(terms, start=1):
        total = total + term
        recent = (recent + [abs(term)])[-_QUIET_TERMS:]
        if abs(term) <= q.tolerance * abs(total):
            quiet += 1
            if quiet >= _QUIET_TERMS:
                return SeriesResult(total, True, n, max(recent))
        else:
            quiet = 0
        if n >= q.truncation:
            break
    return SeriesResult(total, False, n, max(recent) if recent else 0.0)


def _real_if_real(t, value):
    if isinstance(t, complex) or np.iscomplexobj(t):
        return complex(value)
    return float(np.real(value))


def _power_over_factorial(t, n):
    # t^n / n! without overflow for large |t| or n
    if n == 0:
        return 1.0
    if t == 0:
        return 0.0
    r = abs(t)
    mag = math.exp(n * math.log(r) - math.lgamma(n + 1))
    return mag * (t / r) ** n


def _exponential_series_terms(q: GenFunQuery, shift: int):
    k = q.index
    n = 0
    while True:
        m = n - k
        l = 2 * k + m + shift
        p = assoc_legendre_scaled((l, m), q.x)
        ratio = p / rodrigues_coefficient((l, m)) if p.sign else p
        yield _power_over_factorial(q.t, n) * ratio.value
        n += 1


def genfun_even_series(q: GenFunQuery) -> SeriesResult:
    """Partial sum of the even-family series, ``P_{2k+m}^{(m)}`` terms."""
    res = _accumulate(_exponential_series_terms(q, 0), q)
    return SeriesResult(_real_if_real(q.t, res.value), res.converged, res.terms, res.tail)


def genfun_odd_series(q: GenFunQuery) -> SeriesResult:
    """Partial sum of the odd-family series, ``P_{2k+m+1}^{(m)}`` terms."""
    res = _accumulate(_exponential_series_terms(q, 1), q)
    return SeriesResult(_real_if_real(q.t, res.value), res.converged, res.terms, res.tail)


def rodrigues_exponential_derivative(x: float, w: float, power: int, order: int, c):
    """``(d/dz)^order [ (1-z^2)^power exp(c (1-z^2)) ]`` at ``z = x``.

    ``w`` is ``1 - x^2`` as computed by the caller; ``c`` may be complex.
    """
    coeffs = np.zeros(order + 1, dtype=complex if isinstance(c, complex) else float)
    coeffs[0] = w
    if order >= 1:
        coeffs[1] = -2.0 * x
    if order >= 2:
        coeffs[2] = -1.0
    g = Jet(x, coeffs)
    f = jet_int_pow(g, power) * jet_exp(g * c)
    return jet_derivative_at_base(f, order)


def _closed(q: GenFunQuery, shift: int):
    k = q.index
    w = q.w
    s = math.sqrt(w)
    t = q.t
    c = complex(t) / s if isinstance(t, complex) else t / s
    d = rodrigues_exponential_derivative(q.x, w, k + shift, 2 * k + shift, c)
    return _real_if_real(t, w ** (k / 2) * d)


def genfun_even_closed(q: GenFunQuery):
    """Closed form of the even family via a jet of order ``2k``."""
    return _closed(q, 0)


def genfun_odd_closed(q: GenFunQuery):
    """Closed form of the odd family via a jet of order ``2k + 1``."""
    return _closed(q, 1)


def _check_fixed_m(q: GenFunQuery):
    if not abs(q.t) < 1:
        raise DomainError(f"the fixed-m series needs |t| < 1, got {q.t!r}")


def _fixed_m_coefficients(x: float, m: int, count: int):
    """``c_n[(1-z^2)^{m+n}] (1-x^2)^{-m/2} / 2^{m+n}`` for ``n < count``.

    Returned as ``(signs, logs)``. This is ``P_l^{(m)}/(2^l a_l^{(m)} (l-m)!)``
    with ``l = m + n``: the coefficient ``a`` and the factorial cancel
    analytically against the Rodrigues derivative ``(l-m)! c_{l-m}``.
    """
    w = (1.0 - x) * (1.0 + x)
    h = math.sqrt(w)
    s = w + 2.0 * abs(x) * h + w
    b0, b1, b2 = w / s, -2.0 * x * h / s, -w / s
    r = np.zeros(count)
    r[0] = 1.0
    log_scale = 0.0
    signs = np.zeros(count, dtype=int)
    logs = np.full(count, -math.inf)
    log2 = math.log(2.0)
    log_s, log_h, log_w = math.log(s), math.log(h), math.log(w)

    def step(r):
        out = b0 * r
        out[1:] += b1 * r[:-1]
        out[2:] += b2 * r[:-2]
        return out

    for _ in range(m):
        r = step(r)
    for n in range(count):
        l = m + n
        if n > 0:
            r = step(r)
        peak = np.max(np.abs(r))
        if 0 < peak < 1e-200:
            r = r / peak
            log_scale += math.log(peak)
        c = r[n]
        if c != 0:
            signs[n] = 1 if c > 0 else -1
            logs[n] = (math.log(abs(c)) + log_scale + l * log_s - n * log_h
                       - 0.5 * m * log_w - l * log2)
    return signs, logs


def genfun_fixed_m_series(q: GenFunQuery) -> SeriesResult:
    """Partial sum of the fixed-m series over ``l = m, m+1, ...``."""
    _check_fixed_m(q)
    m = q.index
    signs, logs = _fixed_m_coefficients(q.x, m, q.truncation)

    def terms():
        for n in range(q.truncation):
            yield signs[n] * math.exp(logs[n]) * q.t ** n if signs[n] else 0.0 * q.t

    res = _accumulate(terms(), q)
    return SeriesResult(_real_if_real(q.t, res.value), res.converged, res.terms, res.tail)


def genfun_fixed_m_closed(q: GenFunQuery):
    """Closed form of the fixed-m family.

    The numerator is rationalized,
    ``-1 - x t + S = t^2 (1 - x^2) / (S + 1 + x t)``, which removes the 0/0
    at ``t = 0`` and the cancellation near it. ``S`` is the positive root;
    ``S^2 = (t + x)^2 + 1 - x^2 > 0`` for ``|x| < 1``, and ``S + 1 + x t > 0``
    for ``|t| < 1``.
    """
    _check_fixed_m(q)
    x, t, m = q.x, q.t, q.index
    sq = cmath.sqrt if isinstance(t, complex) else math.sqrt
    S = sq(t * t + 2 * x * t + 1)
    if m == 0:
        return 1.0 / S
    return (math.sqrt(q.w) / (S + 1 + x * t)) ** m / S


def fixed_m_closed_literal(x: float, t: float, m: int) -> float:
    """Fixed-m closed form evaluated exactly as written; loses digits as t -> 0."""
    S = math.sqrt(t * t + 2 * x * t + 1)
    return ((-1 - x * t + S) / (t * t * math.sqrt(1 - x * x))) ** m / S
