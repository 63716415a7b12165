"""Generalized coherent states built from the spherical harmonics ``Y_{2k+m}^m``.

For ``k >= 0`` and complex ``z`` (nonzero when ``k > 0``)::

    |z>_k = N_k(|z|) sum_{m>=-k} (2k+m)!/(k+m)! z^m / sqrt((4k+2m+1)(2k+2m)!) |2k+m, m>

which sums to the compact expression

    N_k (-sin(theta) / (2 e^{i phi} z))^k / sqrt(4pi (2k)!)
        [ d^{2k}/du^{2k} (1-u^2)^k exp(-z (1-u^2) e^{i phi} / (2 sin(theta))) ]_{u = cos(theta)}

At ``k = 0`` the state is ``sqrt(r / (4pi sinh r)) exp(-(z/2) e^{i phi} sin(theta))``
with ``r = |z|``, and the measure ``K(r) = sinh(r) e^{-r} / (2 pi r)`` resolves
the identity on ``span{|m, m>}``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .errors import DomainError, NonConvergenceError
from .genfun import rodrigues_exponential_derivative
from .harmonics import harmonic_on_grid, spherical_harmonic
from .quadrature import AngularGrid, uniform_phi_rule

__all__ = [
    "CoherentParams",
    "CoefficientSequence",
    "normalization_k0",
    "measure_density",
    "coherent_coefficients",
    "coherent_eval_series",
    "coherent_eval_compact",
    "coherent_state_on_grid",
    "coherent_norm_check",
    "identity_moment_check",
    "phase_overlap",
    "POLE_THRESHOLD",
    "M_MAX_CAP",
]

POLE_THRESHOLD = 1e-8
M_MAX_CAP = 300
_TAIL_RATIO = 1e-16
_QUIET_TERMS = 3


@dataclass(frozen=True)
class CoherentParams:
    """Family index ``k >= 0`` and label ``z = r e^{i phi_z}``."""

    k: int
    z: complex

    def __post_init__(self):
        if self.k < 0:
            raise DomainError(f"k must be non-negative, got {self.k}")
        z = complex(self.z)
        if not cmath.isfinite(z):
            raise DomainError(f"z must be finite, got {self.z!r}")
        if self.k > 0 and z == 0:
            raise DomainError("z = 0 is only allowed for k = 0")
        object.__setattr__(self, "z", z)

    @property
    def r(self) -> float:
        return abs(self.z)

    @property
    def phase(self) -> float:
        return cmath.phase(self.z) % (2 * math.pi)


@dataclass(frozen=True)
class CoefficientSequence:
    """Amplitudes ``c_m`` on ``|2k+m, m>`` for ``m = -k .. m_max``."""

    k: int
    m_values: np.ndarray
    values: np.ndarray
    normalization: float
    normalized: bool
    converged: bool

    @property
    def m_max(self) -> int:
        return int(self.m_values[-1])

    def norm_squared(self) -> float:
        return float(np.sum(np.abs(self.values) ** 2))


def normalization_k0(r: float) -> float:
    """``N(r) = sqrt(r / sinh r)``, continued to ``N(0) = 1``."""
    r = abs(r)
    if r < 1e-6:
        return math.sqrt(1.0 - r * r / 6.0)
    # r/sinh r = 2 r e^{-r} / (1 - e^{-2r}), finite for any r
    return math.sqrt(2.0 * r * math.exp(-r) / -math.expm1(-2.0 * r))


def measure_density(r: float) -> float:
    """``K(r) = sinh(r) e^{-r} / (2 pi r)``, with ``K(0) = 1/(2 pi)``."""
    if r < 0:
        raise DomainError("r must be non-negative")
    if r == 0:
        return 1.0 / (2.0 * math.pi)
    return -math.expm1(-2.0 * r) / (4.0 * math.pi * r)


def _log_amplitude(k, m, r):
    # log |(2k+m)!/(k+m)! r^m / sqrt((4k+2m+1)(2k+2m)!)|
    if m == 0:
        rpow = 0.0
    elif r == 0:
        return -math.inf
    else:
        rpow = m * math.log(r)
    return (math.lgamma(2 * k + m + 1) - math.lgamma(k + m + 1) + rpow
            - 0.5 * (math.log(4 * k + 2 * m + 1) + math.lgamma(2 * k + 2 * m + 1)))


def coherent_coefficients(p: CoherentParams, m_max: int | None = None,
                          normalize: bool = True) -> CoefficientSequence:
    """Expansion amplitudes of ``|z>_k``.

    With ``m_max=None`` terms are added until ``|c_m|^2 / sum < 1e-16`` for
    three consecutive ``m`` (at most ``M_MAX_CAP`` terms). ``N_k`` is
    ``1/sqrt(sum |c_m|^2)`` of the unnormalized amplitudes.
    """
    k, r = p.k, p.r
    logs = []
    converged = True
    if m_max is not None:
        if m_max < -k:
            raise DomainError(f"m_max must be at least -k = {-k}")
        logs = [_log_amplitude(k, m, r) for m in range(-k, m_max + 1)]
    else:
        quiet = 0
        peak = -math.inf
        acc = 0.0  # sum of exp(2 (log - peak))
        m = -k
        while True:
            lg = _log_amplitude(k, m, r)
            logs.append(lg)
            if lg > peak:
                acc = acc * math.exp(2 * (peak - lg)) + 1.0 if peak > -math.inf else 1.0
                peak = lg
                quiet = 0
            else:
                ratio = math.exp(2 * (lg - peak))
                acc += ratio
                quiet = quiet + 1 if ratio / acc < _TAIL_RATIO else 0
            if quiet >= _QUIET_TERMS:
                break
            if len(logs) >= M_MAX_CAP:
                converged = False
                break
            m += 1
    logs = np.array(logs)
    m_values = np.arange(-k, -k + logs.size)
    peak = np.max(logs)
    log_norm_sq = 2 * peak + math.log(np.sum(np.exp(2 * (logs - peak))))
    log_n = -0.5 * log_norm_sq if normalize else 0.0
    phase = np.exp(1j * m_values * p.phase)
    values = np.exp(logs + log_n) * phase
    return CoefficientSequence(k, m_values, values, math.exp(-0.5 * log_norm_sq),
                               normalize, converged)


def coherent_eval_series(p: CoherentParams, theta: float, phi: float,
                         m_max: int | None = None) -> complex:
    """``sum_m c_m Y_{2k+m}^m(theta, phi)``."""
    seq = coherent_coefficients(p, m_max)
    total = 0j
    for m, c in zip(seq.m_values, seq.values):
        if c != 0:
            total += c * spherical_harmonic((2 * p.k + int(m), int(m)), theta, phi)
    return total


def _normalization(p: CoherentParams) -> float:
    if p.k == 0:
        return normalization_k0(p.r)
    return coherent_coefficients(p).normalization


def _compact(p: CoherentParams, x, sin_t, phi, norm):
    k, z = p.k, p.z
    e = cmath.exp(1j * phi)
    if k == 0:
        return norm / math.sqrt(4 * math.pi) * cmath.exp(-0.5 * z * e * sin_t)
    c = -z * e / (2.0 * sin_t)
    d = rodrigues_exponential_derivative(x, sin_t * sin_t, k, 2 * k, complex(c))
    pref = (-sin_t / (2.0 * e * z)) ** k / math.sqrt(4 * math.pi * math.factorial(2 * k))
    return norm * pref * d


def coherent_eval_compact(p: CoherentParams, theta: float, phi: float) -> complex:
    """Compact form of ``|z>_k`` at ``(theta, phi)``.

    For ``k > 0`` and ``sin(theta) < 1e-8`` the compact expression is 0/0-like
    and the series is used instead.
    """
    if not (0.0 <= theta <= math.pi) or not (0.0 <= phi < 2 * math.pi):
        raise DomainError(f"angles out of range: theta={theta!r}, phi={phi!r}")
    sin_t = math.sin(theta)
    if p.k > 0 and sin_t < POLE_THRESHOLD:
        return coherent_eval_series(p, theta, phi)
    return _compact(p, math.cos(theta), sin_t, phi, _normalization(p))


def coherent_state_on_grid(p: CoherentParams, grid: AngularGrid, form: str = "compact"):
    """State values on the nodes of ``grid``, shape ``(n_theta, n_phi)``."""
    if form == "series":
        seq = coherent_coefficients(p)
        out = np.zeros((grid.n_theta, grid.n_phi), dtype=complex)
        for m, c in zip(seq.m_values, seq.values):
            if c != 0:
                out += c * harmonic_on_grid((2 * p.k + int(m), int(m)), grid)
        return out
    if form != "compact":
        raise ValueError(f"unknown form {form!r}")
    norm = _normalization(p)
    sin_t = grid.sin_theta
    return np.array([[_compact(p, float(x), float(s), float(ph), norm) for ph in grid.phi]
                     for x, s in zip(grid.u, sin_t)])


def coherent_norm_check(p: CoherentParams, grid: AngularGrid | None = None) -> float:
    """``<z|z>`` of the compact state by quadrature over the sphere."""
    grid = grid or AngularGrid()
    values = coherent_state_on_grid(p, grid)
    return float(np.real(grid.integrate(np.abs(values) ** 2)))


def identity_moment_check(m: int, epsrel: float = 1e-13) -> float:
    """``2pi/(2m+1)! * int_0^inf r^{2m+1} N(r)^2 K(r) dr``; equals 1 when the
    measure resolves the identity.

    ``N(r)^2`` and ``K(r)`` are evaluated separately and multiplied inside
    the integrand.
    """
    if m < 0:
        raise DomainError("m must be non-negative")

    def integrand(r):
        return r ** (2 * m + 1) * normalization_k0(r) ** 2 * measure_density(r)

    # the integrand peaks at r = 2m + 1; split there and at a far cutoff
    peak = 2.0 * m + 1.0
    edges = [0.0, peak, peak + 40.0 + 10.0 * math.sqrt(peak), math.inf]
    total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        val, err, info = integrate.quad(integrand, a, b, epsabs=0.0, epsrel=epsrel,
                                        limit=200, full_output=1)[:3]
        if err > 1e-10 * max(abs(val), 1e-300) and abs(val) > 0:
            raise NonConvergenceError(
                f"moment m={m}: quad error estimate {err:.3g} on [{a}, {b}]")
        total += val
    return math.exp(math.log(total) + math.log(2 * math.pi) - math.lgamma(2 * m + 2))


def phase_overlap(m: int, mp: int, n_phi: int = 64) -> complex:
    """``int_0^{2pi} e^{i (m - m') phi} dphi`` by the uniform rule; 0 for
    ``0 < |m - m'| < n_phi`` and ``2pi`` on the diagonal."""
    phi, w = uniform_phi_rule(n_phi)
    return complex(np.sum(np.exp(1j * (m - mp) * phi)) * w)
