"""Spherical harmonics and the inner product on the unit sphere.

    Y_l^m(theta, phi) = sqrt((2l+1)/(4pi) (l-m)!/(l+m)!) e^{i m phi} P_l^{(m)}(cos theta)

built on :mod:`legcoh.legendre`, so the Condon-Shortley phase is included.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .errors import DomainError
from .legendre import LegendreIndex, ScaledFloat, assoc_legendre_scaled
from .quadrature import AngularGrid

__all__ = [
    "spherical_harmonic",
    "harmonic_theta_part",
    "harmonic_on_grid",
    "sphere_inner_product",
    "harmonic_indices",
    "gram_matrix",
]


def _as_index(idx):
    return idx if isinstance(idx, LegendreIndex) else LegendreIndex(*map(int, idx))


def _check_angles(theta, phi):
    if not (0.0 <= theta <= math.pi):
        raise DomainError(f"theta must lie in [0, pi], got {theta!r}")
    if not (0.0 <= phi < 2.0 * math.pi):
        raise DomainError(f"phi must lie in [0, 2pi), got {phi!r}")


def _prefactor(l, m) -> ScaledFloat:
    # sqrt((2l+1)/(4pi) (l-m)!/(l+m)!)
    ratio = ScaledFloat.ratio((2 * l + 1) * math.factorial(l - m), math.factorial(l + m))
    return (ratio * ScaledFloat.of(1.0 / (4.0 * math.pi))).sqrt()


def harmonic_theta_part(idx, x: float, w: float) -> float:
    """Real factor ``Y_l^m / e^{i m phi}`` at ``cos(theta) = x``, ``sin^2(theta) = w``."""
    l, m = _as_index(idx)
    if w <= 0.0:
        if m != 0:
            return 0.0
        x = 1.0 if x > 0 else -1.0
        w = 0.0
    p = assoc_legendre_scaled((l, m), x, w)
    return (_prefactor(l, m) * p).value if p.sign else 0.0


def spherical_harmonic(idx, theta: float, phi: float) -> complex:
    """``Y_l^m(theta, phi)`` for ``0 <= theta <= pi``, ``0 <= phi < 2pi``.

    At the poles the value is 0 for ``m != 0``.
    """
    idx = _as_index(idx)
    _check_angles(theta, phi)
    if theta == 0.0 or theta == math.pi:
        x, w = (1.0 if theta == 0.0 else -1.0), 0.0
    else:
        x, w = math.cos(theta), math.sin(theta) ** 2
    return harmonic_theta_part(idx, x, w) * cmath.exp(1j * idx.m * phi)


def harmonic_on_grid(idx, grid: AngularGrid) -> np.ndarray:
    """``Y_l^m`` on every node of ``grid``, shape ``(n_theta, n_phi)``."""
    idx = _as_index(idx)
    w = (1.0 - grid.u) * (1.0 + grid.u)
    theta_part = np.array([harmonic_theta_part(idx, float(x), float(wi))
                           for x, wi in zip(grid.u, w)])
    return theta_part[:, None] * np.exp(1j * idx.m * grid.phi)[None, :]


def _on_grid(f, grid):
    if callable(f):
        theta = grid.theta
        return np.array([[f(float(t), float(p)) for p in grid.phi] for t in theta],
                        dtype=complex)
    return np.asarray(f)


def sphere_inner_product(f, g, grid: AngularGrid | None = None) -> complex:
    """``<f|g> = int conj(f) g dOmega`` by the product rule of ``grid``.

    ``f`` and ``g`` are callables ``(theta, phi) -> complex`` or arrays
    already sampled on the grid nodes.
    """
    grid = grid or AngularGrid()
    F = _on_grid(f, grid)
    G = _on_grid(g, grid)
    return complex(grid.integrate(np.conj(F) * G))


def harmonic_indices(l_max: int):
    return [LegendreIndex(l, m) for l in range(l_max + 1) for m in range(-l, l + 1)]


def gram_matrix(l_max: int, grid: AngularGrid | None = None):
    """Matrix of ``<l,m|l',m'>`` for all ``l, l' <= l_max``.

    Returns the index list and the complex matrix; each entry is an
    independent pairwise-reduced sum.
    """
    grid = grid or AngularGrid()
    indices = harmonic_indices(l_max)
    values = [harmonic_on_grid(i, grid) for i in indices]
    n = len(indices)
    gram = np.empty((n, n), dtype=complex)
    for a in range(n):
        fa = np.conj(values[a])
        for b in range(n):
            gram[a, b] = grid.integrate(fa * values[b])
    return indices, gram
