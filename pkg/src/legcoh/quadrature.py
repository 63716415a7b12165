"""Gauss-Legendre nodes and the product rule over the sphere."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

__all__ = ["gauss_legendre", "AngularGrid", "uniform_phi_rule"]


@lru_cache(maxsize=64)
def _gauss_legendre(n: int, tol: float):
    i = np.arange(1, n + 1)
    x = np.cos(np.pi * (i - 0.25) / (n + 0.5))
    for _ in range(100):
        p0 = np.ones_like(x)
        p1 = x.copy()
        for j in range(2, n + 1):
            p0, p1 = p1, ((2 * j - 1) * x * p1 - (j - 1) * p0) / j
        # p1 = P_n(x), p0 = P_{n-1}(x)
        dp = n * (x * p1 - p0) / (x * x - 1)
        dx = p1 / dp
        x = x - dx
        if np.max(np.abs(dx)) < tol:
            break
    else:
        raise RuntimeError(f"Gauss-Legendre Newton iteration stalled for n={n}")
    p0 = np.ones_like(x)
    p1 = x.copy()
    for j in range(2, n + 1):
        p0, p1 = p1, ((2 * j - 1) * x * p1 - (j - 1) * p0) / j
    dp = n * (x * p1 - p0) / (x * x - 1)
    w = 2.0 / ((1 - x * x) * dp * dp)
    order = np.argsort(x)
    x, w = x[order], w[order]
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def gauss_legendre(n: int, tol: float = 1e-15):
    """Nodes and weights of the ``n``-point Gauss-Legendre rule on [-1, 1].

    Nodes are the roots of ``P_n`` found by Newton iteration from the
    Chebyshev-like initial guess; weights are ``2 / ((1 - x^2) P_n'(x)^2)``.
    The rule integrates polynomials of degree ``2n - 1`` exactly.

    Returns
    -------
    x, w : ndarray
        Ascending nodes and their weights (read-only, cached).
    """
    if n < 1:
        raise ValueError("need at least one node")
    if n == 1:
        return np.array([0.0]), np.array([2.0])
    return _gauss_legendre(int(n), tol)


def uniform_phi_rule(n_phi: int):
    """Equispaced nodes on [0, 2pi) with equal weights ``2pi / n_phi``.

    Exact for ``exp(i q phi)`` whenever ``|q| < n_phi``.
    """
    phi = 2.0 * math.pi * np.arange(n_phi) / n_phi
    return phi, 2.0 * math.pi / n_phi


@dataclass(frozen=True)
class AngularGrid:
    """Gauss-Legendre in ``cos(theta)`` times a uniform rule in ``phi``."""

    n_theta: int = 32
    n_phi: int = 64
    u: np.ndarray = field(init=False, repr=False, compare=False)
    weights: np.ndarray = field(init=False, repr=False, compare=False)
    phi: np.ndarray = field(init=False, repr=False, compare=False)
    phi_weight: float = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n_theta < 1 or self.n_phi < 1:
            raise ValueError("grid sizes must be positive")
        u, w = gauss_legendre(self.n_theta)
        phi, pw = uniform_phi_rule(self.n_phi)
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "phi_weight", pw)

    @property
    def theta(self) -> np.ndarray:
        return np.arccos(self.u)

    @property
    def sin_theta(self) -> np.ndarray:
        return np.sqrt((1.0 - self.u) * (1.0 + self.u))

    def describe(self) -> str:
        return f"GL{self.n_theta}xU{self.n_phi}"

    def integrate(self, values) -> complex:
        """Sum ``values[i, j] * w_i * 2pi/n_phi`` with numpy's pairwise reduction.

        ``values`` has shape ``(n_theta, n_phi)``. Summation order depends
        only on the shape, so results are reproducible.
        """
        values = np.asarray(values)
        if values.shape != (self.n_theta, self.n_phi):
            raise ValueError(f"expected shape {(self.n_theta, self.n_phi)}, got {values.shape}")
        weighted = values * self.weights[:, None] * self.phi_weight
        return np.sum(np.ascontiguousarray(weighted).ravel())
