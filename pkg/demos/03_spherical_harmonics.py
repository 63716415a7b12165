"""
Spherical harmonics and exact quadrature on the sphere
======================================================

Y_l^m(theta, phi) is built from P_l^(m)(cos theta). Products of harmonics
are polynomials in cos(theta) times Fourier modes in phi, so a
Gauss-Legendre x uniform rule integrates them exactly.
"""

import math

import numpy as np

from legcoh import AngularGrid, gram_matrix, spherical_harmonic
from legcoh.quadrature import gauss_legendre

# Gauss-Legendre nodes come from Newton iteration on P_n.
x, w = gauss_legendre(5)
print("5-point nodes:", x)
print("integral of x^8:", np.dot(w, x ** 8), " exact:", 2 / 9)

print("\nY_0^0 =", spherical_harmonic((0, 0), 1.0, 2.0), " 1/sqrt(4 pi) =", 1 / math.sqrt(4 * math.pi))
print("Y_2^1(pi/3, pi/4) =", spherical_harmonic((2, 1), math.pi / 3, math.pi / 4))

# The Gram matrix over all l <= 12 on the default 32 x 64 grid.
grid = AngularGrid()
indices, gram = gram_matrix(12, grid)
print(f"\n{len(indices)} harmonics on {grid.describe()}: max |G - I| = {np.max(np.abs(gram - np.eye(len(indices)))):.2e}")

# A grid that is too coarse in theta breaks orthogonality of high degrees.
_, coarse = gram_matrix(12, AngularGrid(8, 32))
print(f"same on GL8xU32: max |G - I| = {np.max(np.abs(coarse - np.eye(len(indices)))):.2e}")
