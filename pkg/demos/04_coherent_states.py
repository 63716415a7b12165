"""
Coherent states of the harmonics Y_{2k+m}^m
===========================================

|z>_k superposes Y_{2k+m}^m with weights (2k+m)!/(k+m)! z^m / sqrt((4k+2m+1)(2k+2m)!).
For k = 0 it sums to sqrt(r / (4 pi sinh r)) exp(-(z/2) e^{i phi} sin theta),
and the measure K(r) = sinh(r) e^{-r} / (2 pi r) resolves the identity.
"""

import cmath
import math

import numpy as np

from legcoh import coherent
from legcoh.coherent import CoherentParams
from legcoh.quadrature import AngularGrid

p = CoherentParams(k=0, z=2 * cmath.exp(1j * math.pi / 3))
seq = coherent.coherent_coefficients(p)
print(f"k=0, |z|=2: {seq.m_values.size} amplitudes, sum |c|^2 = {seq.norm_squared():.16f}")
print("N(2) =", seq.normalization, " sqrt(2/sinh 2) =", math.sqrt(2 / math.sinh(2)))

# Series over harmonics versus the compact expression
theta, phi = math.pi / 4, 1.0
for k in (0, 1, 2):
    p = CoherentParams(k, 1.5 + 0.5j)
    s = coherent.coherent_eval_series(p, theta, phi)
    c = coherent.coherent_eval_compact(p, theta, phi)
    print(f"k={k}: series {s:.12f}  compact {c:.12f}")

# <z|z> by quadrature; larger |z| concentrates the state, so refine the grid.
for r in (1.0, 4.0, 8.0):
    n = max(32, math.ceil(1.4 * r + 30))
    norm = coherent.coherent_norm_check(CoherentParams(0, r), AngularGrid(n, 2 * n))
    print(f"r={r}: <z|z> - 1 = {norm - 1:.2e} on GL{n}xU{2 * n}")

# Resolution of identity: each diagonal moment should be 1.
print("\nmoments:", np.array([coherent.identity_moment_check(m) for m in range(11)]) - 1)
