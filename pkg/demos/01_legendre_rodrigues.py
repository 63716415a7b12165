"""
Associated Legendre functions from the Rodrigues formula
=========================================================

P_l^(m)(x) = a_l^(m) (1-x^2)^(-m/2) (d/dx)^(l-m) (1-x^2)^l

The derivative is taken exactly with truncated Taylor series (jets), so the
formula can be used directly even for derivative orders of 100 or more,
where finite differences would return noise.
"""

import numpy as np
from scipy.special import lpmv

from legcoh import LegendreIndex, assoc_legendre, negate_m
from legcoh.jets import Jet, jet_int_pow

# A jet about x0 is the list of Taylor coefficients of f(x0 + u).
# (1 - z^2) about z = 0.3 is 0.91 - 0.6 u - u^2:
g = Jet(0.3, [0.91, -0.6, -1.0, 0.0, 0.0])
print("(1-z^2)^2 about 0.3:", jet_int_pow(g, 2).coeffs)
print("second derivative of (1-z^2)^2 at 0.3:", jet_int_pow(g, 2).derivative(2), "(12 x^2 - 4 =", 12 * 0.09 - 4, ")")

# The sign convention reproduces Condon-Shortley values, e.g. P_1^1 = -sqrt(1-x^2).
print("\nP_1^1(0) =", assoc_legendre((1, 1), 0.0))

# Compare with scipy over a few degrees.
x = 0.42
print("\n  l   m        Rodrigues                scipy")
for l, m in [(2, 1), (5, 3), (10, 0), (20, 7), (40, 40)]:
    print(f"{l:3d} {m:3d} {assoc_legendre((l, m), x):24.16e} {lpmv(m, l, x):24.16e}")

# Negative orders: direct evaluation versus the +-m relation.
idx = LegendreIndex(6, 4)
print(f"\nP_6^(-4)({x}) direct      = {assoc_legendre((6, -4), x):.16e}")
print(f"P_6^(-4)({x}) via P_6^4   = {negate_m(idx, x):.16e}")

# High degree: factorials far beyond double range are carried exactly.
print("\nP_150^150(0.99) =", assoc_legendre((150, 150), 0.99))

# Parity P_l^m(-x) = (-1)^(l-m) P_l^m(x) over a grid
xs = np.linspace(-0.9, 0.9, 7)
err = max(abs(assoc_legendre((9, 2), -v) + assoc_legendre((9, 2), v)) for v in xs)
print("parity defect for l=9, m=2:", err)
