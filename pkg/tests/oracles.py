"""Independent reference evaluators used only by the tests.

Everything here works symbolically (sympy) or in arbitrary precision
(mpmath) and shares no code with the library's evaluation paths.
"""

from functools import lru_cache

import mpmath
import sympy as sp

X = sp.Symbol("x")
Z = sp.Symbol("z")


@lru_cache(maxsize=None)
def rodrigues_symbolic(l, m):
    """``P_l^{(m)}(x)`` as an exact sympy expression from the Rodrigues formula."""
    a = sp.Integer(-1) ** l * sp.factorial(l + m) / (2 ** l * sp.factorial(l) * sp.factorial(l - m))
    return a * (1 - X ** 2) ** sp.Rational(-m, 2) * sp.diff(sp.expand((1 - X ** 2) ** l), X, l - m)


def rodrigues_exact(l, m, x):
    """Evaluate at a rational ``x`` exactly, then round once to float."""
    return float(sp.N(rodrigues_symbolic(l, m).subs(X, sp.nsimplify(x, rational=True)), 30))


def harmonic_symbolic(l, m, theta, phi):
    pref = sp.sqrt(sp.Rational(2 * l + 1) / (4 * sp.pi) * sp.factorial(l - m) / sp.factorial(l + m))
    p = rodrigues_symbolic(l, m).subs(X, sp.cos(theta))
    return complex(sp.N(pref * sp.exp(sp.I * m * phi) * p, 30))


def genfun_closed_symbolic(k, x, t, odd=False):
    """Closed-form generating function by sympy differentiation of the generator."""
    x = sp.nsimplify(x, rational=True)
    t = sp.nsimplify(t, rational=True)
    s = sp.sqrt(1 - x ** 2)
    power = k + 1 if odd else k
    order = 2 * k + 1 if odd else 2 * k
    gen = (1 - Z ** 2) ** power * sp.exp(t * (1 - Z ** 2) / s)
    return float(sp.N((1 - x ** 2) ** sp.Rational(k, 2) * sp.diff(gen, Z, order).subs(Z, x), 30))


def coherent_norm_squared_mp(k, r, terms=400):
    """``sum_m |unnormalized c_m|^2`` in 50-digit arithmetic."""
    with mpmath.workdps(50):
        r = mpmath.mpf(r)
        total = mpmath.mpf(0)
        for m in range(-k, terms):
            c = (mpmath.factorial(2 * k + m) / mpmath.factorial(k + m)) ** 2 * r ** (2 * m)
            total += c / ((4 * k + 2 * m + 1) * mpmath.factorial(2 * k + 2 * m))
        return total
