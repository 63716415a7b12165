"""Associated Legendre functions from the Rodrigues formula.

    P_l^{(m)}(x) = a_l^{(m)} (1 - x^2)^{-m/2} (d/dx)^{l-m} (1 - x^2)^l

with ``a_l^{(m)} = (-1)^l (l+m)! / (2^l l! (l-m)!)`` for every ``-l <= m <= l``.
With this coefficient the functions carry the Condon-Shortley phase, e.g.
``P_1^{(1)}(x) = -sqrt(1 - x^2)``, and obey

    P_l^{(-m)}(x) = (-1)^m (l-m)!/(l+m)! P_l^{(m)}(x).

The derivative is taken exactly with jets. Factorials are exact integers and
every product is carried as a mantissa with a separate binary exponent
(:class:`ScaledFloat`), so ``l`` in the hundreds neither overflows nor
underflows and small cases stay exact (``P_1^{(1)}(0) == -1.0``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError
from .jets import Jet, jet_int_pow

__all__ = [
    "LegendreIndex",
    "ScaledFloat",
    "rodrigues_coefficient",
    "rodrigues_coefficient_literal",
    "rodrigues_derivative_scaled",
    "assoc_legendre_scaled",
    "assoc_legendre",
    "negate_m",
    "EDGE_GUARD",
]

# |x| >= 1 - EDGE_GUARD is rejected by the public evaluators.
EDGE_GUARD = 1e-12


class ScaledFloat(NamedTuple):
    """A real number stored as ``mantissa * 2**exponent``.

    Products and quotients only touch the mantissa once and add exponents, so
    factorial ratios far outside the double range keep full precision.
    ``sign`` and ``log`` give the sign / natural-log-magnitude view.
    """

    mantissa: float
    exponent: int

    @classmethod
    def of(cls, v) -> "ScaledFloat":
        """Exact for floats; correctly rounded for (big) Python ints."""
        if isinstance(v, int) and not isinstance(v, bool) and abs(v) > 2 ** 1000:
            shift = abs(v).bit_length() - 60
            return cls.of(float(v >> shift) if v > 0 else -float((-v) >> shift)) * cls(1.0, shift)
        m, e = math.frexp(float(v))
        return cls(m, e)

    @classmethod
    def ratio(cls, num: int, den: int) -> "ScaledFloat":
        """``num / den`` for integers, correctly rounded."""
        shift = den.bit_length() - num.bit_length() + 60
        q = (num << shift) // den if shift >= 0 else num // (den << -shift)
        return cls.of(q) * cls(1.0, -shift)

    @property
    def sign(self) -> int:
        return (self.mantissa > 0) - (self.mantissa < 0)

    @property
    def log(self) -> float:
        if self.mantissa == 0:
            return -math.inf
        return math.log(abs(self.mantissa)) + self.exponent * math.log(2.0)

    @property
    def value(self) -> float:
        try:
            return math.ldexp(self.mantissa, self.exponent)
        except OverflowError:
            return math.copysign(math.inf, self.mantissa)

    def _norm(self, m, e):
        if m == 0:
            return _ZERO
        mm, ee = math.frexp(m)
        return ScaledFloat(mm, e + ee)

    def __mul__(self, other):
        if isinstance(other, ScaledFloat):
            return self._norm(self.mantissa * other.mantissa, self.exponent + other.exponent)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, ScaledFloat):
            if other.mantissa == 0:
                raise ZeroDivisionError("division by zero")
            return self._norm(self.mantissa / other.mantissa, self.exponent - other.exponent)
        return NotImplemented

    def __pow__(self, p: int):
        # repeated squaring with renormalization at each step
        result, base, p_abs = ScaledFloat(0.5, 1), self, abs(p)
        while p_abs:
            if p_abs & 1:
                result = result * base
            p_abs >>= 1
            if p_abs:
                base = base * base
        return ScaledFloat(0.5, 1) / result if p < 0 else result

    def sqrt(self) -> "ScaledFloat":
        if self.mantissa < 0:
            raise ValueError("square root of a negative number")
        m, e = self.mantissa, self.exponent
        if e % 2:
            m, e = 2.0 * m, e - 1
        return self._norm(math.sqrt(m), e // 2)


_ZERO = ScaledFloat(0.0, 0)


@dataclass(frozen=True)
class LegendreIndex:
    """Degree ``l >= 0`` and order ``m`` with ``-l <= m <= l``."""

    l: int
    m: int

    def __post_init__(self):
        if not isinstance(self.l, (int, np.integer)) or not isinstance(self.m, (int, np.integer)):
            raise DomainError(f"indices must be integers, got l={self.l!r}, m={self.m!r}")
        if self.l < 0:
            raise DomainError(f"degree l must be non-negative, got {self.l}")
        if abs(self.m) > self.l:
            raise DomainError(f"order m={self.m} out of range for l={self.l}")

    @property
    def parity(self) -> str:
        return "even" if (self.l - self.m) % 2 == 0 else "odd"

    @property
    def k(self) -> int:
        return (self.l - self.m) // 2

    def __iter__(self):
        yield self.l
        yield self.m


def _as_index(idx) -> LegendreIndex:
    if isinstance(idx, LegendreIndex):
        return idx
    l, m = idx
    return LegendreIndex(int(l), int(m))


def rodrigues_coefficient(idx) -> ScaledFloat:
    """Normalization coefficient ``a_l^{(m)}``, correctly rounded."""
    l, m = _as_index(idx)
    a = ScaledFloat.ratio(math.factorial(l + m), math.factorial(l - m) * math.factorial(l))
    return a * ScaledFloat(-0.5 if l % 2 else 0.5, 1 - l)


def rodrigues_coefficient_literal(idx) -> ScaledFloat:
    """Two-branch coefficient with ``(-1)^{l-m} / (2^l l!)`` for ``m <= 0``.

    Kept for comparison only. For ``m < 0`` it differs from
    :func:`rodrigues_coefficient` by ``(-1)^m (l+m)!/(l-m)!`` and therefore
    breaks the +-m relation; the library never uses it.
    """
    l, m = _as_index(idx)
    if m >= 0:
        return rodrigues_coefficient((l, m))
    sign = -1.0 if (l - m) % 2 else 1.0
    return ScaledFloat.ratio(1, math.factorial(l)) * ScaledFloat(sign * 0.5, 1 - l)


def _scale_for(n, l, ax, w):
    # Rescale z - x = h v so the (n)-th coefficient of the normalized trinomial
    # power sits near the bulk of its coefficient mass (no under/overflow).
    if n == 0 or l == 0:
        return 1.0
    rho = min(max(n / l, 0.01), 1.99)
    a = 2.0 - rho
    b = 2.0 * ax * (1.0 - rho)
    c = rho * w
    h = (-b + math.sqrt(b * b + 4.0 * a * c)) / (2.0 * a)
    return h if h > 0 else 1.0


def rodrigues_derivative_scaled(l: int, n: int, x: float, w: float | None = None) -> ScaledFloat:
    """``(d/dx)^n (1 - x^2)^l`` at ``x`` as a :class:`ScaledFloat`.

    ``w`` may supply ``1 - x^2`` computed more accurately by the caller
    (``sin(theta)**2`` near the poles, for instance).
    """
    if l < 0 or n < 0:
        raise DomainError("l and n must be non-negative")
    if n > 2 * l:
        return _ZERO
    if w is None:
        w = (1.0 - x) * (1.0 + x)
    if n == 0:
        if w <= 0:
            return _ZERO if l > 0 else ScaledFloat.of(1.0)
        return ScaledFloat.of(w) ** l
    h = _scale_for(n, l, abs(x), w)
    base = np.zeros(n + 1)
    base[0] = w
    if n >= 1:
        base[1] = -2.0 * x * h
    if n >= 2:
        base[2] = -h * h
    s = w + 2.0 * abs(x) * h + h * h
    # coefficients are in the scaled variable v = (z - x)/h, divided by s
    jet = jet_int_pow(Jet(x, base / s), l)
    c = float(jet.coeffs[n])
    if c == 0:
        return _ZERO
    out = ScaledFloat.of(c) * ScaledFloat.of(math.factorial(n))
    if s != 1.0:
        out = out * ScaledFloat.of(s) ** l
    if h != 1.0:
        out = out / ScaledFloat.of(h) ** n
    return out


def assoc_legendre_scaled(idx, x: float, w: float | None = None) -> ScaledFloat:
    """``P_l^{(m)}(x)`` as a :class:`ScaledFloat`, without the edge guard.

    Endpoints ``x = +-1`` are allowed: there the function is 0 for ``m != 0``
    and ``(+-1)^l`` for ``m = 0``. Pass ``w = 1 - x^2`` explicitly for best
    accuracy near them.
    """
    l, m = _as_index(idx)
    if w is None:
        w = (1.0 - x) * (1.0 + x)
    d = rodrigues_derivative_scaled(l, l - m, x, w)
    if d.sign == 0:
        return _ZERO
    if m != 0:
        if w <= 0:
            if m > 0:
                raise DomainError(f"P_{l}^({m}) is singular at x={x}")
            return _ZERO
        d = d / ScaledFloat.of(math.sqrt(w)) ** m if m % 2 else d / ScaledFloat.of(w) ** (m // 2)
    return rodrigues_coefficient((l, m)) * d


def _check_x(x):
    if not math.isfinite(x) or abs(x) >= 1.0 - EDGE_GUARD:
        raise DomainError(f"x must lie in the open interval (-1, 1), got {x!r}")


def assoc_legendre(idx, x: float) -> float:
    """Associated Legendre function ``P_l^{(m)}(x)`` for ``-1 < x < 1``.

    Parameters
    ----------
    idx : LegendreIndex or (l, m)
    x : float
        Argument; ``|x| >= 1 - 1e-12`` raises :class:`DomainError`.

    Examples
    --------
    >>> assoc_legendre((1, 1), 0.0)
    -1.0
    """
    idx = _as_index(idx)
    _check_x(x)
    return assoc_legendre_scaled(idx, x).value


def negate_m(idx, x: float) -> float:
    """``P_l^{(-m)}(x)`` obtained from ``P_l^{(m)}(x)`` by the +-m relation."""
    l, m = _as_index(idx)
    if m < 0:
        raise DomainError(f"negate_m expects m >= 0, got {m}")
    _check_x(x)
    p = assoc_legendre_scaled((l, m), x)
    if p.sign == 0:
        return 0.0
    ratio = ScaledFloat.ratio(math.factorial(l - m), math.factorial(l + m))
    if m % 2:
        ratio = ScaledFloat(-ratio.mantissa, ratio.exponent)
    return (ratio * p).value
