"""Polynomials in the binomial-free Bernstein form sum_k g_k x^k (1-x)^(m-k).

Two arithmetic backends share one code path: ordinary floats (log-space
evaluation of the basis terms, so large degrees stay usable) and exact
rationals via fractions.Fraction (the drift-free oracle backend).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError

__all__ = [
    "ScaledBernsteinPoly",
    "basis_terms",
    "degree_raise",
    "eval_scaled",
    "power_to_scaled",
    "scaled_to_power",
]


def is_exact(value) -> bool:
    """True when ``value`` belongs to the exact-rational backend."""
    return isinstance(value, (Fraction, int))


def _check_unit_interval(x) -> None:
    if x < 0 or x > 1:
        raise DomainError(f"x={x!r} outside [0, 1]")


@dataclass(frozen=True)
class ScaledBernsteinPoly:
    """Coefficients g_k of sum_{k=0}^{m} g_k x^k (1-x)^(m-k).

    ``coeffs`` has exactly ``degree + 1`` entries.  Entries are floats or
    Fractions; the two are not mixed within one polynomial.
    """

    degree: int
    coeffs: tuple

    def __post_init__(self):
        if self.degree < 0:
            raise DomainError("degree must be nonnegative")
        if len(self.coeffs) != self.degree + 1:
            raise DomainError(
                f"expected {self.degree + 1} coefficients, got {len(self.coeffs)}"
            )
        for c in self.coeffs:
            if not is_exact(c) and not math.isfinite(c):
                raise DomainError("coefficients must be finite")
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    @property
    def exact(self) -> bool:
        return all(is_exact(c) for c in self.coeffs)

    def __call__(self, x):
        return eval_scaled(self, x)


def basis_terms(m: int, x):
    """The terms t_k = x^k (1-x)^(m-k) for k = 0..m.

    Float path works in log space so the dominant term never underflows to
    zero; subdominant terms may flush to 0 for large m, which is harmless in
    the ratio computations this feeds.  Endpoints are special-cased to exact
    unit vectors.
    """
    _check_unit_interval(x)
    if x == 0:
        one, zero = (Fraction(1), Fraction(0)) if is_exact(x) else (1.0, 0.0)
        return (one,) + (zero,) * m
    if x == 1:
        one, zero = (Fraction(1), Fraction(0)) if is_exact(x) else (1.0, 0.0)
        return (zero,) * m + (one,)
    if is_exact(x):
        x = Fraction(x)
        y = 1 - x
        return tuple(x**k * y ** (m - k) for k in range(m + 1))
    lx = math.log(x)
    l1x = math.log1p(-x)
    return tuple(math.exp(k * lx + (m - k) * l1x) for k in range(m + 1))


def eval_scaled(poly: ScaledBernsteinPoly, x):
    """Evaluate the scaled-form polynomial at x in [0, 1]."""
    _check_unit_interval(x)
    if x == 0:
        return poly.coeffs[0]
    if x == 1:
        return poly.coeffs[-1]
    terms = basis_terms(poly.degree, x)
    return sum(c * t for c, t in zip(poly.coeffs, terms))


def power_to_scaled(power_coeffs, target_degree: int) -> ScaledBernsteinPoly:
    """Convert a power-basis polynomial sum_j a_j x^j to scaled form of degree m.

    Uses x^j = sum_i C(m-j, i) x^(j+i) (1-x)^(m-j-i), so
    g_k = sum_{j<=k} a_j C(m-j, k-j).  Exact when the input is exact.
    """
    m = target_degree
    a = list(power_coeffs)
    if len(a) > m + 1:
        raise DomainError(
            f"power polynomial of degree {len(a) - 1} does not fit degree {m}"
        )
    exact = all(is_exact(c) for c in a)
    zero = Fraction(0) if exact else 0.0
    gamma = []
    for k in range(m + 1):
        g = zero
        for j in range(min(k, len(a) - 1) + 1):
            g += a[j] * math.comb(m - j, k - j)
        gamma.append(g)
    return ScaledBernsteinPoly(m, tuple(gamma))


def scaled_to_power(poly: ScaledBernsteinPoly) -> list:
    """Power-basis coefficients of the scaled-form polynomial.

    Expands (1-x)^(m-k) binomially; intended for the exact backend (the
    alternating signs make this ill-conditioned in floats at high degree).
    """
    m = poly.degree
    exact = poly.exact
    zero = Fraction(0) if exact else 0.0
    out = [zero] * (m + 1)
    for k, g in enumerate(poly.coeffs):
        for i in range(m - k + 1):
            sign = -1 if i % 2 else 1
            out[k + i] += g * (sign * math.comb(m - k, i))
    return out


def degree_raise(poly: ScaledBernsteinPoly) -> ScaledBernsteinPoly:
    """Rewrite at degree m+1 without changing values: g'_k = g_k + g_(k-1)."""
    g = poly.coeffs
    raised = []
    for k in range(poly.degree + 2):
        left = g[k - 1] if k - 1 >= 0 else 0
        right = g[k] if k <= poly.degree else 0
        raised.append(left + right)
    return ScaledBernsteinPoly(poly.degree + 1, tuple(raised))
