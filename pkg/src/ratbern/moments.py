"""Closed-form moments of rational Bernstein operators and related bounds.

The production path is the closed form

    R(e_s)(x) - x^s
      = x(1-x)/Q(x) * sum_{l=0}^{s-2} x^l
                      sum_{k=0}^{n-1} g_k (x_(k+1)^(s-1-l) - x_k^(s-1-l))
                                      x^k (1-x)^(n-1-k),

whose summands are all nonnegative.  Direct summation of the operator stays
available as the independent oracle.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .basis import ScaledBernsteinPoly, basis_terms, is_exact, scaled_to_power
from .errors import DomainError
from .operator import RationalBernsteinOperator, apply_operator, delta_n

__all__ = [
    "MomentValue",
    "central_moment",
    "fourth_moment_bound",
    "monomial_moment",
    "monomial_moment_direct",
    "monomial_moment_grid",
    "second_moment_remainder",
    "shifted_sum_pair",
    "third_moment_sandwich",
]


@dataclass(frozen=True)
class MomentValue:
    """One computed moment together with the route that produced it."""

    order: int
    x: object
    value: object
    method: str  # "closed_form" | "direct_sum"


def _power_diff(a, b, p):
    """b^p - a^p via (b-a) * sum b^i a^(p-1-i); avoids cancellation for b ~ a."""
    return (b - a) * sum(b**i * a ** (p - 1 - i) for i in range(p))


def _check_point(x):
    if x < 0 or x > 1:
        raise DomainError(f"x={x!r} outside [0, 1]")


def monomial_moment(op: RationalBernsteinOperator, s: int, x):
    """R(e_s)(x) - x^s by the closed form; zero for s=1 and at the endpoints."""
    if s < 1:
        raise DomainError("monomial order must be >= 1")
    _check_point(x)
    if s == 1 or x == 0 or x == 1:
        return Fraction(0) if op.exact and is_exact(x) else 0.0
    if op.exact and is_exact(x):
        return _monomial_moment_exact(op, s, Fraction(x))
    return float(monomial_moment_grid(op, s, np.asarray([float(x)]))[0])


def _monomial_moment_exact(op, s, x):
    n = op.n
    terms = basis_terms(n - 1, x)
    q = sum(g * t for g, t in zip(op.gamma, terms))
    total = Fraction(0)
    for l in range(s - 1):
        p = s - 1 - l
        inner = sum(
            g * _power_diff(op.nodes[k], op.nodes[k + 1], p) * terms[k]
            for k, g in enumerate(op.gamma)
        )
        total += x**l * inner
    return x * (1 - x) * total / q


def monomial_moment_grid(op: RationalBernsteinOperator, s: int, xs) -> np.ndarray:
    """Vectorized float closed form of R(e_s) - e_s over a grid."""
    if s < 1:
        raise DomainError("monomial order must be >= 1")
    xs = np.asarray(xs, dtype=float)
    if np.any(xs < 0) or np.any(xs > 1):
        raise DomainError("grid points must lie in [0, 1]")
    out = np.zeros(xs.shape, dtype=float)
    if s == 1:
        return out
    interior = (xs > 0) & (xs < 1)
    xi = xs[interior]
    if not xi.size:
        return out
    n = op.n
    nodes = op._nodes_f
    gaps = np.diff(nodes)
    kd = np.arange(n)[:, None]
    log_den = op._log_gamma[:, None] + kd * np.log(xi) + (n - 1 - kd) * np.log1p(-xi)
    shift = log_den.max(axis=0)
    u = np.exp(log_den - shift)  # gamma folded in, jointly rescaled
    q = u.sum(axis=0)
    acc = np.zeros(xi.shape, dtype=float)
    xpow = np.ones(xi.shape, dtype=float)
    for l in range(s - 1):
        p = s - 1 - l
        # b^p - a^p factored through the gap to dodge cancellation
        sum_pow = sum(nodes[1:] ** i * nodes[:-1] ** (p - 1 - i) for i in range(p))
        acc += xpow * ((gaps * sum_pow)[:, None] * u).sum(axis=0)
        xpow = xpow * xi
    out[interior] = xi * (1 - xi) * acc / q
    return out


def monomial_moment_direct(op: RationalBernsteinOperator, s: int, x):
    """Oracle route: apply the operator to e_s by direct summation."""
    if s < 1:
        raise DomainError("monomial order must be >= 1")
    _check_point(x)
    value = apply_operator(op, lambda t: t**s, x)
    return value - x**s


def central_moment(op: RationalBernsteinOperator, r: int, x):
    """R[(e_1 - x)^r](x), expanded over closed-form monomial moments."""
    if r < 0:
        raise DomainError("central-moment order must be >= 0")
    _check_point(x)
    exact = op.exact and is_exact(x)
    if r == 0:
        return Fraction(1) if exact else 1.0
    if r == 1 or x == 0 or x == 1:
        return Fraction(0) if exact else 0.0
    total = Fraction(0) if exact else 0.0
    for s in range(2, r + 1):
        total += math.comb(r, s) * (-x) ** (r - s) * monomial_moment(op, s, x)
    return total


def fourth_moment_bound(op: RationalBernsteinOperator, x):
    """Certified cap on the fourth moment: D*M2*(6x^2 - 15x + 12 + D)."""
    _check_point(x)
    d = delta_n(op)
    m2 = central_moment(op, 2, x)
    return d * m2 * (6 * x**2 - 15 * x + 12 + d)


def third_moment_sandwich(op: RationalBernsteinOperator, x):
    """(0, R(e_3)(x) - x^3, 3*(R(e_2)(x) - x^2)); the middle sits between."""
    _check_point(x)
    value = monomial_moment(op, 3, x)
    high = 3 * monomial_moment(op, 2, x)
    return (0, value, high)


def shifted_sum_pair(op: RationalBernsteinOperator, r: int, x):
    """The two routes to the shifted node sum.

    A sums (x - x_(k+1))^r directly against the weight terms; B expands it
    over monomial moments.  A == B for r >= 1; for r = 0 the expansion drops
    the constant and A - B == x (verified against the exact oracle).
    """
    if r < 0:
        raise DomainError("order must be >= 0")
    _check_point(x)
    exact = op.exact and is_exact(x)
    if exact:
        x = Fraction(x)
    if x == 0:
        a = Fraction(0) if exact else 0.0
    elif x == 1:
        a = (1 - op.nodes[-1]) ** r  # zero for r >= 1, one for r = 0
        if not exact:
            a = float(a)
    else:
        terms = basis_terms(op.n - 1, x)
        q = sum(g * t for g, t in zip(op.gamma, terms))
        a = (
            x
            * sum(
                (x - op.nodes[k + 1]) ** r * g * t
                for k, (g, t) in enumerate(zip(op.gamma, terms))
            )
            / q
        )
    b = Fraction(0) if exact else 0.0
    for l in range(r + 1):
        b += (
            math.comb(r, l)
            * x ** (r - l)
            * (-1) ** l
            * monomial_moment(op, l + 1, x)
        )
    return (a, b)


def _poly_divmod(num, den):
    """Quotient and remainder of exact power-basis polynomials."""
    num = [Fraction(c) for c in num]
    den = [Fraction(c) for c in den]
    while den and den[-1] == 0:
        den.pop()
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [Fraction(0)] * max(len(num) - len(den) + 1, 1)
    rem = list(num)
    for i in range(len(num) - len(den), -1, -1):
        if len(rem) < len(den) + i:
            continue
        c = rem[len(den) + i - 1] / den[-1]
        quot[i] = c
        for j, d in enumerate(den):
            rem[i + j] -= c * d
    while rem and rem[-1] == 0:
        rem.pop()
    return quot, rem


def second_moment_remainder(op: RationalBernsteinOperator):
    """Remainder of dividing x(1-x) * sum g_k (x_(k+1)-x_k) t_k by Q, exactly.

    Nonzero remainder certifies that R(e_2) - e_2 is not a polynomial; the
    classical operator (constant Bernstein coefficients) gives remainder zero.
    Requires the exact backend.
    """
    if not op.exact:
        raise DomainError("exact backend required for polynomial division")
    n = op.n
    gaps = [op.nodes[k + 1] - op.nodes[k] for k in range(n)]
    weighted = ScaledBernsteinPoly(
        n - 1, tuple(Fraction(g) * Fraction(d) for g, d in zip(op.gamma, gaps))
    )
    p = scaled_to_power(weighted)
    # multiply by x(1-x) = x - x^2
    num = [Fraction(0)] * (len(p) + 2)
    for j, c in enumerate(p):
        num[j + 1] += c
        num[j + 2] -= c
    den = scaled_to_power(ScaledBernsteinPoly(n - 1, tuple(Fraction(g) for g in op.gamma)))
    _, rem = _poly_divmod(num, den)
    return rem
