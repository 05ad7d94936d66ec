"""Construction and evaluation of rational Bernstein operators.

An operator of degree n is determined by strictly positive coefficients
g_0..g_(n-1) of the weight polynomial Q (scaled Bernstein form, degree n-1).
The nodes x_k = g_(k-1) / (g_(k-1) + g_k) are strictly increasing exactly
when the ratio sequence g_(k-1)/g_k is strictly increasing (condition (W)),
and the numerator weights are a_k = g_k + g_(k-1).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .basis import ScaledBernsteinPoly, basis_terms, is_exact
from .errors import DomainError, PositivityError

__all__ = [
    "NodeSequence",
    "RationalBernsteinOperator",
    "WViolation",
    "apply_error",
    "apply_error_grid",
    "apply_operator",
    "apply_grid",
    "check_w",
    "delta_n",
    "from_nodes",
    "from_weight_polynomial",
]

# Ratios must increase by more than this (relative) to count as strict.
W_STRICTNESS_RTOL = 1e-14


@dataclass(frozen=True)
class WViolation:
    """First failure of the ratio-monotonicity condition.

    ``index`` is the k (1-based, in 1..n-1) such that the consecutive ratios
    r_k = g_(k-1)/g_k and r_(k+1) fail to increase strictly; ``ratios`` holds
    the offending pair (r_k, r_(k+1)).
    """

    index: int
    ratios: tuple


@dataclass(frozen=True)
class NodeSequence:
    """Strictly increasing grid on [0,1] with pinned endpoints 0 and 1."""

    values: tuple

    def __post_init__(self):
        v = tuple(self.values)
        if len(v) < 2:
            raise DomainError("need at least the two endpoint nodes")
        if v[0] != 0 or v[-1] != 1:
            raise DomainError("node sequence must start at 0 and end at 1")
        for a, b in zip(v, v[1:]):
            if not b > a:
                raise DomainError("nodes must be strictly increasing")
        object.__setattr__(self, "values", v)

    @property
    def n(self) -> int:
        return len(self.values) - 1


@dataclass(frozen=True)
class RationalBernsteinOperator:
    """Immutable rational Bernstein operator of degree n.

    gamma: weight coefficients g_0..g_(n-1), all > 0.
    nodes: x_0=0 < x_1 < ... < x_n=1.
    alpha: numerator weights a_k = g_k + g_(k-1) (conventions g_(-1)=g_n=0).
    """

    n: int
    gamma: tuple
    nodes: tuple
    alpha: tuple
    # Optional stable log-gamma; families whose coefficients span more than
    # the double range (e.g. sqrt nodes at n ~ 1000) must supply it.
    log_gamma: tuple | None = None

    def __post_init__(self):
        if len(self.gamma) != self.n:
            raise DomainError("gamma must have n entries")
        if len(self.nodes) != self.n + 1:
            raise DomainError("nodes must have n+1 entries")
        if len(self.alpha) != self.n + 1:
            raise DomainError("alpha must have n+1 entries")

    @property
    def exact(self) -> bool:
        return all(is_exact(g) for g in self.gamma)

    @property
    def weight_poly(self) -> ScaledBernsteinPoly:
        return ScaledBernsteinPoly(self.n - 1, self.gamma)

    @cached_property
    def _log_gamma(self) -> np.ndarray:
        if self.log_gamma is not None:
            return np.asarray(self.log_gamma, dtype=float)
        return np.log(np.asarray([float(g) for g in self.gamma]))

    @cached_property
    def _log_alpha(self) -> np.ndarray:
        # a_k = g_k + g_(k-1), assembled in log space
        lg = self._log_gamma
        out = np.empty(self.n + 1)
        out[0] = lg[0]
        out[-1] = lg[-1]
        if self.n > 1:
            out[1:-1] = np.logaddexp(lg[:-1], lg[1:])
        return out

    @cached_property
    def _nodes_f(self) -> np.ndarray:
        return np.asarray([float(x) for x in self.nodes])

    def apply(self, f, x):
        return apply_operator(self, f, x)

    @property
    def delta_n(self):
        return delta_n(self)


def _ratios(gamma):
    for g in gamma:
        if not g > 0:
            raise PositivityError("weight coefficients must be strictly positive")
    return [gamma[k - 1] / gamma[k] for k in range(1, len(gamma))]


def check_w(gamma) -> WViolation | None:
    """None when condition (W) holds, else the first offending ratio pair.

    (W) requires g_(k-1)/g_k strictly increasing; ties fail.
    """
    r = _ratios(tuple(gamma))
    for k in range(1, len(r)):
        prev, cur = r[k - 1], r[k]
        if is_exact(prev) and is_exact(cur):
            strict = cur > prev
        else:
            prev, cur = float(prev), float(cur)
            strict = cur - prev > W_STRICTNESS_RTOL * max(abs(prev), abs(cur))
        if not strict:
            return WViolation(index=k, ratios=(prev, cur))
    return None


def _alpha_from_gamma(gamma):
    n = len(gamma)
    return tuple(
        (gamma[k] if k < n else 0) + (gamma[k - 1] if k >= 1 else 0)
        for k in range(n + 1)
    )


def from_weight_polynomial(gamma) -> RationalBernsteinOperator | WViolation:
    """Operator for the weight polynomial with scaled coefficients ``gamma``.

    Nodes come from x_k = g_(k-1)/(g_(k-1)+g_k); a WViolation is returned
    (not raised) when the ratio sequence is not strictly increasing.
    """
    gamma = tuple(gamma)
    n = len(gamma)
    if n < 1:
        raise DomainError("need at least one weight coefficient")
    violation = check_w(gamma)
    if violation is not None:
        return violation
    exact = all(is_exact(g) for g in gamma)
    one, zero = (Fraction(1), Fraction(0)) if exact else (1.0, 0.0)
    nodes = [zero]
    for k in range(1, n):
        nodes.append(gamma[k - 1] / (gamma[k - 1] + gamma[k]))
    nodes.append(one)
    return RationalBernsteinOperator(
        n=n, gamma=gamma, nodes=tuple(nodes), alpha=_alpha_from_gamma(gamma)
    )


def from_nodes(nodes, gamma0=1.0) -> RationalBernsteinOperator:
    """Operator with the prescribed nodes: g_k = g_0 * prod (1-x_l)/x_l.

    Condition (W) holds by construction because the nodes increase.
    """
    if not isinstance(nodes, NodeSequence):
        nodes = NodeSequence(tuple(nodes))
    if not gamma0 > 0:
        raise PositivityError("gamma0 must be strictly positive")
    n = nodes.n
    gamma = [gamma0]
    for l in range(1, n):
        x = nodes.values[l]
        gamma.append(gamma[-1] * (1 - x) / x)
    exact = all(is_exact(v) for v in nodes.values) and is_exact(gamma0)
    log_gamma = None
    if not exact:
        # cumulative logs stay finite even when the products under/overflow
        acc = math.log(float(gamma0))
        logs = [acc]
        for l in range(1, n):
            x = float(nodes.values[l])
            acc += math.log1p(-x) - math.log(x)
            logs.append(acc)
        log_gamma = tuple(logs)
    return RationalBernsteinOperator(
        n=n,
        gamma=tuple(gamma),
        nodes=tuple(nodes.values),
        alpha=_alpha_from_gamma(tuple(gamma)),
        log_gamma=log_gamma,
    )


def delta_n(op: RationalBernsteinOperator):
    """Largest gap between consecutive nodes."""
    return max(b - a for a, b in zip(op.nodes, op.nodes[1:]))


def _apply_exact(op: RationalBernsteinOperator, f, x):
    x = Fraction(x)
    num_terms = basis_terms(op.n, x)
    den_terms = basis_terms(op.n - 1, x)
    num = sum(f(xk) * a * t for xk, a, t in zip(op.nodes, op.alpha, num_terms))
    den = sum(g * t for g, t in zip(op.gamma, den_terms))
    return num / den


def apply_grid(op: RationalBernsteinOperator, f, xs) -> np.ndarray:
    """Vectorized float evaluation of the operator at each x in ``xs``.

    Works with jointly max-shifted log weights so that degrees in the
    thousands neither overflow (huge gamma) nor underflow (tiny basis terms).
    Endpoints return f(0), f(1) exactly.
    """
    xs = np.asarray(xs, dtype=float)
    if np.any(xs < 0) or np.any(xs > 1):
        raise DomainError("grid points must lie in [0, 1]")
    n = op.n
    fvals = np.asarray([float(f(xk)) for xk in op.nodes])
    out = np.empty(xs.shape, dtype=float)
    interior = (xs > 0) & (xs < 1)
    out[xs == 0] = fvals[0]
    out[xs == 1] = fvals[-1]
    xi = xs[interior]
    if xi.size:
        lx = np.log(xi)
        l1x = np.log1p(-xi)
        kn = np.arange(n + 1)[:, None]
        kd = np.arange(n)[:, None]
        log_num = op._log_alpha[:, None] + kn * lx + (n - kn) * l1x
        log_den = op._log_gamma[:, None] + kd * lx + (n - 1 - kd) * l1x
        shift = np.maximum(log_num.max(axis=0), log_den.max(axis=0))
        num = (fvals[:, None] * np.exp(log_num - shift)).sum(axis=0)
        den = np.exp(log_den - shift).sum(axis=0)
        out[interior] = num / den
    return out


def apply_error_grid(op: RationalBernsteinOperator, f, xs) -> np.ndarray:
    """R_n f - f on a grid, with the subtraction folded into the sum.

    Computes sum_k (f(x_k) - f(x)) w_k(x) instead of apply - f; the weights
    are nonnegative and sum to one, so no large cancellation occurs outside
    the summation.  Zero at the endpoints by reproduction.
    """
    xs = np.asarray(xs, dtype=float)
    if np.any(xs < 0) or np.any(xs > 1):
        raise DomainError("grid points must lie in [0, 1]")
    n = op.n
    fvals = np.asarray([float(f(xk)) for xk in op.nodes])
    out = np.zeros(xs.shape, dtype=float)
    interior = (xs > 0) & (xs < 1)
    xi = xs[interior]
    if xi.size:
        fx = np.asarray([float(f(x)) for x in xi])
        lx = np.log(xi)
        l1x = np.log1p(-xi)
        kn = np.arange(n + 1)[:, None]
        kd = np.arange(n)[:, None]
        log_num = op._log_alpha[:, None] + kn * lx + (n - kn) * l1x
        log_den = op._log_gamma[:, None] + kd * lx + (n - 1 - kd) * l1x
        shift = np.maximum(log_num.max(axis=0), log_den.max(axis=0))
        num = ((fvals[:, None] - fx[None, :]) * np.exp(log_num - shift)).sum(axis=0)
        den = np.exp(log_den - shift).sum(axis=0)
        out[interior] = num / den
    return out


def apply_error(op: RationalBernsteinOperator, f, x):
    """R_n f(x) - f(x) at a single point; exact when operator and x are."""
    if x < 0 or x > 1:
        raise DomainError(f"x={x!r} outside [0, 1]")
    if x == 0 or x == 1:
        return Fraction(0) if op.exact and is_exact(x) else 0.0
    if op.exact and is_exact(x):
        return _apply_exact(op, f, x) - f(x)
    return float(apply_error_grid(op, f, np.asarray([float(x)]))[0])


def apply_operator(op: RationalBernsteinOperator, f, x):
    """R_n f at a single point; exact when the operator and x are exact."""
    if x < 0 or x > 1:
        raise DomainError(f"x={x!r} outside [0, 1]")
    if x == 0:
        return f(op.nodes[0])
    if x == 1:
        return f(op.nodes[-1])
    if op.exact and is_exact(x):
        return _apply_exact(op, f, x)
    return float(apply_grid(op, f, np.asarray([float(x)]))[0])
