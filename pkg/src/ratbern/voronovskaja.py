"""Voronovskaja-ratio diagnostics and the fourth-to-second moment criterion.

The ratio (Rf(x) - f(x)) / R[(e_1 - x)^2](x) tends to f''(x)/2 whenever the
fourth-to-second central-moment ratio vanishes, which the node-gap bound on
the fourth moment guarantees once the gap goes to zero.
"""
from __future__ import annotations

from dataclasses import dataclass

from .corpus import TargetFunction
from .errors import DegeneratePointError, DomainError
from .moments import central_moment
from .operator import RationalBernsteinOperator, apply_error, delta_n

__all__ = ["VoronovskajaSample", "mamedov_ratio", "mamedov_cap", "voronovskaja_sample"]


@dataclass(frozen=True)
class VoronovskajaSample:
    n: int
    x: float
    ratio: float
    target: float | None
    mamedov: float


def _check_interior(x):
    if x <= 0 or x >= 1:
        if x == 0 or x == 1:
            raise DegeneratePointError(
                "both numerator and denominator vanish at the endpoints"
            )
        raise DomainError(f"x={x!r} outside (0, 1)")


def mamedov_ratio(op: RationalBernsteinOperator, x) -> float:
    """Fourth over second central moment at an interior point."""
    _check_interior(x)
    x = float(x)
    return float(central_moment(op, 4, x)) / float(central_moment(op, 2, x))


def mamedov_cap(op: RationalBernsteinOperator, x) -> float:
    """Certified cap on the Mamedov ratio: delta * (6x^2 - 15x + 12 + delta)."""
    x = float(x)
    d = float(delta_n(op))
    return d * (6 * x * x - 15 * x + 12 + d)


def voronovskaja_sample(
    op: RationalBernsteinOperator, f: TargetFunction, x
) -> VoronovskajaSample:
    """One diagnostic row at an interior point."""
    _check_interior(x)
    x = float(x)
    m2 = float(central_moment(op, 2, x))
    # subtraction folded into the operator sum; avoids cancellation
    ratio = float(apply_error(op, f.eval, x)) / m2
    target = None
    if f.second_derivative is not None:
        target = float(f.second_derivative(x)) / 2.0
    return VoronovskajaSample(
        n=op.n, x=x, ratio=ratio, target=target, mamedov=mamedov_ratio(op, x)
    )
