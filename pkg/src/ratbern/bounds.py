"""Moduli of continuity and quantitative error certificates.

Sampled moduli are sups over a finite grid, hence lower bounds of the true
modulus; certificate checks therefore prefer the analytic modulus whenever
the target function carries one.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .corpus import TargetFunction
from .errors import DomainError, PositivityError
from .operator import RationalBernsteinOperator, apply_error, delta_n

__all__ = [
    "BoundReport",
    "ModulusEstimate",
    "bound_omega1",
    "bound_omega2",
    "bound_phi",
    "modulus1",
    "modulus2",
    "omega1",
    "omega2",
    "phi_delta_bound",
    "phi_min",
]

DEFAULT_GRID_DIVISOR = 64


@dataclass(frozen=True)
class ModulusEstimate:
    order: int
    h: float
    value: float
    grid_step: float
    kind: str  # "sampled" | "analytic"


@dataclass(frozen=True)
class BoundReport:
    """A certified inequality instance: observed <= bound up to tolerance."""

    bound: float
    observed: float
    slack: float
    location: object

    @property
    def holds(self) -> bool:
        return self.slack >= -1e-10


def _sample_values(f, grid_step: float):
    count = int(round(1.0 / grid_step)) + 1
    xs = np.linspace(0.0, 1.0, count)
    # the realized spacing, which the pair window must respect
    step = 1.0 / (count - 1)
    return xs, np.asarray([float(f(x)) for x in xs]), step


def modulus1(
    f, h: float, grid_step: float | None = None, *, prefer_analytic: bool = True
) -> ModulusEstimate:
    """First modulus: sup |f(x)-f(y)| over |x-y| <= h.

    Analytic when the function declares a closed form (and ``prefer_analytic``
    is left on), otherwise a sliding-window sup over a grid of the given step.
    """
    if not 0 < h <= 1:
        raise DomainError("h must lie in (0, 1]")
    fn = f.eval if isinstance(f, TargetFunction) else f
    if (
        prefer_analytic
        and isinstance(f, TargetFunction)
        and f.analytic_omega1 is not None
    ):
        return ModulusEstimate(1, h, float(f.analytic_omega1(h)), 0.0, "analytic")
    if grid_step is None:
        grid_step = h / DEFAULT_GRID_DIVISOR
    xs, vals, step = _sample_values(fn, grid_step)
    window = int(math.floor(h / step + 1e-9))
    best = 0.0
    for d in range(1, min(window, len(vals) - 1) + 1):
        best = max(best, float(np.abs(vals[d:] - vals[:-d]).max()))
    # pairs at exactly distance h, so Lipschitz sups are attained
    left = xs[xs <= 1.0 - h + 1e-15]
    if left.size:
        fl = np.asarray([float(fn(x)) for x in left])
        fr = np.asarray([float(fn(min(x + h, 1.0))) for x in left])
        best = max(best, float(np.abs(fr - fl).max()))
    return ModulusEstimate(1, h, best, step, "sampled")


def modulus2(
    f, h: float, grid_step: float | None = None, *, prefer_analytic: bool = True
) -> ModulusEstimate:
    """Second modulus: sup |f(x+d) - 2f(x) + f(x-d)| over d <= h."""
    if not 0 < h <= 0.5:
        raise DomainError("h must lie in (0, 1/2]")
    fn = f.eval if isinstance(f, TargetFunction) else f
    if (
        prefer_analytic
        and isinstance(f, TargetFunction)
        and f.analytic_omega2 is not None
    ):
        return ModulusEstimate(2, h, float(f.analytic_omega2(h)), 0.0, "analytic")
    if grid_step is None:
        grid_step = h / DEFAULT_GRID_DIVISOR
    xs, vals, step = _sample_values(fn, grid_step)
    window = int(math.floor(h / step + 1e-9))
    best = 0.0
    for d in range(1, min(window, (len(vals) - 1) // 2) + 1):
        second = vals[2 * d :] - 2 * vals[d:-d] + vals[: -2 * d]
        best = max(best, float(np.abs(second).max()))
    # symmetric differences with shift exactly h
    centers = xs[(xs >= h - 1e-15) & (xs <= 1.0 - h + 1e-15)]
    if centers.size:
        fc = np.asarray([float(fn(x)) for x in centers])
        fl = np.asarray([float(fn(max(x - h, 0.0))) for x in centers])
        fr = np.asarray([float(fn(min(x + h, 1.0))) for x in centers])
        best = max(best, float(np.abs(fr - 2 * fc + fl).max()))
    return ModulusEstimate(2, h, best, step, "sampled")


def omega1(f, h: float) -> float:
    return modulus1(f, h).value


def omega2(f, h: float) -> float:
    return modulus2(f, h).value


def bound_omega1(op: RationalBernsteinOperator, f, x) -> BoundReport:
    """|Rf(x) - f(x)| <= (1 + sqrt(x(1-x))) * omega1(f, sqrt(delta))."""
    x = float(x)
    d = float(delta_n(op))
    bound = (1.0 + math.sqrt(x * (1.0 - x))) * omega1(f, math.sqrt(d))
    fn = f.eval if isinstance(f, TargetFunction) else f
    observed = abs(apply_error(op, fn, x))
    return BoundReport(bound, observed, bound - observed, x)


def bound_omega2(op: RationalBernsteinOperator, f, x) -> BoundReport:
    """|Rf(x) - f(x)| <= (1 + x(1-x)/2) * omega2(f, sqrt(delta))."""
    x = float(x)
    d = float(delta_n(op))
    h = min(math.sqrt(d), 0.5)
    bound = (1.0 + 0.5 * x * (1.0 - x)) * omega2(f, h)
    fn = f.eval if isinstance(f, TargetFunction) else f
    observed = abs(apply_error(op, fn, x))
    return BoundReport(bound, observed, bound - observed, x)


def phi_min(phi, n: int) -> tuple[float, float]:
    """(min used in the bound, fine-grid continuum estimate) of the weight fn.

    The operator only evaluates the weight function at k/(n-1), so its grid
    minimum already controls the node formula; the continuum minimum is used
    when the function declares one (it can only enlarge the bound) and a
    fine-grid estimate is reported alongside either way.
    """
    fn = phi.eval if isinstance(phi, TargetFunction) else phi
    samples = [float(fn(k / (n - 1))) for k in range(n)]
    grid_min = min(samples)
    if grid_min <= 0:
        raise PositivityError("weight function must be positive at the sample points")
    fine = min(float(fn(t)) for t in np.linspace(0.0, 1.0, 4097))
    declared = getattr(phi, "min_value", None)
    used = float(declared) if declared is not None else grid_min
    return used, fine


def phi_delta_bound(phi, n: int) -> float:
    """Cap on the node gap of the operator built from weight samples of phi:

        delta <= omega1(phi, 1/(n-1)) / (2m) + 1/n,  m = min phi.
    """
    if n < 2:
        raise DomainError("n must be >= 2")
    m, _ = phi_min(phi, n)
    return omega1(phi, 1.0 / (n - 1)) / (2.0 * m) + 1.0 / n


def bound_phi(op: RationalBernsteinOperator, f, x, phi) -> BoundReport:
    """Error certificate for operators built from weight samples of phi:

        |Rf(x) - f(x)| <= (1 + sqrt(x(1-x)))
                          * omega1(f, 1/sqrt(n) + omega1(phi, 1/(n-1)) / (2m)).
    """
    x = float(x)
    n = op.n
    m, _ = phi_min(phi, n)
    h = 1.0 / math.sqrt(n) + omega1(phi, 1.0 / (n - 1)) / (2.0 * m)
    bound = (1.0 + math.sqrt(x * (1.0 - x))) * omega1(f, min(h, 1.0))
    fn = f.eval if isinstance(f, TargetFunction) else f
    observed = abs(apply_error(op, fn, x))
    return BoundReport(bound, observed, bound - observed, x)
