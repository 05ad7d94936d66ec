"""Target functions used by the certificates, the CLI and the tests.

Each entry carries analytic moduli of continuity where a closed form is
cheap, so certificate checks never depend on sampled under-estimates.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

__all__ = ["TargetFunction", "CORPUS", "PHI_CORPUS", "get_function", "phi_abs"]


@dataclass(frozen=True)
class TargetFunction:
    """An evaluable function on [0,1] with optional analytic extras."""

    eval: Callable
    label: str
    second_derivative: Optional[Callable] = None
    analytic_omega1: Optional[Callable] = None
    analytic_omega2: Optional[Callable] = None
    min_value: Optional[float] = field(default=None)  # continuum min, if known

    def __call__(self, x):
        return self.eval(x)


def _omega1_sin_pi(h):
    # sin(pi x) is steepest at the endpoints; for h >= 1/2 the full range 1.
    return math.sin(math.pi * h) if h <= 0.5 else 1.0


def _omega2_e3(h):
    # second difference 6 x d^2 with x <= 1 - d, increasing in d up to 2/3
    d = min(h, 2.0 / 3.0)
    return 6.0 * d * d * (1.0 - d)


E0 = TargetFunction(lambda x: x * 0 + 1, "e0", lambda x: 0.0, lambda h: 0.0, lambda h: 0.0)

CORPUS = {
    "e1": TargetFunction(
        lambda x: x,
        "e1",
        second_derivative=lambda x: 0.0,
        analytic_omega1=lambda h: h,
        analytic_omega2=lambda h: 0.0,
    ),
    "e2": TargetFunction(
        lambda x: x * x,
        "e2",
        second_derivative=lambda x: 2.0,
        analytic_omega1=lambda h: h * (2 - h),
        analytic_omega2=lambda h: 2 * h * h,
    ),
    "e3": TargetFunction(
        lambda x: x**3,
        "e3",
        second_derivative=lambda x: 6.0 * x,
        analytic_omega1=lambda h: h * (3 - 3 * h + h * h),
        analytic_omega2=_omega2_e3,
    ),
    "exp": TargetFunction(
        lambda x: math.exp(x),
        "exp",
        second_derivative=math.exp,
        analytic_omega1=lambda h: math.e * (1.0 - math.exp(-h)),
        analytic_omega2=lambda h: math.e * (1.0 - math.exp(-h)) ** 2,
    ),
    "sin_pi": TargetFunction(
        lambda x: math.sin(math.pi * x),
        "sin_pi",
        second_derivative=lambda x: -math.pi**2 * math.sin(math.pi * x),
        analytic_omega1=_omega1_sin_pi,
        analytic_omega2=lambda h: 2.0 * (1.0 - math.cos(math.pi * min(h, 0.5))),
    ),
    "abs_half": TargetFunction(
        lambda x: abs(x - 0.5),
        "abs_half",
        analytic_omega1=lambda h: min(h, 0.5),
        analytic_omega2=lambda h: 2.0 * min(h, 0.5),
    ),
}


def get_function(name: str) -> TargetFunction:
    try:
        return CORPUS[name]
    except KeyError:
        raise KeyError(
            f"unknown function {name!r}; known: {', '.join(sorted(CORPUS))}"
        ) from None


def phi_abs(a: float) -> TargetFunction:
    """The kink weight a + |x - 1/2|; satisfies condition (W) iff a > 1/2."""
    if not a > 0:
        raise ValueError("a must be positive")
    return TargetFunction(
        lambda x, a=a: a + abs(x - 0.5),
        f"phi_abs({a})",
        analytic_omega1=lambda h: min(h, 0.5),
        min_value=a,
    )


PHI_CORPUS = {
    "one": TargetFunction(
        lambda x: 1.0, "one", analytic_omega1=lambda h: 0.0, min_value=1.0
    ),
    "one_plus_x": TargetFunction(
        lambda x: 1.0 + x, "one_plus_x", analytic_omega1=lambda h: h, min_value=1.0
    ),
    "phi_abs_0.6": phi_abs(0.6),
    "exp": TargetFunction(
        lambda x: math.exp(x),
        "exp",
        analytic_omega1=lambda h: math.e * (1.0 - math.exp(-h)),
        min_value=1.0,
    ),
}
