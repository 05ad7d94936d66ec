"""Built-in operator families used by the tests, the service and the CLI."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .basis import ScaledBernsteinPoly, eval_scaled, power_to_scaled
from .corpus import TargetFunction, phi_abs
from .errors import DomainError, PositivityError
from .operator import from_nodes, from_weight_polynomial

__all__ = [
    "FamilySpec",
    "bernstein_of_phi",
    "make",
    "q_divergence_profile",
    "sqrt_nodes_gamma_bound_exact",
]

FAMILY_KINDS = ("classical", "one_plus_x_squared", "phi_abs", "sqrt_nodes", "phi_generic")


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    n: int
    a: Optional[float] = None  # phi_abs only
    samples: Optional[Sequence] = None  # phi_generic only

    def __post_init__(self):
        if self.kind not in FAMILY_KINDS:
            raise DomainError(f"unknown family kind {self.kind!r}")
        if self.n < 2:
            raise DomainError("family degree must be >= 2")
        if self.kind == "phi_abs" and (self.a is None or not self.a > 0):
            raise DomainError("phi_abs requires a > 0")
        if self.kind == "phi_generic" and not self.samples:
            raise DomainError("phi_generic requires weight samples")


def bernstein_of_phi(phi, m: int, exact: bool = False) -> ScaledBernsteinPoly:
    """Scaled coefficients g_k = phi(k/m) * C(m, k) of the degree-m weight.

    This samples phi at k/m; it does not generally coincide with converting
    the power form of phi itself.
    """
    fn = phi.eval if isinstance(phi, TargetFunction) else phi
    gamma = []
    for k in range(m + 1):
        t = Fraction(k, m) if exact else k / m
        v = fn(t)
        if not v > 0:
            raise PositivityError(f"weight sample phi({k}/{m}) = {v} is not positive")
        gamma.append(v * math.comb(m, k))
    return ScaledBernsteinPoly(m, tuple(gamma))


def make(spec: FamilySpec, exact: bool = False):
    """Build the family's operator; a WViolation passes through unchanged
    (the kink family below the threshold is supposed to fail)."""
    n = spec.n
    if spec.kind == "classical":
        if exact:
            nodes = tuple(Fraction(k, n) for k in range(n + 1))
            return from_nodes(nodes, Fraction(1))
        return from_nodes(tuple(k / n for k in range(n + 1)), 1.0)
    if spec.kind == "one_plus_x_squared":
        one = Fraction(1) if exact else 1.0
        poly = power_to_scaled((one, 0 * one, one), n - 1)
        return from_weight_polynomial(poly.coeffs)
    if spec.kind == "phi_abs":
        if exact:
            a = Fraction(str(spec.a))
            fn = lambda x: a + abs(x - Fraction(1, 2))
        else:
            fn = phi_abs(float(spec.a)).eval
        poly = bernstein_of_phi(fn, n - 1, exact=exact)
        return from_weight_polynomial(poly.coeffs)
    if spec.kind == "sqrt_nodes":
        if exact:
            raise DomainError("sqrt-node family has irrational nodes; float only")
        nodes = tuple(math.sqrt(k / n) for k in range(n + 1))
        return from_nodes(nodes, 1.0)
    if spec.kind == "phi_generic":
        samples = tuple(spec.samples)
        if len(samples) != n:
            raise DomainError(f"phi_generic needs n={n} samples, got {len(samples)}")
        for v in samples:
            if not v > 0:
                raise PositivityError("weight samples must be strictly positive")
        m = n - 1
        gamma = tuple(v * math.comb(m, k) for k, v in enumerate(samples))
        return from_weight_polynomial(gamma)
    raise DomainError(f"unknown family kind {spec.kind!r}")


def q_divergence_profile(n_list, x_list):
    """Rows (n, x, Q(x)/Q(0)) for the sqrt-node family normalized to g_0 = 1.

    The value at x = 0 stays 1 for every n while interior values collapse
    geometrically, bounded by (1 - x/2)^(n-1).
    """
    rows = []
    for n in n_list:
        op = make(FamilySpec("sqrt_nodes", n))
        q = op.weight_poly
        q0 = float(q.coeffs[0])
        for x in x_list:
            rows.append(
                {
                    "n": n,
                    "x": float(x),
                    "value": float(eval_scaled(q, float(x))) / q0,
                    "cap": (1.0 - float(x) / 2.0) ** (n - 1),
                }
            )
    return rows


def _sqrt_ratio_bounds(l: int, n: int, prec: int = 40):
    """Rational (lower, upper) bounds for sqrt(l/n) via integer square roots."""
    scale = 10**prec
    s = math.isqrt(l * n * scale * scale)
    return Fraction(s, n * scale), Fraction(s + 1, n * scale)


def sqrt_nodes_gamma_bound_exact(n: int, prec: int = 40) -> bool:
    """Exact certificate that g_k <= C(n-1, k) / 2^k for the sqrt-node family.

    The nodes are irrational, so the check works with rational enclosures of
    sqrt(l/n): an upper bound on each product factor (1 - x_l)/x_l is compared
    against the exact cap factor (n-l)/(2l) in rational arithmetic.
    """
    for l in range(1, n):
        lo, _ = _sqrt_ratio_bounds(l, n, prec)
        factor_upper = (1 - lo) / lo
        if factor_upper > Fraction(n - l, l) * Fraction(1, 2):
            return False
    return True
