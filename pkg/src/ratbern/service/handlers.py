"""Command handlers: one pure function per endpoint/subcommand.

The FastAPI app and the CLI client both call these, so batch runs do not
need a running server and produce identical payloads either way.
"""
from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .. import __version__
from ..basis import power_to_scaled
from ..bounds import omega1, omega2, phi_delta_bound
from ..corpus import CORPUS, TargetFunction, get_function, phi_abs
from ..errors import DomainError, PositivityError, SpecError
from ..gallery import FamilySpec, bernstein_of_phi, make
from ..moments import monomial_moment_grid, shifted_sum_pair
from ..operator import (
    RationalBernsteinOperator,
    WViolation,
    apply_error_grid,
    delta_n,
    from_nodes,
    from_weight_polynomial,
)
from ..voronovskaja import voronovskaja_sample
from .schemas import (
    BuildResponse,
    CertificateRow,
    CertifyRequest,
    CertifyResponse,
    ConvergeRequest,
    ConvergeResponse,
    ConvergeRow,
    FamilyPayload,
    OperatorSpecDocument,
    OperatorSummary,
    VoronovskajaRequest,
    VoronovskajaResponse,
    VoronovskajaRow,
    WViolationModel,
    decode_number,
    encode_number,
)

SLACK_TOLERANCE = 1e-10

# modes whose payload pins the degree, so sweeps cannot rescale them
FIXED_DEGREE_MODES = ("gamma", "nodes", "phi_samples")


class WViolationError(Exception):
    """Raised when a command other than build hits a (W) failure."""

    def __init__(self, violation: WViolation):
        self.violation = violation
        super().__init__(f"condition (W) fails at index {violation.index}")


def _violation_model(v: WViolation) -> WViolationModel:
    return WViolationModel(
        index=v.index, ratios=(encode_number(v.ratios[0]), encode_number(v.ratios[1]))
    )


def build_operator(spec: OperatorSpecDocument, n: int | None = None):
    """Operator (or WViolation) for a spec document, optionally at another n."""
    if n is None:
        n = spec.n
    exact = spec.backend == "rational"
    try:
        if spec.mode == "family":
            payload: FamilyPayload = spec.payload
            samples = None
            if payload.samples is not None:
                samples = [decode_number(v, exact) for v in payload.samples]
            return make(
                FamilySpec(kind=payload.kind, n=n, a=payload.a, samples=samples),
                exact=exact,
            )
        if spec.mode in FIXED_DEGREE_MODES and n != spec.n:
            raise SpecError(f"{spec.mode} mode pins the degree to n={spec.n}")
        values = [decode_number(v, exact) for v in spec.payload]
        if spec.mode == "gamma":
            return from_weight_polynomial(values)
        if spec.mode == "nodes":
            return from_nodes(values, Fraction(1) if exact else 1.0)
        if spec.mode == "power_poly":
            poly = power_to_scaled(values, n - 1)
            return from_weight_polynomial(poly.coeffs)
        if spec.mode == "phi_samples":
            m = n - 1
            gamma = [v * math.comb(m, k) for k, v in enumerate(values)]
            return from_weight_polynomial(gamma)
    except (DomainError, PositivityError, ValueError, ZeroDivisionError) as exc:
        raise SpecError(str(exc)) from exc
    raise SpecError(f"unknown mode {spec.mode!r}")


def _require_operator(spec, n=None) -> RationalBernsteinOperator:
    result = build_operator(spec, n)
    if isinstance(result, WViolation):
        raise WViolationError(result)
    return result


def _float_twin(op: RationalBernsteinOperator) -> RationalBernsteinOperator:
    if not op.exact:
        return op
    return RationalBernsteinOperator(
        n=op.n,
        gamma=tuple(float(g) for g in op.gamma),
        nodes=tuple(float(x) for x in op.nodes),
        alpha=tuple(float(a) for a in op.alpha),
    )


def handle_build(spec: OperatorSpecDocument) -> BuildResponse:
    result = build_operator(spec)
    if isinstance(result, WViolation):
        return BuildResponse(
            version=__version__,
            status="w_violation",
            backend=spec.backend,
            violation=_violation_model(result),
        )
    return BuildResponse(
        version=__version__,
        status="ok",
        backend=spec.backend,
        operator=OperatorSummary(
            n=result.n,
            delta_n=encode_number(delta_n(result)),
            nodes=[encode_number(v) for v in result.nodes],
            gamma=[encode_number(v) for v in result.gamma],
            alpha=[encode_number(v) for v in result.alpha],
        ),
    )


def handle_converge(req: ConvergeRequest) -> ConvergeResponse:
    f = _corpus_function(req.f)
    grid = np.linspace(0.0, 1.0, req.grid)
    rows = []
    for n in req.n_list:
        op = _float_twin(_require_operator(req.spec, n))
        d = float(delta_n(op))
        sup_error = float(np.abs(apply_error_grid(op, f.eval, grid)).max())
        rows.append(
            ConvergeRow(
                n=n,
                delta_n=d,
                sup_error=sup_error,
                bound_omega1=1.5 * omega1(f, math.sqrt(d)),
                bound_omega2=1.125 * omega2(f, min(math.sqrt(d), 0.5)),
            )
        )
    return ConvergeResponse(
        version=__version__, backend=req.spec.backend, f=req.f, rows=rows
    )


def handle_voronovskaja(req: VoronovskajaRequest) -> VoronovskajaResponse:
    f = _corpus_function(req.f)
    if f.second_derivative is None:
        raise SpecError(f"function {req.f!r} has no second derivative")
    rows = []
    for n in req.n_list:
        op = _float_twin(_require_operator(req.spec, n))
        sample = voronovskaja_sample(op, f, req.x)
        d = float(delta_n(op))
        cap = d * (6 * req.x**2 - 15 * req.x + 12 + d)
        rows.append(
            VoronovskajaRow(
                n=n,
                ratio=sample.ratio,
                target=sample.target,
                mamedov=sample.mamedov,
                mamedov_cap=cap,
            )
        )
    return VoronovskajaResponse(
        version=__version__,
        backend=req.spec.backend,
        f=req.f,
        x=req.x,
        rows=rows,
    )


def _corpus_function(name: str):
    try:
        return get_function(name)
    except KeyError as exc:
        raise SpecError(str(exc)) from exc


def _central_grids(op, xs):
    m = {s: monomial_moment_grid(op, s, xs) for s in (2, 3, 4)}
    c2 = m[2]
    c4 = m[4] - 4 * xs * m[3] + 6 * xs**2 * m[2]
    return m, c2, c4


def moment_certificates(op: RationalBernsteinOperator, xs) -> list[CertificateRow]:
    op = _float_twin(op)
    d = float(delta_n(op))
    mono, c2, c4 = _central_grids(op, xs)
    rows = [
        CertificateRow(
            name="second_moment_cap",
            worst_slack=float((d * xs * (1 - xs) - np.abs(mono[2])).min()),
            passed=True,
        ),
        CertificateRow(
            name="third_moment_sandwich",
            worst_slack=float(min(mono[3].min(), (3 * mono[2] - mono[3]).min())),
            passed=True,
        ),
        CertificateRow(
            name="fourth_moment_cap",
            worst_slack=float((d * c2 * (6 * xs**2 - 15 * xs + 12 + d) - c4).min()),
            passed=True,
        ),
    ]
    for s in range(2, 7):
        rows.append(
            CertificateRow(
                name=f"positivity_s{s}",
                worst_slack=float(monomial_moment_grid(op, s, xs).min()),
                passed=True,
            )
        )
    for r in range(1, 5):
        worst = math.inf
        for x in xs:
            a, b = shifted_sum_pair(op, r, float(x))
            worst = min(worst, SLACK_TOLERANCE * max(1.0, abs(a)) - abs(a - b))
        rows.append(
            CertificateRow(name=f"shifted_sum_r{r}", worst_slack=float(worst), passed=True)
        )
    return rows


def bound_certificates(
    op: RationalBernsteinOperator, xs, phi=None, n: int | None = None
) -> list[CertificateRow]:
    op = _float_twin(op)
    d = float(delta_n(op))
    rows = []
    prefactor1 = 1.0 + np.sqrt(xs * (1 - xs))
    prefactor2 = 1.0 + 0.5 * xs * (1 - xs)
    for name, f in CORPUS.items():
        err = np.abs(apply_error_grid(op, f.eval, xs))
        w1 = omega1(f, math.sqrt(d))
        w2 = omega2(f, min(math.sqrt(d), 0.5))
        rows.append(
            CertificateRow(
                name=f"omega1_bound:{name}",
                worst_slack=float((prefactor1 * w1 - err).min()),
                passed=True,
            )
        )
        rows.append(
            CertificateRow(
                name=f"omega2_bound:{name}",
                worst_slack=float((prefactor2 * w2 - err).min()),
                passed=True,
            )
        )
    if phi is not None:
        rows.append(
            CertificateRow(
                name="node_gap_bound",
                worst_slack=phi_delta_bound(phi, n or op.n) - d,
                passed=True,
            )
        )
    return rows


def _spec_phi(spec: OperatorSpecDocument):
    """Weight function for the node-gap certificate, when the spec implies one."""
    if spec.mode == "family" and isinstance(spec.payload, FamilyPayload):
        if spec.payload.kind == "phi_abs":
            return phi_abs(spec.payload.a)
        if spec.payload.kind == "classical":
            return TargetFunction(
                lambda x: 1.0, "one", analytic_omega1=lambda h: 0.0, min_value=1.0
            )
    if spec.mode == "phi_samples":
        values = [float(decode_number(v, False)) for v in spec.payload]
        # only adjacent sample gaps at step 1/(n-1) enter the node formula
        w1 = max(
            [abs(b - a) for a, b in zip(values, values[1:])], default=0.0
        )
        return TargetFunction(
            lambda x, v=values: v[min(int(round(x * (len(v) - 1))), len(v) - 1)],
            "phi_samples",
            analytic_omega1=lambda h: w1,
            min_value=min(values),
        )
    return None


def handle_certify(req: CertifyRequest) -> CertifyResponse:
    op = _require_operator(req.spec)
    xs = np.linspace(0.0, 1.0, req.grid)
    rows = []
    if req.suite in ("moments", "all"):
        rows.extend(moment_certificates(op, xs))
    if req.suite in ("bounds", "all"):
        rows.extend(bound_certificates(op, xs, phi=_spec_phi(req.spec), n=req.spec.n))
    all_ok = True
    final = []
    for row in rows:
        passed = row.worst_slack >= -SLACK_TOLERANCE
        all_ok &= passed
        final.append(
            CertificateRow(name=row.name, worst_slack=row.worst_slack, passed=passed)
        )
    return CertifyResponse(
        version=__version__,
        status="ok" if all_ok else "certificate_failure",
        backend=req.spec.backend,
        suite=req.suite,
        rows=final,
    )
