"""Command-line client for the operator service.

By default every subcommand runs the handlers in-process, so batch use needs
no server and reruns are byte-identical; --server posts the same request
models to a running instance instead.

Exit codes: 0 ok, 1 malformed input, 2 condition-(W) violation,
3 certificate failure.
"""
from __future__ import annotations

import json
import sys
import urllib.error
import urllib.request

import click
from pydantic import ValidationError

from .errors import SpecError
from .service import handlers
from .service.schemas import (
    CertifyRequest,
    ConvergeRequest,
    OperatorSpecDocument,
    VoronovskajaRequest,
)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_W_VIOLATION = 2
EXIT_CERT_FAILURE = 3


def _fmt(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if value is None:
        return ""
    return format(float(value), ".17g")


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _fail(detail: str, out: str | None, code: int):
    _emit(json.dumps({"status": "error", "detail": detail}) + "\n", out)
    sys.exit(code)


def _load_spec(path: str, backend: str | None) -> OperatorSpecDocument:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SpecError(f"cannot read spec {path}: {exc}") from exc
    if backend:
        raw["backend"] = backend
    try:
        return OperatorSpecDocument.model_validate(raw)
    except ValidationError as exc:
        raise SpecError(str(exc)) from exc


def _parse_n_list(text: str) -> list[int]:
    try:
        values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise SpecError(f"bad n list {text!r}") from exc
    if not values:
        raise SpecError("empty n list")
    return values


def _post(server: str, endpoint: str, payload: dict):
    req = urllib.request.Request(
        f"{server.rstrip('/')}/{endpoint}",
        data=json.dumps(payload).encode(),
        headers={"Content-Type": "application/json"},
        method="POST",
    )
    try:
        with urllib.request.urlopen(req) as resp:
            return json.loads(resp.read()), resp.status
    except urllib.error.HTTPError as exc:
        return json.loads(exc.read()), exc.code


def _csv(header: list[str], rows: list[list]) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def _render(response, fmt: str) -> str:
    if fmt == "json":
        return response.model_dump_json(indent=2) + "\n"
    command = response.command
    if command == "build":
        op = response.operator
        rows = [
            [k, op.nodes[k], op.gamma[k] if k < op.n else "", op.alpha[k]]
            for k in range(op.n + 1)
        ]
        return _csv(["k", "node", "gamma", "alpha"], rows)
    if command == "converge":
        return _csv(
            ["n", "delta_n", "sup_error", "bound_omega1", "bound_omega2"],
            [[r.n, r.delta_n, r.sup_error, r.bound_omega1, r.bound_omega2]
             for r in response.rows],
        )
    if command == "voronovskaja":
        return _csv(
            ["n", "ratio", "target", "mamedov", "mamedov_cap"],
            [[r.n, r.ratio, r.target, r.mamedov, r.mamedov_cap]
             for r in response.rows],
        )
    return _csv(
        ["name", "worst_slack", "passed"],
        [[r.name, r.worst_slack, r.passed] for r in response.rows],
    )


def _run(endpoint, request_payload, local_call, server, fmt, out):
    """Dispatch locally or over HTTP, map outcomes to exit codes, emit."""
    try:
        if server:
            body, status = _post(server, endpoint, request_payload)
            text = json.dumps(body, indent=2) + "\n"
            if status == 409 or body.get("status") == "w_violation":
                _emit(text, out)
                sys.exit(EXIT_W_VIOLATION)
            if status >= 400:
                _emit(text, out)
                sys.exit(EXIT_INPUT)
            if body.get("status") == "certificate_failure":
                _emit(text, out)
                sys.exit(EXIT_CERT_FAILURE)
            _emit(text, out)
            return
        response = local_call()
    except SpecError as exc:
        _fail(str(exc), out, EXIT_INPUT)
    except handlers.WViolationError as exc:
        payload = {
            "status": "w_violation",
            "violation": handlers._violation_model(exc.violation).model_dump(),
        }
        _emit(json.dumps(payload, indent=2) + "\n", out)
        sys.exit(EXIT_W_VIOLATION)
    _emit(_render(response, fmt), out)
    if response.command == "build" and response.status == "w_violation":
        sys.exit(EXIT_W_VIOLATION)
    if response.command == "certify" and response.status == "certificate_failure":
        sys.exit(EXIT_CERT_FAILURE)


spec_option = click.option("--spec", "spec_path", required=True, type=str)
backend_option = click.option(
    "--backend", type=click.Choice(["float", "rational"]), default=None
)
format_option = click.option(
    "--format", "fmt", type=click.Choice(["json", "csv"]), default="json"
)
out_option = click.option("--out", default=None, type=str)
server_option = click.option("--server", default=None, type=str)


@click.group()
def main():
    """Rational Bernstein operator toolkit."""


@main.command()
@spec_option
@backend_option
@format_option
@out_option
@server_option
def build(spec_path, backend, fmt, out, server):
    """Construct the operator and report nodes, weights and the node gap."""
    try:
        spec = _load_spec(spec_path, backend)
    except SpecError as exc:
        _fail(str(exc), out, EXIT_INPUT)
    _run("build", spec.model_dump(), lambda: handlers.handle_build(spec),
         server, fmt, out)


@main.command()
@spec_option
@click.option("--f", "fname", required=True, type=str)
@click.option("--n-list", "n_list", required=True, type=str)
@click.option("--grid", default=1001, type=int)
@backend_option
@format_option
@out_option
@server_option
def converge(spec_path, fname, n_list, grid, backend, fmt, out, server):
    """Sweep the degree and tabulate sup error against the two certificates."""
    try:
        spec = _load_spec(spec_path, backend)
        req = ConvergeRequest(spec=spec, f=fname, n_list=_parse_n_list(n_list),
                              grid=grid)
    except (SpecError, ValidationError) as exc:
        _fail(str(exc), out, EXIT_INPUT)
    _run("converge", req.model_dump(), lambda: handlers.handle_converge(req),
         server, fmt, out)


@main.command()
@spec_option
@click.option("--f", "fname", required=True, type=str)
@click.option("--x", required=True, type=float)
@click.option("--n-list", "n_list", required=True, type=str)
@backend_option
@format_option
@out_option
@server_option
def voronovskaja(spec_path, fname, x, n_list, backend, fmt, out, server):
    """Tabulate the second-order ratio against f''(x)/2 along a degree sweep."""
    try:
        spec = _load_spec(spec_path, backend)
        req = VoronovskajaRequest(spec=spec, f=fname, x=x,
                                  n_list=_parse_n_list(n_list))
    except (SpecError, ValidationError) as exc:
        _fail(str(exc), out, EXIT_INPUT)
    _run("voronovskaja", req.model_dump(),
         lambda: handlers.handle_voronovskaja(req), server, fmt, out)


@main.command()
@spec_option
@click.option("--suite", type=click.Choice(["moments", "bounds", "all"]),
              default="all")
@click.option("--grid", default=1001, type=int)
@backend_option
@format_option
@out_option
@server_option
def certify(spec_path, suite, grid, backend, fmt, out, server):
    """Run the inequality certificates and report the worst slack of each."""
    try:
        spec = _load_spec(spec_path, backend)
        req = CertifyRequest(spec=spec, suite=suite, grid=grid)
    except (SpecError, ValidationError) as exc:
        _fail(str(exc), out, EXIT_INPUT)
    _run("certify", req.model_dump(), lambda: handlers.handle_certify(req),
         server, fmt, out)


@main.command()
@click.option("--host", default="127.0.0.1")
@click.option("--port", default=8000, type=int)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    uvicorn.run("ratbern.service.app:app", host=host, port=port)


if __name__ == "__main__":
    main()
