"""HTTP front end over the command handlers."""
from __future__ import annotations

from fastapi import FastAPI
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import SpecError
from . import handlers
from .schemas import (
    BuildResponse,
    CertifyRequest,
    CertifyResponse,
    ConvergeRequest,
    ConvergeResponse,
    OperatorSpecDocument,
    VoronovskajaRequest,
    VoronovskajaResponse,
)


def create_app() -> FastAPI:
    app = FastAPI(title="ratbern", version=__version__)

    @app.exception_handler(SpecError)
    async def _spec_error(request, exc: SpecError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.exception_handler(handlers.WViolationError)
    async def _w_violation(request, exc: handlers.WViolationError):
        return JSONResponse(
            status_code=409,
            content={
                "detail": "condition (W) fails",
                "violation": handlers._violation_model(exc.violation).model_dump(),
            },
        )

    @app.get("/health")
    def health():
        return {"status": "ok", "version": __version__}

    @app.post("/build", response_model=BuildResponse)
    def build(spec: OperatorSpecDocument):
        return handlers.handle_build(spec)

    @app.post("/converge", response_model=ConvergeResponse)
    def converge(req: ConvergeRequest):
        return handlers.handle_converge(req)

    @app.post("/voronovskaja", response_model=VoronovskajaResponse)
    def voronovskaja(req: VoronovskajaRequest):
        return handlers.handle_voronovskaja(req)

    @app.post("/certify", response_model=CertifyResponse)
    def certify(req: CertifyRequest):
        return handlers.handle_certify(req)

    return app


app = create_app()
