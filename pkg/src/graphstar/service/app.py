"""FastAPI application exposing the graph calculus as a compute service.

Solved weight systems and enumerations are cached process-wide (the core
caches by arguments), so a long-running instance serves repeated star
products and verifications cheaply.
"""

from __future__ import annotations

import os

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import handlers
from .handlers import ServiceError
from .models import (AntipodeRequest, AntipodeResponse, CanonicalizeRequest,
                     CanonicalizeResponse, ComposeRequest, CoproductRequest,
                     EnumerateRequest, EnumerateResponse, HealthResponse,
                     MergeRequest, SolveRequest, StarRequest, StarResponse,
                     TensorResponse, VectorResponse, VerifyRequest,
                     VerifyResponse, WeightsJSON)


def thread_cap() -> int:
    raw = os.environ.get("GRAPHSTAR_THREADS", "")
    if not raw:
        return 1
    try:
        value = int(raw)
    except ValueError:
        return 1
    return max(1, value)


def create_app() -> FastAPI:
    app = FastAPI(title="graphstar",
                  description="Exact combinatorial calculus of admissible "
                              "graphs for star-products")

    @app.exception_handler(ServiceError)
    async def service_error_handler(_: Request, exc: ServiceError):
        return JSONResponse(status_code=exc.status_code,
                            content={"detail": str(exc)})

    @app.get("/health", response_model=HealthResponse)
    def health():
        return handlers.health()

    @app.post("/graphs/enumerate", response_model=EnumerateResponse)
    def enumerate_graphs(req: EnumerateRequest):
        return handlers.enumerate_graphs(req)

    @app.post("/graphs/canonicalize", response_model=CanonicalizeResponse)
    def canonicalize_graph(req: CanonicalizeRequest):
        return handlers.canonicalize_graph(req)

    @app.post("/algebra/compose", response_model=VectorResponse)
    def compose_graphs(req: ComposeRequest):
        return handlers.compose_graphs(req)

    @app.post("/algebra/coproduct", response_model=TensorResponse)
    def coproduct_graph(req: CoproductRequest):
        return handlers.coproduct_graph(req)

    @app.post("/algebra/antipode", response_model=AntipodeResponse)
    def antipode_graph(req: AntipodeRequest):
        return handlers.antipode_graph(req)

    @app.post("/algebra/merge", response_model=VectorResponse)
    def merge_graph(req: MergeRequest):
        return handlers.merge_graph(req)

    @app.post("/weights/solve", response_model=WeightsJSON)
    def solve(req: SolveRequest):
        return handlers.solve(req)

    @app.post("/star", response_model=StarResponse)
    def star(req: StarRequest):
        return handlers.star(req)

    @app.post("/verify", response_model=VerifyResponse)
    def verify(req: VerifyRequest):
        return handlers.verify(req, threads=thread_cap())

    return app


app = create_app()
