"""FastAPI application exposing the inference operations.

Run with::

    uvicorn weibull_records.service.app:app

Domain errors from the core package map to HTTP 400; malformed payloads
are rejected by pydantic with the usual 422.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import WeibullRecordsError
from . import handlers, schemas as sm


def create_app() -> FastAPI:
    app = FastAPI(
        title="weibull-records",
        version=__version__,
        description="Inference on Weibull parameters from upper record values.",
    )

    @app.exception_handler(WeibullRecordsError)
    async def _domain_error(request: Request, exc: WeibullRecordsError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.get("/health", response_model=sm.HealthResponse)
    def health():
        return sm.HealthResponse(status="ok", version=__version__)

    @app.post("/records/extract", response_model=sm.ExtractResponse)
    def extract(req: sm.ExtractRequest):
        return handlers.handle_extract(req)

    @app.post("/estimate", response_model=sm.FitResponse)
    def estimate(req: sm.RecordsPayload):
        return handlers.handle_fit(req)

    @app.post("/shape/interval", response_model=sm.IntervalResponse)
    def shape_interval(req: sm.ShapeIntervalRequest):
        return handlers.handle_shape_interval(req)

    @app.post("/shape/test", response_model=sm.ShapeTestResponse)
    def shape_test(req: sm.ShapeTestRequest):
        return handlers.handle_shape_test(req)

    @app.post("/scale/interval", response_model=sm.IntervalResponse)
    def scale_interval(req: sm.ScaleIntervalRequest):
        return handlers.handle_scale_interval(req)

    @app.post("/scale/test", response_model=sm.ScaleTestResponse)
    def scale_test(req: sm.ScaleTestRequest):
        return handlers.handle_scale_test(req)

    @app.post("/region/bounds", response_model=sm.RegionResponse)
    def region_bounds(req: sm.RegionRequest):
        return handlers.handle_region(req)

    @app.post("/region/area", response_model=sm.AreaResponse)
    def region_area(req: sm.AreaRequest):
        return handlers.handle_area(req)

    @app.post("/region/boundary", response_model=sm.BoundaryResponse)
    def region_boundary(req: sm.BoundaryRequest):
        return handlers.handle_boundary(req)

    @app.post("/simulate", response_model=sm.SimulationResponse)
    def simulate(req: sm.SimulateRequest):
        # synchronous by design; scale reps/M to taste for interactive use
        return handlers.handle_simulate(req)

    return app


app = create_app()
