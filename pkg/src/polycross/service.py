"""Local HTTP service exposing curve sampling, tracking and solving.

All payloads are versioned under /v1. Responses are pure functions of the
request body; the only shared state is the solve-concurrency budget.
Malformed input is a 400, a request exceeding the configured limits is a 422,
and an exhausted solve budget is a 409.
"""

from __future__ import annotations

import dataclasses
import json
import math
import threading
from dataclasses import dataclass, field
from typing import Iterator, List, Literal, Optional, Tuple

from fastapi import FastAPI, HTTPException, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, StreamingResponse
from pydantic import BaseModel, Field

from .documents import (
    DocumentError,
    curve_to_document,
    event_to_dict,
    poly_from_document,
    report_to_document,
)
from .geometry import find_crossings, sample_curve
from .poly import Polynomial, cauchy_bound
from .solver import (
    IncompleteError,
    solve_deflation,
    solve_parallel,
    solve_single,
)
from .tracker import TrackerOptions, UnconvergedError, track, trajectory_records


@dataclass(frozen=True)
class ServiceConfig:
    """Bind address, request limits and tracker defaults for the service.

    ui_dir, when set, is a directory of static files (the built explorer
    frontend) mounted at the web root so the UI and the API share an origin.
    """

    host: str = "127.0.0.1"
    port: int = 8777
    max_degree: int = 64
    max_samples: int = 20000
    max_concurrent_solves: int = 4
    tracker: TrackerOptions = field(default_factory=TrackerOptions)
    ui_dir: Optional[str] = None

    def __post_init__(self):
        if self.max_degree < 1 or self.max_samples < 4 or self.max_concurrent_solves < 1:
            raise ValueError("service limits must be positive")


class PolyModel(BaseModel):
    coeffs: List[Tuple[float, float]] = Field(min_length=1)
    label: Optional[str] = None


class OptionsModel(BaseModel):
    """Tracker option overrides accepted on solve and track requests."""

    c: Optional[float] = Field(default=None, gt=0.0, lt=1.0)
    rtol: Optional[float] = Field(default=None, gt=0.0)
    atol: Optional[float] = Field(default=None, gt=0.0)
    max_steps: Optional[int] = Field(default=None, ge=1)
    max_step: Optional[float] = Field(default=None, gt=0.0)
    initial_step: Optional[float] = Field(default=None, gt=0.0)
    root_x_tol: Optional[float] = Field(default=None, gt=0.0)
    residual_tol: Optional[float] = Field(default=None, gt=0.0)
    nu: Optional[float] = None
    r_min: Optional[float] = Field(default=None, gt=0.0)
    r_max_factor: Optional[float] = Field(default=None, gt=1.0)
    newton_iters: Optional[int] = Field(default=None, ge=0)


class CurveRequest(BaseModel):
    poly: PolyModel
    r: float = Field(gt=0.0)
    samples: Optional[int] = Field(default=None, ge=4)


class SolveRequest(BaseModel):
    poly: PolyModel
    mode: Literal["parallel", "deflation", "single"] = "parallel"
    options: Optional[OptionsModel] = None


class StartModel(BaseModel):
    r: float = Field(gt=0.0)
    theta: float


class TrackRequest(BaseModel):
    poly: PolyModel
    start: StartModel
    mode: Literal["rightward", "leftward"] = "rightward"
    options: Optional[OptionsModel] = None


def _merge_options(base: TrackerOptions, overrides: Optional[OptionsModel]) -> TrackerOptions:
    if overrides is None:
        return base
    changes = {k: v for k, v in overrides.model_dump().items() if v is not None}
    return dataclasses.replace(base, **changes) if changes else base


def create_app(config: Optional[ServiceConfig] = None) -> FastAPI:
    cfg = config or ServiceConfig()
    app = FastAPI(title="polycross", version="1")
    solve_budget = threading.Semaphore(cfg.max_concurrent_solves)
    app.state.config = cfg
    app.state.solve_budget = solve_budget

    @app.exception_handler(RequestValidationError)
    def _malformed(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"error": str(exc.errors())})

    @app.exception_handler(DocumentError)
    def _bad_document(request: Request, exc: DocumentError):
        return JSONResponse(status_code=400, content={"error": str(exc)})

    def parse_poly(model: PolyModel) -> Polynomial:
        p = poly_from_document(model.model_dump())
        if p.degree > cfg.max_degree:
            raise HTTPException(
                status_code=422,
                detail=f"degree {p.degree} exceeds the limit {cfg.max_degree}",
            )
        return p

    @app.get("/v1/health")
    def health():
        return {"status": "ok"}

    @app.post("/v1/curve")
    def curve(req: CurveRequest):
        p = parse_poly(req.poly)
        m = req.samples if req.samples is not None else max(64, 16 * p.degree)
        if m > cfg.max_samples:
            raise HTTPException(
                status_code=422,
                detail=f"samples {m} exceeds the limit {cfg.max_samples}",
            )
        points = sample_curve(p, req.r, m)
        crossings = find_crossings(p, req.r)
        return curve_to_document(points, crossings, req.r)

    @app.post("/v1/solve")
    def solve(req: SolveRequest):
        p = parse_poly(req.poly)
        if p.degree < 1:
            raise HTTPException(status_code=422, detail="degree must be >= 1")
        opts = _merge_options(cfg.tracker, req.options)
        if not solve_budget.acquire(blocking=False):
            raise HTTPException(status_code=409, detail="solve budget exhausted")
        try:
            if req.mode == "parallel":
                report = solve_parallel(p, opts, label=req.poly.label)
            elif req.mode == "deflation":
                report = solve_deflation(p, opts, label=req.poly.label)
            else:
                report = solve_single(p, opts, label=req.poly.label)
        except IncompleteError as exc:
            report = exc.report
        except UnconvergedError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        finally:
            solve_budget.release()
        return report_to_document(report)

    @app.post("/v1/track")
    def track_stream(req: TrackRequest):
        p = parse_poly(req.poly)
        if p.degree < 1:
            raise HTTPException(status_code=422, detail="degree must be >= 1")
        opts = _merge_options(cfg.tracker, req.options)
        if req.start.r > opts.r_max_factor * cauchy_bound(p):
            raise HTTPException(
                status_code=422, detail="start radius outside the tracking annulus"
            )
        crossings = [
            c
            for c in find_crossings(p, req.start.r)
            if c.kind.value in ("up", "down")
        ]
        if not crossings:
            raise HTTPException(
                status_code=422, detail="no transversal crossing at this radius"
            )
        two_pi = 2.0 * math.pi
        start = min(
            crossings,
            key=lambda c: min(
                abs(c.theta - req.start.theta % two_pi),
                two_pi - abs(c.theta - req.start.theta % two_pi),
            ),
        )
        traj = track(p, start, req.mode, opts)

        def gen() -> Iterator[str]:
            for rec in trajectory_records(p, traj):
                yield json.dumps(rec) + "\n"
            ev = event_to_dict(traj.event)
            if ev["type"] == "root_found":
                root = complex(*ev["root"])
                ev["residual"] = abs(p.eval(root))
            yield json.dumps({"event": ev}) + "\n"

        return StreamingResponse(gen(), media_type="application/x-ndjson")

    if cfg.ui_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=cfg.ui_dir, html=True), name="ui")

    return app


def serve(config: Optional[ServiceConfig] = None) -> None:
    """Run the service until interrupted (development tool, localhost only)."""
    import uvicorn

    cfg = config or ServiceConfig()
    uvicorn.run(create_app(cfg), host=cfg.host, port=cfg.port, log_level="info")
