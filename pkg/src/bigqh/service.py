"""Read-only HTTP service exposing the pipeline to scripts and the explorer UI.

Endpoints (all GET, stateless, cacheable):

    /api/meta       basis, bulk cycles, defaults
    /api/spectrum   ?cycle=1,1&t_re=0.5&t_im=1&q_re=1&q_im=0&alpha=2
    /api/sweep      ?cycle=1,1&path=0.5+1i;1+2i&q_re=1&q_im=0&alpha=2

Malformed query values return 400; well-formed but mathematically invalid
parameters (negative alpha, unknown cycle, nonzero t without a cycle) return
422.  Computation failures also map to 422 with detail; 500 is never the
expected path.  Query parameters are parsed by the same helpers as the CLI
and responses use the same canonical JSON serializer, so identical requests
produce byte-identical bodies in both front ends.
"""

from __future__ import annotations

import math
from typing import Optional

from fastapi import FastAPI, HTTPException, Request, Response
from fastapi.middleware.cors import CORSMiddleware

from .cli import parse_complex, parse_path, render_json
from .dubrovin import TruncationExceedsPotentialError
from .potential import WDVVSolveError
from .session import DEFAULT_ALPHA, Session, shared_session
from .spectral import ConvergenceFailure

MAX_ALPHA = 4          # keeps on-demand exact precomputation interactive
MAX_PATH_POINTS = 1000


def _json_response(payload) -> Response:
    return Response(content=render_json(payload), media_type="application/json")


def _parse_float(name: str, raw: Optional[str], default: float) -> float:
    if raw is None or raw == "":
        return default
    try:
        value = float(raw)
    except ValueError:
        raise HTTPException(status_code=400, detail=f"malformed number for {name!r}: {raw!r}")
    if not math.isfinite(value):
        raise HTTPException(status_code=422, detail=f"{name} must be finite")
    return value


def _parse_alpha(raw: Optional[str]) -> int:
    if raw is None or raw == "":
        return DEFAULT_ALPHA
    try:
        alpha = int(raw)
    except ValueError:
        raise HTTPException(status_code=400, detail=f"malformed integer for 'alpha': {raw!r}")
    if alpha < 0:
        raise HTTPException(status_code=422, detail="alpha must be >= 0")
    if alpha > MAX_ALPHA:
        raise HTTPException(status_code=422, detail=f"alpha must be <= {MAX_ALPHA}")
    return alpha


def _warm_up(ses: Session) -> None:
    """Do all default-parameter exact work up front so request handling is
    numeric specialization only."""
    ses.origin_matrix(DEFAULT_ALPHA)
    for cycle in ("2,0", "1,1", "2,1", "2,2"):
        ses.matrix(DEFAULT_ALPHA, cycle)
        ses.classify(cycle, DEFAULT_ALPHA)


def create_app(session: Optional[Session] = None, static_dir: Optional[str] = None,
               warm_up: bool = True) -> FastAPI:
    ses = session if session is not None else shared_session()
    if warm_up:
        _warm_up(ses)
    app = FastAPI(title="bigqh explorer service", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origin_regex=r"^https?://(localhost|127\.0\.0\.1)(:\d+)?$",
        allow_methods=["GET"],
        allow_headers=["*"],
    )

    @app.get("/api/meta")
    def meta() -> Response:
        payload = ses.meta()
        payload["limits"] = {"alpha_max": MAX_ALPHA, "path_points_max": MAX_PATH_POINTS}
        return _json_response(payload)

    @app.get("/api/spectrum")
    def spectrum(request: Request) -> Response:
        qp = request.query_params
        alpha = _parse_alpha(qp.get("alpha"))
        t = complex(_parse_float("t_re", qp.get("t_re"), 0.0),
                    _parse_float("t_im", qp.get("t_im"), 0.0))
        q = complex(_parse_float("q_re", qp.get("q_re"), 1.0),
                    _parse_float("q_im", qp.get("q_im"), 0.0))
        cycle = qp.get("cycle") or None
        try:
            sample = ses.spectrum(cycle, t, q, alpha)
        except (ValueError, WDVVSolveError, TruncationExceedsPotentialError,
                ConvergenceFailure) as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        return _json_response(sample.to_json())

    @app.get("/api/sweep")
    def sweep(request: Request) -> Response:
        qp = request.query_params
        alpha = _parse_alpha(qp.get("alpha"))
        q = complex(_parse_float("q_re", qp.get("q_re"), 1.0),
                    _parse_float("q_im", qp.get("q_im"), 0.0))
        raw_path = qp.get("path")
        if not raw_path:
            raise HTTPException(status_code=422, detail="a non-empty 'path' is required")
        try:
            path = parse_path(raw_path)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=f"malformed path: {exc}")
        if len(path) > MAX_PATH_POINTS:
            raise HTTPException(status_code=422,
                                detail=f"path longer than {MAX_PATH_POINTS} points")
        cycle = qp.get("cycle")
        if not cycle:
            raise HTTPException(status_code=422, detail="a bulk 'cycle' is required")
        try:
            result = ses.sweep(cycle, path, q, alpha)
        except (ValueError, WDVVSolveError, TruncationExceedsPotentialError,
                ConvergenceFailure) as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        return _json_response(result.to_json())

    if static_dir:
        from fastapi.staticfiles import StaticFiles
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="explorer")

    return app


def serve(host: str = "127.0.0.1", port: int = 8642,
          session: Optional[Session] = None, static_dir: Optional[str] = None) -> None:
    import uvicorn
    app = create_app(session=session, static_dir=static_dir)
    uvicorn.run(app, host=host, port=port, log_level="warning")
