"""HTTP JSON API over the fiber cache, served by the CLI ``serve`` command."""

from __future__ import annotations

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware

from .errors import NonPositiveSlopeError
from .jsonio import canonical_json, fiber_payload, line_payload
from .lines import Line
from .query_cache import FiberCache
from .rationals import format_vector, parse_rational


def _json(payload: dict, status: int = 200) -> Response:
    return Response(
        content=canonical_json(payload),
        status_code=status,
        media_type="application/json",
    )


def _error(status: int, error: str, detail: str) -> Response:
    return _json({"error": error, "detail": detail}, status=status)


def _parse_vector_field(body: dict, key: str, n: int):
    raw = body.get(key)
    if not isinstance(raw, list) or not all(isinstance(x, str) for x in raw):
        raise ValueError(f"{key} must be a list of rational strings")
    if len(raw) != n:
        raise ValueError(f"{key} must have {n} coordinates, got {len(raw)}")
    return tuple(parse_rational(x) for x in raw)


def build_app(cache: FiberCache, snapshot_path: str | None = None) -> FastAPI:
    app = FastAPI(title="morsefiber", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    engine = cache.engine

    @app.get("/api/v1/summary")
    def summary():
        return _json(engine.summary())

    @app.get("/api/v1/critical-values")
    def critical_values():
        base = sorted(engine.cbar.base)
        return _json(
            {
                "C": [format_vector(g) for g in base],
                "Cbar": [format_vector(g) for g in engine.cbar],
            }
        )

    @app.post("/api/v1/fiber")
    async def fiber(request: Request):
        try:
            body = await request.json()
        except Exception:
            return _error(400, "malformed request", "body is not valid JSON")
        if not isinstance(body, dict):
            return _error(400, "malformed request", "body must be a JSON object")
        try:
            base = _parse_vector_field(body, "base", engine.filtration.n)
            direction = _parse_vector_field(body, "dir", engine.filtration.n)
        except ValueError as exc:
            return _error(400, "malformed line", str(exc))
        degrees = body.get("degrees")
        if degrees is not None and (
            not isinstance(degrees, list)
            or not all(isinstance(d, int) and d >= 0 for d in degrees)
        ):
            return _error(400, "malformed request", "degrees must be non-negative integers")
        try:
            line = Line(base=base, direction=direction)
        except NonPositiveSlopeError as exc:
            return _error(422, "non-positive slope", str(exc))
        result = cache.query(line, degrees)
        payload = fiber_payload(result.class_id, result.diagram, cache.stops_for(line))
        payload["cacheStatus"] = result.cache_status
        payload["timingMicros"] = result.timing_micros
        return _json(payload)

    @app.get("/api/v1/classes")
    def classes():
        out = []
        for entry in sorted(cache.entries.values(), key=lambda e: e.class_id):
            out.append(
                {
                    "classId": entry.class_id,
                    "representative": line_payload(entry.representative),
                    "hitCount": entry.hit_count,
                }
            )
        return _json(out)

    if snapshot_path:

        @app.on_event("shutdown")
        def _save_snapshot():
            cache.save_snapshot(snapshot_path)

    return app
