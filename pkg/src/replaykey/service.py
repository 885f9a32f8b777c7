"""HTTP ingestion and analysis service.

Routes (JSON bodies unless noted):

    PUT  /api/v1/videos/{id}            register video meta (duration, genre, title)
    POST /api/v1/events                 append a record or an array of records
    GET  /api/v1/videos/{id}/series     text export, ?kind=raw|smoothed&window_s=
    GET  /api/v1/videos/{id}/keyframes  ranked peaks, ?window_s=&min_value=&max_peaks=
    GET  /api/v1/videos/{id}/thumbnail  rank-1 peak only
    GET  /healthz                       liveness plus store counters

Analysis is recomputed from the stored events on every query; at desk scale
that is cheap and keeps results trivially consistent with the log.
"""

from __future__ import annotations

import os

from fastapi import FastAPI, Query, Request
from fastapi.responses import JSONResponse, PlainTextResponse

from .errors import BadWindow, CueOutOfRange, MalformedRecord, NoPeaks, VideoConflict
from .events import Genre, VideoMeta, event_from_record
from .peaks import KeyframeResult, detect_keyframes
from .series import ActivitySeries, build_replay_series, export_series, smooth
from .store import EventStore

MAX_BATCH_EVENTS = 10_000

DEFAULT_ADDR = "127.0.0.1:8077"
ADDR_ENV = "REPLAYKEY_ADDR"
STORE_ENV = "REPLAYKEY_STORE"


def _error(status: int, message: str, **extra) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": message, **extra})


def _fallback_payload(video_id: str) -> dict:
    return {"video_id": video_id, "thumbnail_time_s": 0, "fallback": True}


def create_app(store: EventStore, cors: bool = False) -> FastAPI:
    app = FastAPI(title="replaykey", docs_url=None, redoc_url=None)
    if cors:
        from fastapi.middleware.cors import CORSMiddleware

        app.add_middleware(
            CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
        )

    def smoothed_series(video_id: str, window_s: int | None) -> tuple[ActivitySeries, VideoMeta]:
        meta = store.get_meta(video_id)
        if meta is None:
            raise LookupError(video_id)
        raw = build_replay_series(store.get_events(video_id), meta)
        return smooth(raw, window_s or meta.default_window_s), meta

    @app.get("/healthz")
    def healthz():
        videos, events = store.counts()
        return {"status": "ok", "videos": videos, "events": events}

    @app.put("/api/v1/videos/{video_id}")
    async def register_video(video_id: str, request: Request):
        try:
            body = await request.json()
        except Exception:
            return _error(400, "body must be a JSON object")
        if not isinstance(body, dict):
            return _error(400, "body must be a JSON object")
        if "video_id" in body and body["video_id"] != video_id:
            return _error(400, "body video_id does not match the path")
        try:
            genre = Genre(body["genre"]) if body.get("genre") is not None else None
            meta = VideoMeta(
                video_id=video_id,
                duration_s=body.get("duration_s"),
                genre=genre,
                title=body.get("title"),
            )
        except ValueError as exc:
            return _error(400, str(exc))
        try:
            created = store.register_video(meta)
        except VideoConflict as exc:
            return _error(409, str(exc))
        return JSONResponse(status_code=201 if created else 200, content={"video_id": video_id})

    @app.post("/api/v1/events")
    async def post_events(request: Request):
        try:
            body = await request.json()
        except Exception:
            return _error(400, "body must be JSON")
        records = body if isinstance(body, list) else [body]
        if len(records) > MAX_BATCH_EVENTS:
            return _error(413, "batch too large", limit=MAX_BATCH_EVENTS)
        events = []
        for index, record in enumerate(records):
            try:
                event = event_from_record(record)
            except MalformedRecord as exc:
                return _error(400, str(exc), index=index)
            meta = store.get_meta(event.video_id)
            if meta is not None and event.cue_time_s > meta.duration_s:
                return _error(400, f"cue_time_s past video duration {meta.duration_s}", index=index)
            events.append(event)
        result = store.append_events(events)
        return JSONResponse(
            status_code=202,
            content={"accepted": result.accepted, "duplicates": result.duplicates},
        )

    @app.get("/api/v1/videos/{video_id}/series")
    def get_series(
        video_id: str,
        kind: str = Query(default="smoothed"),
        window_s: int | None = Query(default=None, ge=1),
    ):
        if kind not in ("raw", "smoothed"):
            return _error(400, "kind must be 'raw' or 'smoothed'")
        meta = store.get_meta(video_id)
        if meta is None:
            return _error(404, f"unknown video {video_id!r}")
        try:
            raw = build_replay_series(store.get_events(video_id), meta)
            series = raw if kind == "raw" else smooth(raw, window_s or meta.default_window_s)
        except CueOutOfRange as exc:
            return _error(409, str(exc))
        except BadWindow as exc:
            return _error(400, str(exc))
        return PlainTextResponse(export_series(series))

    def keyframes_or_fallback(
        video_id: str, window_s: int | None, min_value: float, max_peaks: int | None
    ) -> KeyframeResult | JSONResponse:
        try:
            series, _ = smoothed_series(video_id, window_s)
        except LookupError:
            return _error(404, f"unknown video {video_id!r}")
        except CueOutOfRange as exc:
            return _error(409, str(exc))
        except BadWindow as exc:
            return _error(400, str(exc))
        try:
            return detect_keyframes(series, min_value=min_value, max_peaks=max_peaks)
        except NoPeaks:
            return JSONResponse(status_code=409, content=_fallback_payload(video_id))

    @app.get("/api/v1/videos/{video_id}/keyframes")
    def get_keyframes(
        video_id: str,
        window_s: int | None = Query(default=None, ge=1),
        min_value: float = Query(default=0.0, ge=0.0),
        max_peaks: int | None = Query(default=None, ge=1),
    ):
        result = keyframes_or_fallback(video_id, window_s, min_value, max_peaks)
        if isinstance(result, JSONResponse):
            return result
        return result.to_dict()

    @app.get("/api/v1/videos/{video_id}/thumbnail")
    def get_thumbnail(
        video_id: str,
        window_s: int | None = Query(default=None, ge=1),
        min_value: float = Query(default=0.0, ge=0.0),
    ):
        result = keyframes_or_fallback(video_id, window_s, min_value, max_peaks=1)
        if isinstance(result, JSONResponse):
            return result
        top = result.peaks[0]
        return {
            "video_id": video_id,
            "thumbnail_time_s": result.thumbnail_time_s,
            "peak": {
                "time_s": top.time_s,
                "value": top.value,
                "rank": top.rank,
                "window": list(result.windows[0]),
            },
        }

    return app


def parse_addr(addr: str) -> tuple[str, int]:
    host, _, port = addr.rpartition(":")
    if not host or not port.isdigit():
        raise ValueError(f"address must look like host:port, got {addr!r}")
    return host, int(port)


def run_server(addr: str | None, store_root: str | None, cors: bool = False) -> None:
    """Start the service; CLI flags win over environment overrides."""
    import uvicorn

    addr = addr or os.environ.get(ADDR_ENV) or DEFAULT_ADDR
    store_root = store_root or os.environ.get(STORE_ENV) or "./replaykey-store"
    host, port = parse_addr(addr)
    app = create_app(EventStore(store_root), cors=cors)
    uvicorn.run(app, host=host, port=port, log_level="warning")
