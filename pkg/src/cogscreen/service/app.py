"""HTTP/JSON API binding the game engine to the two predictors.

All game state is server-authoritative: clicks, timers and phases are
recomputed here from engine events, and a Tick carrying the server clock is
injected ahead of every client event so deadlines are enforced regardless of
what the client claims.
"""

from __future__ import annotations

import base64
import binascii
import hashlib
from pathlib import Path
from typing import Literal, Optional

from fastapi import FastAPI, HTTPException
from fastapi.responses import FileResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from .. import __version__
from ..game import (
    FaceSubmitted,
    Flip,
    FlipRejectedError,
    HealthSubmitted,
    InvalidPhaseError,
    Phase,
    SessionTerminalError,
    Tick,
    session_view,
)
from ..health.pipeline import AgeOutOfRangeError, HealthRecord
from ..models import predict_face, predict_health
from .decisions import DecisionNotReadyError, decision_flow
from .registry import ModelRegistry, SessionStore


class CreateSessionRequest(BaseModel):
    level: Literal[1, 2] = 1
    seed: Optional[int] = None  # fixed seed for reproducible test sessions


class EventRequest(BaseModel):
    kind: Literal["flip", "tick"]
    card_index: Optional[int] = None


class HealthRequest(BaseModel):
    age: float
    blood_oxygen: float
    heart_rate: float
    body_temp: float
    weight: float
    diabetic: int = Field(ge=0, le=1)


class FaceRequest(BaseModel):
    image_base64: str


def _transition_payload(record):
    if not record.changed:
        return None
    return {
        "from_phase": record.from_phase.value,
        "to_phase": record.to_phase.value,
        "reason": record.reason,
    }


def create_app(registry: ModelRegistry, store: SessionStore,
               static_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="cogscreen", version=__version__)

    def get_entry(session_id):
        try:
            return store.get(session_id)
        except KeyError:
            raise HTTPException(status_code=404, detail="unknown session") from None

    def advance_clock(entry):
        """Inject the server clock so deadlines fire before the client event."""
        session = entry.session
        if session.phase in (Phase.COMPLETED, Phase.FAILED):
            return None
        return session.apply(Tick(store.clock()))

    @app.get("/api/healthz")
    def healthz():
        return {
            "status": "ok",
            "version": __version__,
            "models": dict(registry.checksums),
        }

    @app.post("/api/sessions", status_code=201)
    def create_session_endpoint(body: Optional[CreateSessionRequest] = None):
        body = body or CreateSessionRequest()
        session_id, entry = store.create(start_level=body.level, seed=body.seed)
        with entry.lock:
            return {"session_id": session_id, "view": session_view(entry.session)}

    @app.get("/api/sessions/{session_id}")
    def get_session(session_id: str):
        entry = get_entry(session_id)
        with entry.lock:
            advance = None
            try:
                advance = advance_clock(entry)
            except SessionTerminalError:
                pass
            return {
                "view": session_view(entry.session),
                "transition": _transition_payload(advance) if advance else None,
            }

    @app.post("/api/sessions/{session_id}/events")
    def post_event(session_id: str, body: EventRequest):
        entry = get_entry(session_id)
        with entry.lock:
            session = entry.session
            try:
                record = advance_clock(entry)
                if body.kind == "flip":
                    if body.card_index is None:
                        raise HTTPException(
                            status_code=400,
                            detail={"field": "card_index", "error": "required for flip"},
                        )
                    # the injected tick may already have changed the phase;
                    # surface that instead of a rejected flip
                    if record is None or not record.changed:
                        record = session.apply(Flip(body.card_index))
            except SessionTerminalError as exc:
                raise HTTPException(status_code=409, detail=str(exc)) from exc
            except FlipRejectedError as exc:
                raise HTTPException(
                    status_code=409,
                    detail={"rejected": exc.reason, "view": session_view(session)},
                ) from exc
            return {
                "view": session_view(session),
                "transition": _transition_payload(record) if record else None,
            }

    @app.post("/api/sessions/{session_id}/health")
    def post_health(session_id: str, body: HealthRequest):
        entry = get_entry(session_id)
        with entry.lock:
            session = entry.session
            fingerprint = hashlib.sha256(
                repr(sorted(body.model_dump().items())).encode()
            ).hexdigest()
            if entry.health_memo and entry.health_memo[0] == fingerprint:
                return entry.health_memo[1]
            try:
                advance_clock(entry)
            except SessionTerminalError as exc:
                raise HTTPException(status_code=409, detail=str(exc)) from exc
            if session.phase != Phase.AWAITING_HEALTH_INPUT:
                raise HTTPException(
                    status_code=409,
                    detail=f"health submission not allowed while {session.phase.value}",
                )
            try:
                record = HealthRecord(
                    age=body.age,
                    blood_oxygen=body.blood_oxygen,
                    heart_rate=body.heart_rate,
                    body_temp=body.body_temp,
                    weight=body.weight,
                    diabetic=body.diabetic,
                )
                result = predict_health(registry.mod1d, record, registry.scaler)
            except AgeOutOfRangeError as exc:
                raise HTTPException(
                    status_code=400, detail={"field": "age", "error": str(exc)}
                ) from exc
            except ValueError as exc:
                raise HTTPException(status_code=400, detail=str(exc)) from exc
            session.apply(HealthSubmitted(prediction=result.binary, score=result.score))
            response = {
                "score": result.score,
                "label": result.label,
                "view": session_view(session),
            }
            entry.health_memo = (fingerprint, response)
            return response

    @app.post("/api/sessions/{session_id}/face")
    def post_face(session_id: str, body: FaceRequest):
        entry = get_entry(session_id)
        with entry.lock:
            session = entry.session
            fingerprint = hashlib.sha256(body.image_base64.encode()).hexdigest()
            if entry.face_memo and entry.face_memo[0] == fingerprint:
                return entry.face_memo[1]
            try:
                advance_clock(entry)
            except SessionTerminalError as exc:
                raise HTTPException(status_code=409, detail=str(exc)) from exc
            if session.phase != Phase.AWAITING_FACE_CAPTURE:
                raise HTTPException(
                    status_code=409,
                    detail=f"face submission not allowed while {session.phase.value}",
                )
            try:
                image_bytes = base64.b64decode(body.image_base64, validate=True)
            except (binascii.Error, ValueError) as exc:
                raise HTTPException(
                    status_code=400,
                    detail={"field": "image_base64", "error": "invalid base64 payload"},
                ) from exc
            try:
                result = predict_face(registry.mod2d, image_bytes)
            except ValueError as exc:
                raise HTTPException(
                    status_code=400, detail={"field": "image_base64", "error": str(exc)}
                ) from exc
            session.apply(FaceSubmitted(prediction=result.binary, score=result.score))
            response = {
                "score": result.score,
                "label": result.label,
                "view": session_view(session),
            }
            entry.face_memo = (fingerprint, response)
            return response

    @app.get("/api/sessions/{session_id}/decision")
    def get_decision(session_id: str):
        entry = get_entry(session_id)
        with entry.lock:
            try:
                advance_clock(entry)
            except SessionTerminalError:
                pass
            try:
                return decision_flow(entry.session)
            except DecisionNotReadyError as exc:
                raise HTTPException(status_code=404, detail=str(exc)) from exc

    if static_dir is not None and Path(static_dir).is_dir():
        index = Path(static_dir) / "index.html"

        @app.get("/")
        def root():
            return FileResponse(index)

        app.mount("/", StaticFiles(directory=static_dir), name="static")

    return app
