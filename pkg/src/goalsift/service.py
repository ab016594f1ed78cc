"""HTTP session service: live dialogs over named catalogs so a human (or
the chat UI) can play the answering side."""
from __future__ import annotations

import threading
import time
import uuid
from dataclasses import dataclass, field
from typing import Any

from fastapi import FastAPI, HTTPException, Response
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from .belief import (
    DSState,
    EmptyGoalSetError,
    Observation,
    exact_update,
    init_state,
    soft_update,
    state_entropy,
)
from .catalog import Catalog
from .dialog import (
    SessionConfig,
    TerminalStatus,
    check_termination,
    question_text,
    returned_goals,
)
from .presets import default_catalog, demo_catalog
from .strategy import Strategy, informative_attributes, parse_strategy

API_VERSION = 1
DEFAULT_IDLE_SECONDS = 30 * 60
DEFAULT_TOP_K = 10


@dataclass
class SessionHandle:
    session_id: str
    catalog_name: str
    catalog: Catalog
    cfg: SessionConfig
    strategy: Strategy
    state: DSState
    expires_at: float
    idle_seconds: float
    pending_attr: int | None = None
    status: TerminalStatus | None = None
    final_goals: tuple[int, ...] = ()
    turn_log: list[dict[str, Any]] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)

    def touch(self) -> None:
        self.expires_at = time.monotonic() + self.idle_seconds

    @property
    def max_turns(self) -> int:
        return self.cfg.max_turns or self.catalog.num_attributes


class CreateSessionRequest(BaseModel):
    catalog: str = "default"
    strategy: str = "emdm"
    mode: str = "ideal"
    theta: float = 0.8
    wildcard: bool = True
    max_turns: int | None = None


class CandidateBody(BaseModel):
    value: str
    confidence: float


class AnswerRequest(BaseModel):
    value: str | None = None
    confidence: float = Field(default=1.0, gt=0.0, le=1.0)
    candidates: list[CandidateBody] | None = None
    unknown: bool = False


def _snapshot(handle: SessionHandle, top_k: int = DEFAULT_TOP_K) -> dict[str, Any]:
    state = handle.state
    cat = handle.catalog
    goals = [
        {"goal_id": gid, "label": cat.labels[gid], "probability": round(p, 12)}
        for gid, p in state.top_goals(top_k)
    ]
    attrs = [
        {"attribute": a, "name": cat.schema.names[a], "entropy": round(h, 12)}
        for a, h in informative_attributes(state, include_asked=True)
    ]
    return {
        "turn": state.turn,
        "entropy": round(state_entropy(state), 12),
        "support_size": state.support_size,
        "asked": sorted(state.asked),
        "top_goals": goals,
        "attribute_entropies": attrs,
    }


def _question_payload(handle: SessionHandle) -> dict[str, Any] | None:
    if handle.pending_attr is None:
        return None
    attr = handle.pending_attr
    return {
        "attribute": attr,
        "name": handle.catalog.schema.names[attr],
        "text": question_text(handle.catalog, attr),
    }


def _terminal_payload(handle: SessionHandle) -> dict[str, Any] | None:
    if handle.status is None:
        return None
    cat = handle.catalog
    return {
        "status": handle.status.value,
        "returned_goals": [
            {"goal_id": g, "label": cat.labels[g]} for g in handle.final_goals
        ],
    }


def _session_body(handle: SessionHandle) -> dict[str, Any]:
    return {
        "version": API_VERSION,
        "session_id": handle.session_id,
        "catalog": handle.catalog_name,
        "mode": handle.cfg.mode,
        "finished": handle.status is not None,
        "question": _question_payload(handle),
        "result": _terminal_payload(handle),
        "snapshot": _snapshot(handle),
    }


def _advance(handle: SessionHandle) -> None:
    """Pick the next question, or settle the terminal outcome."""
    status = check_termination(handle.state, handle.cfg)
    if status is None and handle.state.turn >= handle.max_turns:
        status = TerminalStatus.ATTRIBUTES_EXHAUSTED
    if status is None:
        attr = handle.strategy.next_question(handle.state)
        if attr is None:
            status = TerminalStatus.ATTRIBUTES_EXHAUSTED
        else:
            handle.pending_attr = attr
            return
    handle.pending_attr = None
    handle.status = status
    handle.final_goals = returned_goals(handle.state, status, handle.cfg.mode)


def create_app(
    catalogs: dict[str, Catalog] | None = None,
    idle_seconds: float = DEFAULT_IDLE_SECONDS,
) -> FastAPI:
    """Build the service; catalogs default to the synthetic desk-scale
    catalog plus the four-goal demo."""
    if catalogs is None:
        catalogs = {"default": default_catalog(), "f1": demo_catalog()}
    app = FastAPI(title="goalsift", version=str(API_VERSION))
    # the chat UI is served from a different origin than the API
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    sessions: dict[str, SessionHandle] = {}
    registry_lock = threading.Lock()

    def _get_handle(session_id: str) -> SessionHandle:
        with registry_lock:
            handle = sessions.get(session_id)
            if handle is not None and time.monotonic() > handle.expires_at:
                del sessions[session_id]
                handle = None
        if handle is None:
            raise HTTPException(status_code=404, detail="unknown or expired session")
        return handle

    @app.get("/health")
    def health() -> dict[str, Any]:
        return {"version": API_VERSION, "status": "ok", "catalogs": sorted(catalogs)}

    @app.get("/catalogs")
    def list_catalogs() -> dict[str, Any]:
        return {
            "version": API_VERSION,
            "catalogs": [
                {
                    "name": name,
                    "num_goals": cat.num_goals,
                    "attributes": [
                        {"attribute": a, "name": cat.schema.names[a],
                         "cardinality": cat.schema.cardinality(a)}
                        for a in range(cat.num_attributes)
                    ],
                }
                for name, cat in sorted(catalogs.items())
            ],
        }

    @app.get("/catalogs/{name}/attributes/{attr}/values")
    def attribute_values(name: str, attr: int) -> dict[str, Any]:
        cat = catalogs.get(name)
        if cat is None:
            raise HTTPException(status_code=404, detail=f"unknown catalog {name!r}")
        if not 0 <= attr < cat.num_attributes:
            raise HTTPException(status_code=404, detail=f"no attribute {attr}")
        return {
            "version": API_VERSION,
            "attribute": attr,
            "name": cat.schema.names[attr],
            "values": list(cat.schema.values[attr]),
        }

    @app.post("/sessions", status_code=201)
    def create_session(req: CreateSessionRequest) -> dict[str, Any]:
        cat = catalogs.get(req.catalog)
        if cat is None:
            raise HTTPException(status_code=404, detail=f"unknown catalog {req.catalog!r}")
        try:
            kind = parse_strategy(req.strategy)
            cfg = SessionConfig(strategy=kind, mode=req.mode, theta=req.theta,
                                wildcard=req.wildcard, max_turns=req.max_turns)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        handle = SessionHandle(
            session_id=uuid.uuid4().hex,
            catalog_name=req.catalog,
            catalog=cat,
            cfg=cfg,
            strategy=kind.build(default_seed=0),
            state=init_state(cat),
            expires_at=0.0,
            idle_seconds=idle_seconds,
        )
        _advance(handle)
        handle.touch()
        with registry_lock:
            sessions[handle.session_id] = handle
        return _session_body(handle)

    @app.get("/sessions/{session_id}/question")
    def get_question(session_id: str) -> dict[str, Any]:
        handle = _get_handle(session_id)
        handle.touch()
        return _session_body(handle)

    @app.get("/sessions/{session_id}/state")
    def get_state(session_id: str) -> dict[str, Any]:
        handle = _get_handle(session_id)
        handle.touch()
        body = _session_body(handle)
        body["probabilities"] = {
            str(int(g)): float(handle.state.probs[g]) for g in handle.state.support
        }
        body["transcript"] = list(handle.turn_log)
        return body

    @app.post("/sessions/{session_id}/answer")
    def post_answer(session_id: str, req: AnswerRequest) -> dict[str, Any]:
        handle = _get_handle(session_id)
        if not handle.lock.acquire(blocking=False):
            raise HTTPException(status_code=409, detail="answer already in flight")
        try:
            if handle.status is not None:
                raise HTTPException(status_code=409, detail="session already finished")
            attr = handle.pending_attr
            assert attr is not None
            answer_desc = _apply_answer(handle, attr, req)
            handle.turn_log.append({
                "turn": handle.state.turn,
                "attribute": attr,
                "name": handle.catalog.schema.names[attr],
                "answer": answer_desc,
                "entropy": round(state_entropy(handle.state), 12),
            })
            if handle.status is None:
                _advance(handle)
            handle.touch()
            return _session_body(handle)
        finally:
            handle.lock.release()

    @app.delete("/sessions/{session_id}", status_code=204)
    def delete_session(session_id: str) -> Response:
        with registry_lock:
            sessions.pop(session_id, None)
        return Response(status_code=204)

    return app


def _apply_answer(handle: SessionHandle, attr: int, req: AnswerRequest) -> dict[str, Any]:
    """Advance the belief for one answer body; returns a loggable echo."""
    cat = handle.catalog
    state = handle.state
    if req.unknown:
        handle.state = exact_update(state, attr, None, wildcard=handle.cfg.wildcard)
        return {"unknown": True}
    try:
        if req.candidates is not None:
            resolved = [
                (cat.schema.value_id(attr, c.value), c.confidence)
                for c in req.candidates
            ]
            known = [(v, c) for v, c in resolved if v is not None]
            if not known:
                # nothing matches: a pure confidence drain leaves the
                # distribution unchanged but burns the question
                handle.state = DSState(cat, state.probs, state.asked | {attr},
                                       state.turn + 1)
            else:
                obs = Observation(attr, tuple(known))
                handle.state = soft_update(state, obs)
            return {"candidates": [[c.value, c.confidence] for c in req.candidates]}
        if req.value is None:
            raise HTTPException(status_code=400,
                                detail="answer needs value, candidates, or unknown")
        value_id = cat.schema.value_id(attr, req.value)
        if value_id is None:
            handle.state = DSState(cat, state.probs, state.asked | {attr},
                                   state.turn + 1)
        elif handle.cfg.mode == "ideal" and req.confidence >= 1.0:
            handle.state = exact_update(state, attr, value_id,
                                        wildcard=handle.cfg.wildcard)
        else:
            obs = Observation(attr, ((value_id, req.confidence),))
            handle.state = soft_update(state, obs)
        return {"value": req.value, "confidence": req.confidence}
    except EmptyGoalSetError:
        handle.state = DSState(cat, state.probs, state.asked | {attr},
                               state.turn + 1)
        handle.pending_attr = None
        handle.status = TerminalStatus.EMPTY_GOAL_SET
        handle.final_goals = ()
        return {"value": req.value, "empty": True}
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
