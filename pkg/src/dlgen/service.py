"""HTTP facade over dialog sessions.

Stateless protocol aside from the server-side session table: create a
session, read its view, post actions. The compiled manifest gates which
actions a client may invoke; engine rejections come back as structured
422 payloads and never change the session.
"""
from __future__ import annotations

import secrets
import threading
import time
from dataclasses import dataclass, field
from typing import Any

from fastapi import FastAPI
from fastapi.responses import JSONResponse, Response
from pydantic import BaseModel

from . import dialog
from .errors import EngineError
from .otml import UIManifest, manifest_to_json
from .taxonomy import Dataset

DEFAULT_TTL = 30 * 60.0

# manifest technique -> engine action it unlocks
_ACTION_FOR_TECHNIQUE = {
    "basic_oot": "out_of_turn",
    "generalized_oot": "out_of_turn",
    "what_may_i_say": "vocabulary",
    "collect": "collect",
    "restructure": "restructure",
}
_ALWAYS_ALLOWED = {"navigate", "reset"}


@dataclass
class _Session:
    state: dialog.DialogState
    last_used: float
    lock: threading.Lock = field(default_factory=threading.Lock)


class SessionStore:
    """In-memory session table with idle-time eviction."""

    def __init__(self, ttl: float):
        self.ttl = ttl
        self._table: dict[str, _Session] = {}
        self._lock = threading.Lock()

    def _evict(self, now: float):
        dead = [sid for sid, s in self._table.items() if now - s.last_used > self.ttl]
        for sid in dead:
            del self._table[sid]

    def create(self, state: dialog.DialogState) -> str:
        sid = secrets.token_urlsafe(16)
        with self._lock:
            self._evict(time.monotonic())
            self._table[sid] = _Session(state=state, last_used=time.monotonic())
        return sid

    def get(self, sid: str) -> _Session | None:
        with self._lock:
            now = time.monotonic()
            self._evict(now)
            session = self._table.get(sid)
            if session is not None:
                session.last_used = now
            return session


class _CreateBody(BaseModel):
    mode: str | None = None


class _ActionBody(BaseModel):
    action: str
    arg: Any = None


def _error(status: int, code: str, detail: str, **extras) -> JSONResponse:
    return JSONResponse(status_code=status,
                        content={"code": code, "detail": detail, **extras})


def create_app(
    ds: Dataset,
    manifest: UIManifest,
    *,
    session_ttl: float = DEFAULT_TTL,
    manifest_bytes: bytes | None = None,
    static_dir: str | None = None,
) -> FastAPI:
    """Build the application for one collection + one compiled manifest.

    ``manifest_bytes``, when given, is served verbatim on GET /manifest so
    clients see exactly the compiled artifact on disk.
    """
    app = FastAPI(title=manifest.title)
    store = SessionStore(session_ttl)
    raw_manifest = manifest_bytes if manifest_bytes is not None \
        else manifest_to_json(manifest).encode("utf-8")
    allowed_actions = _ALWAYS_ALLOWED | {
        _ACTION_FOR_TECHNIQUE[t] for t in manifest.enabled_actions
    }

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    @app.get("/manifest")
    def get_manifest():
        return Response(content=raw_manifest, media_type="application/json")

    @app.post("/sessions", status_code=201)
    def create_session(body: _CreateBody | None = None):
        mode = body.mode if body and body.mode is not None else manifest.mode
        if mode != manifest.mode:
            return _error(409, "UnsupportedMode",
                          f"manifest fixes the mode to '{manifest.mode}'", requested=mode)
        state = dialog.new_dialog(ds, mode)
        sid = store.create(state)
        return {"session_id": sid, "view": dialog.view(state)}

    @app.get("/sessions/{sid}/view")
    def get_view(sid: str):
        session = store.get(sid)
        if session is None:
            return _error(404, "SessionNotFound", f"no session '{sid}'")
        with session.lock:
            return dialog.view(session.state)

    @app.post("/sessions/{sid}/actions")
    def post_action(sid: str, body: _ActionBody):
        session = store.get(sid)
        if session is None:
            return _error(404, "SessionNotFound", f"no session '{sid}'")
        if body.action in dialog.ACTIONS and body.action not in allowed_actions:
            return _error(403, "ActionNotEnabled",
                          f"manifest does not enable '{body.action}'")
        with session.lock:
            try:
                new_state, payload = dialog.apply_action(session.state, body.action, body.arg)
            except EngineError as exc:
                return _error(422, exc.code, exc.detail, **exc.extras)
            session.state = new_state
            return payload

    if static_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
