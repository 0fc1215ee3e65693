"""HTTP service exposing collections and browsing sessions as JSON.

The server adds no browsing semantics of its own: every payload mirrors the
session module's state exactly. Sessions are server-held, keyed by
unguessable tokens, and expire after a configurable idle period. Collection
mutation endpoints exist for benchmark parity but are disabled unless the
server is started with mutation enabled.
"""

from __future__ import annotations

import secrets
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

from fastapi import Body, FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from .engines import AutomatonEngine
from .errors import (
    AtRoot,
    DuplicateResource,
    InfeasibleTag,
    StaleSession,
    TagBrowseError,
    UnknownResource,
)
from .model import Collection, cloud_entries
from .session import Session
from .storage import collection_from_document

DEFAULT_SESSION_TTL = 30 * 60.0
DEFAULT_CLOUD_CAP = 500


@dataclass
class ServerConfig:
    allow_mutation: bool = False
    session_ttl: float = DEFAULT_SESSION_TTL
    cloud_cap: int = DEFAULT_CLOUD_CAP
    ui_dir: Optional[Path] = None


@dataclass
class _SessionEntry:
    session: Optional[Session]  # None for sessions over empty collections
    collection_id: str
    last_activity: float = field(default_factory=time.monotonic)


class _Store:
    """Collections, their shared engines, and live sessions."""

    def __init__(self, config: ServerConfig):
        self.config = config
        self.lock = threading.RLock()
        self.collections: dict[str, AutomatonEngine] = {}
        self.sessions: dict[str, _SessionEntry] = {}

    def add_collection(self, collection: Collection) -> str:
        cid = f"c{len(self.collections)}-{secrets.token_urlsafe(6)}"
        self.collections[cid] = AutomatonEngine(collection)
        return cid

    def engine(self, cid: str) -> AutomatonEngine:
        if cid not in self.collections:
            raise KeyError(cid)
        return self.collections[cid]

    def open_session(self, cid: str) -> tuple[str, _SessionEntry]:
        engine = self.engine(cid)
        session = Session(engine) if len(engine.collection) > 0 else None
        sid = secrets.token_urlsafe(16)  # 128 bits
        entry = _SessionEntry(session=session, collection_id=cid)
        self.sessions[sid] = entry
        return sid, entry

    def session(self, sid: str) -> _SessionEntry:
        entry = self.sessions.get(sid)
        if entry is None:
            raise KeyError(sid)
        now = time.monotonic()
        if now - entry.last_activity > self.config.session_ttl:
            del self.sessions[sid]
            raise TimeoutError(sid)
        entry.last_activity = now
        return entry


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse({"error_code": code, "message": message}, status_code=status)


def _session_payload(
    sid: str, entry: _SessionEntry, store: _Store, want_all: bool
) -> dict[str, Any]:
    if entry.session is None:
        payload: dict[str, Any] = {
            "session_id": sid,
            "breadcrumb": [],
            "resources": [],
            "cloud": [],
            "terminal": True,
            "truncated": False,
        }
        return payload
    s = entry.session
    entries = s.cloud_entries()
    cap = store.config.cloud_cap
    truncated = not want_all and len(entries) > cap
    if truncated:
        entries = entries[:cap]
    return {
        "session_id": sid,
        "breadcrumb": list(s.breadcrumb),
        "resources": s.engine.collection.in_insertion_order(s.resources),
        "cloud": [{"tag": t, "count": c} for t, c in entries],
        "terminal": s.terminal,
        "truncated": truncated,
    }


def create_app(config: Optional[ServerConfig] = None) -> FastAPI:
    config = config or ServerConfig()
    app = FastAPI(title="tagbrowse", version="0.1.0")
    store = _Store(config)
    app.state.store = store

    def want_all(request: Request) -> bool:
        return request.query_params.get("all", "").lower() in {"1", "true", "yes"}

    @app.exception_handler(TagBrowseError)
    async def _domain_error(request: Request, exc: TagBrowseError):
        status_by_type = {
            InfeasibleTag: 409,
            AtRoot: 409,
            StaleSession: 410,
            DuplicateResource: 409,
            UnknownResource: 404,
        }
        status = status_by_type.get(type(exc), 400)
        return _error(status, exc.code, str(exc))

    @app.exception_handler(RequestValidationError)
    async def _invalid_body(request: Request, exc: RequestValidationError):
        return _error(400, "parse_error", "request body is not valid JSON")

    @app.post("/collections", status_code=201)
    def create_collection(document: Any = Body(None)):
        try:
            collection = collection_from_document(document)
        except TagBrowseError as exc:
            # Any defect in the document is a client error, duplicates included.
            return _error(400, exc.code, str(exc))
        with store.lock:
            cid = store.add_collection(collection)
        return {"collection_id": cid}

    @app.get("/collections")
    def list_collections():
        with store.lock:
            return {
                "collections": [
                    {"collection_id": cid, "n_resources": len(engine.collection)}
                    for cid, engine in store.collections.items()
                ]
            }

    @app.post("/collections/{cid}/sessions", status_code=201)
    def open_session(cid: str, request: Request):
        with store.lock:
            try:
                sid, entry = store.open_session(cid)
            except KeyError:
                return _error(404, "unknown_collection", f"no collection {cid!r}")
            return _session_payload(sid, entry, store, want_all(request))

    def _with_session(sid: str):
        try:
            return store.session(sid), None
        except KeyError:
            return None, _error(404, "unknown_session", f"no session {sid!r}")
        except TimeoutError:
            return None, _error(410, "session_expired", f"session {sid!r} expired")

    @app.post("/sessions/{sid}/select")
    def select(sid: str, body: dict, request: Request):
        tag = body.get("tag") if isinstance(body, dict) else None
        if not isinstance(tag, str):
            return _error(400, "bad_request", "body must be an object with a 'tag' string")
        with store.lock:
            entry, err = _with_session(sid)
            if err is not None:
                return err
            if entry.session is None:
                raise InfeasibleTag(tag)
            entry.session.select_tag(tag)
            return _session_payload(sid, entry, store, want_all(request))

    @app.post("/sessions/{sid}/back")
    def back(sid: str, request: Request):
        with store.lock:
            entry, err = _with_session(sid)
            if err is not None:
                return err
            if entry.session is None:
                raise AtRoot("already at the initial state")
            entry.session.back()
            return _session_payload(sid, entry, store, want_all(request))

    @app.post("/sessions/{sid}/reset")
    def reset(sid: str, request: Request):
        with store.lock:
            entry, err = _with_session(sid)
            if err is not None:
                return err
            if entry.session is not None:
                entry.session.reset()
            return _session_payload(sid, entry, store, want_all(request))

    @app.get("/sessions/{sid}")
    def session_state(sid: str, request: Request):
        with store.lock:
            entry, err = _with_session(sid)
            if err is not None:
                return err
            return _session_payload(sid, entry, store, want_all(request))

    @app.get("/collections/{cid}/resources/{rid}")
    def resource_detail(cid: str, rid: str):
        with store.lock:
            try:
                engine = store.engine(cid)
            except KeyError:
                return _error(404, "unknown_collection", f"no collection {cid!r}")
            collection = engine.collection
            if rid not in collection:
                return _error(404, "unknown_resource", f"no resource {rid!r}")
            meta = collection.meta(rid)
            return {
                "id": rid,
                "title": meta.title,
                "uri": meta.uri,
                "tags": sorted(collection.tags(rid)),
            }

    @app.post("/collections/{cid}/resources", status_code=201)
    def add_resource(cid: str, body: dict):
        if not config.allow_mutation:
            return _error(403, "mutation_disabled", "mutation endpoints are disabled")
        if not isinstance(body, dict) or not isinstance(body.get("id"), str):
            return _error(400, "bad_request", "body must carry an 'id' string")
        tags = body.get("tags", [])
        if not isinstance(tags, list):
            return _error(400, "bad_request", "'tags' must be a list")
        with store.lock:
            try:
                engine = store.engine(cid)
            except KeyError:
                return _error(404, "unknown_collection", f"no collection {cid!r}")
            engine.insert(
                body["id"], tags, title=body.get("title"), uri=body.get("uri")
            )
            return {"id": body["id"], "n_resources": len(engine.collection)}

    @app.delete("/collections/{cid}/resources/{rid}")
    def delete_resource(cid: str, rid: str):
        if not config.allow_mutation:
            return _error(403, "mutation_disabled", "mutation endpoints are disabled")
        with store.lock:
            try:
                engine = store.engine(cid)
            except KeyError:
                return _error(404, "unknown_collection", f"no collection {cid!r}")
            engine.remove(rid)
            return {"id": rid, "n_resources": len(engine.collection)}

    if config.ui_dir is not None and Path(config.ui_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=str(config.ui_dir), html=True), name="ui")

    return app
