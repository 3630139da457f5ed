"""HTTP + WebSocket front for exploration sessions.

Sessions live in memory; mutations for one session are serialized under a
lock, so subscribers see deltas in strict revision order and reads never
mix revisions. Each websocket message is one mutation's
{"revision": r, "delta": ...}.
"""

from __future__ import annotations

import asyncio
import json
import uuid
from dataclasses import dataclass, field

from fastapi import Body, FastAPI, HTTPException, WebSocket, WebSocketDisconnect
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import Response

from .graph import GraphError
from .session import Session, SessionConfig, canonical_json


@dataclass
class _Handle:
    session: Session
    lock: asyncio.Lock = field(default_factory=asyncio.Lock)
    subscribers: set[asyncio.Queue] = field(default_factory=set)


def _json_response(payload, status_code: int = 200) -> Response:
    return Response(content=canonical_json(payload), status_code=status_code,
                    media_type="application/json")


def create_app() -> FastAPI:
    app = FastAPI(title="fgx scene service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    sessions: dict[str, _Handle] = {}
    app.state.sessions = sessions

    def _get(session_id: str) -> _Handle:
        handle = sessions.get(session_id)
        if handle is None:
            raise HTTPException(status_code=404, detail=f"unknown session {session_id!r}")
        return handle

    @app.post("/sessions", status_code=201)
    async def create_session(payload: dict = Body(...)):
        graph = payload.get("graph")
        if graph is None:
            raise HTTPException(status_code=400, detail="missing 'graph' document")
        document = graph if isinstance(graph, str) else json.dumps(graph)
        try:
            config = SessionConfig.from_dict(payload.get("config"))
            session = Session(document, config)
        except (GraphError, ValueError) as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        session_id = uuid.uuid4().hex
        sessions[session_id] = _Handle(session=session)
        return _json_response({"session": session_id, "snapshot": session.snapshot()},
                              status_code=201)

    @app.get("/sessions/{session_id}/snapshot")
    async def get_snapshot(session_id: str):
        handle = _get(session_id)
        async with handle.lock:
            return _json_response(handle.session.snapshot())

    @app.get("/sessions/{session_id}/brush")
    async def get_brush(session_id: str):
        handle = _get(session_id)
        async with handle.lock:
            return _json_response(handle.session.brush_dict())

    @app.post("/sessions/{session_id}/mutations")
    async def post_mutation(session_id: str, mutation: dict = Body(...)):
        handle = _get(session_id)
        async with handle.lock:
            try:
                message = handle.session.apply(mutation)
            except (GraphError, ValueError) as exc:
                raise HTTPException(status_code=400, detail=str(exc)) from exc
            for queue in handle.subscribers:
                queue.put_nowait(message)
        return _json_response(message)

    @app.websocket("/sessions/{session_id}/stream")
    async def stream(websocket: WebSocket, session_id: str):
        handle = sessions.get(session_id)
        if handle is None:
            await websocket.close(code=4404)
            return
        await websocket.accept()
        queue: asyncio.Queue = asyncio.Queue()
        handle.subscribers.add(queue)

        async def pump():
            while True:
                message = await queue.get()
                await websocket.send_text(canonical_json(message))

        sender = asyncio.create_task(pump())
        try:
            while True:
                await websocket.receive_text()  # inbound traffic is ignored
        except WebSocketDisconnect:
            pass
        finally:
            sender.cancel()
            handle.subscribers.discard(queue)

    return app
