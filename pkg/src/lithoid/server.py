"""HTTP JSON API over the engine.

Expressions travel as canonical phrase strings (the start node is null);
errors come back as {code, message} with statuses mirroring the module
errors. One writer lock inside the engine serializes mutations; reads are
plain snapshot lookups.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, Query
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .characterize import SourceDescriptor
from .engine import Engine
from .errors import LithoidError, UnknownNode
from .expressions import linearize, parse
from .hyperindex import START, Start
from .navigation import NavigationSession
from .selection import RankedSource

__all__ = ["create_app"]


class SourceIn(BaseModel):
    source_id: str
    uri: str
    title: str = ""
    media_type: str = "text"
    phrases: list[str] | None = None
    text: str | None = None


class MoveIn(BaseModel):
    target: str | None = None


class ClueIn(BaseModel):
    remove: str | None = None


class FeedbackIn(BaseModel):
    source_id: str
    relevant: bool


class ProfileRecord(BaseModel):
    kind: str
    key: str
    weight: float


class SessionIn(BaseModel):
    profile: list[ProfileRecord] | None = None


def _alt_json(alt) -> dict:
    return {
        "expr": None if isinstance(alt.expr, Start) else linearize(alt.expr),
        "direction": alt.direction,
        "score": alt.score,
        "support": alt.support,
    }


def _session_json(session: NavigationSession) -> dict:
    view = session.to_dict()
    view["alternatives"] = [_alt_json(a) for a in session.alternatives()]
    return view


def _results_json(engine: Engine, results: list[RankedSource]) -> dict:
    out = []
    for rank, r in enumerate(results, 1):
        d = engine.registry.descriptor(r.source_id)
        out.append(
            {
                "rank": rank,
                "source_id": r.source_id,
                "uri": d.uri,
                "title": d.title,
                "score": r.score,
                "contained_count": r.contained_count,
                "matched": [
                    {"clue": linearize(m.clue), "phrase": linearize(m.phrase), "kind": m.kind}
                    for m in r.matched
                ],
            }
        )
    return {"results": out}


def create_app(engine: Engine, ui_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="lithoid", version="0.1.0")
    grammar = engine.config.grammar

    @app.exception_handler(LithoidError)
    async def _lithoid_error(request, exc: LithoidError):
        return JSONResponse(
            status_code=exc.http_status,
            content={"code": exc.code, "message": str(exc)},
        )

    @app.get("/healthz")
    def healthz():
        return {
            "status": "ok",
            "sources": len(engine.registry),
            "nodes": len(engine.lithoid),
        }

    # -- sources -------------------------------------------------------

    @app.post("/sources", status_code=201)
    def register_source(body: SourceIn):
        try:
            descriptor = SourceDescriptor(body.source_id, body.uri, body.title, body.media_type)
        except ValueError as exc:
            return JSONResponse(status_code=400, content={"code": "InvalidSource", "message": str(exc)})
        char = engine.register_source(descriptor, body.phrases, body.text)
        return {
            "source_id": char.source_id,
            "provenance": char.provenance,
            "phrases": sorted(linearize(e) for e in char.phrases),
        }

    @app.delete("/sources/{source_id}")
    def remove_source(source_id: str):
        engine.remove_source(source_id)
        return {"removed": source_id}

    # -- hyperindex ------------------------------------------------------

    @app.get("/hyperindex/start")
    def hyperindex_start():
        nodes = engine.lithoid.start_node()
        return {
            "alternatives": [
                {"expr": n.phrase, "direction": "refine", "score": float(n.support), "support": n.support}
                for n in nodes
            ]
        }

    @app.get("/hyperindex/node")
    def hyperindex_node(expr: str = Query(...)):
        focus = parse(expr, grammar)
        node = engine.lithoid.lookup(focus)
        if node is None:
            raise UnknownNode(f"no node {linearize(focus)!r}")
        refinements = engine.lithoid.refinements(focus)
        beams = engine.lithoid.beam_down(focus)
        return {
            "node": {
                "expr": node.phrase,
                "support": node.support,
                "postings": sorted(node.postings),
            },
            "refinements": [
                {"expr": n.phrase, "score": float(n.support), "support": n.support}
                for n in refinements
            ],
            "beam_downs": [
                {"expr": None, "score": 0.0, "support": 0}
                if isinstance(n, Start)
                else {"expr": n.phrase, "score": float(n.support), "support": n.support}
                for n in beams
            ],
        }

    # -- sessions ---------------------------------------------------------

    @app.post("/sessions", status_code=201)
    def create_session(body: SessionIn | None = None):
        profile = None
        if body and body.profile:
            from .navigation import PreferenceProfile

            profile = PreferenceProfile.from_records(
                [(r.kind, r.key, r.weight) for r in body.profile]
            )
        session = engine.begin_session(profile)
        return _session_json(session)

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        return _session_json(engine.get_session(session_id))

    @app.post("/sessions/{session_id}/move")
    def move(session_id: str, body: MoveIn):
        session = engine.get_session(session_id)
        with session.lock:
            target = START if body.target is None else parse(body.target, grammar)
            session.move(target)
            return _session_json(session)

    @app.post("/sessions/{session_id}/clue")
    def add_clue(session_id: str, body: ClueIn | None = None):
        session = engine.get_session(session_id)
        with session.lock:
            if body and body.remove is not None:
                session.remove_clue(parse(body.remove, grammar))
            else:
                session.add_clue()
            return {"clues": sorted(linearize(c) for c in session.clues)}

    @app.get("/sessions/{session_id}/results")
    def results(session_id: str, limit: int | None = Query(None, ge=1)):
        session = engine.get_session(session_id)
        return _results_json(engine, engine.session_results(session, limit))

    @app.post("/sessions/{session_id}/feedback")
    def feedback(session_id: str, body: FeedbackIn):
        session = engine.get_session(session_id)
        with session.lock:
            session.record_feedback(body.source_id, body.relevant)
        return {"source_id": body.source_id, "relevant": body.relevant}

    if ui_dir and Path(ui_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
