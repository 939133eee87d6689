"""HTTP facade over banks, sessions, grading, and recommendations.

The service owns a data directory with three parts: ontologies/ holding
one discipline file each, banks/ holding question bank files, and
sessions/ where session logs accumulate. All request and response bodies
are JSON; domain errors come back as 4xx with {"error": <name>} where
the name is the engine's exception class name.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .errors import (
    AlreadyAnswered,
    DuplicateAnswer,
    EngineError,
    ModeForbidden,
    ParseError,
    SessionClosed,
    UnknownBank,
    UnknownChunk,
    UnknownDci,
    UnknownQuestion,
    UnknownSession,
)
from .grading import GradingPolicy, policy_from_document
from .model import MetaOntology
from .questions import Question, parse_bank
from .sessions import SessionStore, public_question
from .storage import check_keys, load_json_document, load_ontology

_STATUS_BY_ERROR = {
    ModeForbidden: 403,
    UnknownSession: 404,
    UnknownBank: 404,
    UnknownQuestion: 404,
    UnknownDci: 404,
    UnknownChunk: 404,
    AlreadyAnswered: 409,
    SessionClosed: 409,
    DuplicateAnswer: 409,
}


def load_data_dir(data_dir: str | Path) -> tuple[dict[str, MetaOntology], dict[str, tuple[str, list[Question]]]]:
    """Read every ontology and bank file under a service data directory."""
    root = Path(data_dir)
    ontologies: dict[str, MetaOntology] = {}
    ontology_dir = root / "ontologies"
    if ontology_dir.is_dir():
        for path in sorted(ontology_dir.glob("*.json")):
            meta = load_ontology(path)
            if meta.discipline_id in ontologies:
                raise ParseError(f"{path}: duplicate discipline id {meta.discipline_id!r}")
            ontologies[meta.discipline_id] = meta

    banks: dict[str, tuple[str, list[Question]]] = {}
    bank_dir = root / "banks"
    if bank_dir.is_dir():
        for path in sorted(bank_dir.glob("*.json")):
            discipline_id, questions = parse_bank(load_json_document(path), source=str(path))
            banks[path.stem] = (discipline_id, questions)
    return ontologies, banks


def create_app(data_dir: str | Path) -> FastAPI:
    ontologies, banks = load_data_dir(data_dir)
    store = SessionStore(data_dir, banks, ontologies)

    app = FastAPI(title="ontoquiz", docs_url=None, redoc_url=None)
    app.state.store = store

    @app.exception_handler(EngineError)
    async def engine_error(_request: Request, exc: EngineError):
        status = _STATUS_BY_ERROR.get(type(exc), 422)
        return JSONResponse(status_code=status,
                            content={"error": type(exc).__name__, "detail": str(exc)})

    async def read_body(request: Request) -> dict:
        try:
            body = await request.json()
        except Exception as exc:
            raise ParseError(f"request body is not valid JSON: {exc}") from exc
        if not isinstance(body, dict):
            raise ParseError("request body must be a JSON object")
        return body

    @app.get("/ontologies")
    def list_ontologies():
        return {"ontologies": [
            {
                "discipline_id": meta.discipline_id,
                "chunks": len(meta.didactic.chunks),
                "objects": len(meta.content.objects),
            }
            for meta in sorted(ontologies.values(), key=lambda m: m.discipline_id)
        ]}

    @app.get("/banks")
    def list_banks():
        return {"banks": [
            {"bank_ref": ref, "discipline_id": discipline_id, "questions": len(questions)}
            for ref, (discipline_id, questions) in sorted(banks.items())
        ]}

    @app.post("/sessions", status_code=201)
    async def create_session(request: Request):
        body = await read_body(request)
        check_keys(body, {"bank_ref": str, "mode": str, "seed": int}, {"order": str}, "create session")
        session = store.create(body["bank_ref"], body["mode"], body["seed"],
                               order=body.get("order", "shuffle"))
        return {
            "id": session.id,
            "bank_ref": session.bank_ref,
            "mode": session.mode,
            "state": session.state,
            "created_at": session.created_at,
            "total": len(session.question_order),
        }

    @app.get("/sessions/{session_id}/next")
    def next_question(session_id: str):
        question, session = store.next_question(session_id)
        return {
            "question": public_question(question) if question else None,
            "answered": len(session.answers),
            "total": len(session.question_order),
            "state": session.state,
        }

    @app.post("/sessions/{session_id}/answers")
    async def submit_answer(session_id: str, request: Request):
        body = await read_body(request)
        check_keys(body, {"question_id": str}, {"response": object}, "submit answer")
        record = store.submit_answer(session_id, body["question_id"], body.get("response"))
        session = store.get_session(session_id)
        if session.mode == "learning":
            _, questions = store.banks[session.bank_ref]
            dci = next(q.dci for q in questions if q.id == record.question_id)
            return {"correct": record.correct, "dci": dci}
        return {"acknowledged": True}

    @app.get("/sessions/{session_id}/concepts/{dci}")
    def review_concept(session_id: str, dci: str):
        return store.review_concept(session_id, dci)

    @app.post("/sessions/{session_id}/complete")
    async def complete_session(session_id: str, request: Request):
        raw = await request.body()
        body = await read_body(request) if raw.strip() else {}
        deep = bool(body.pop("deep", False))
        policy: GradingPolicy | None = None
        if body:
            policy = policy_from_document(body, "complete session")
        report, recommendations = store.complete(session_id, policy, deep=deep)
        return {"report": report, "recommendations": recommendations}

    return app
