"""Test session lifecycle with append-only file persistence.

Each session is one JSON-lines file under <root>/sessions/: a "created"
event followed by one "answer" event per reply and, eventually, a single
"completed" event that freezes the grade report and recommendations.
Restarting the process replays the logs, so recovered sessions serialize
byte-identically to what the original process would have produced.

Learning sessions reveal correctness and the concept index after every
answer and allow concept review; exam sessions acknowledge answers
without feedback and refuse review.
"""

from __future__ import annotations

import json
import random
import threading
import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from .errors import (
    AlreadyAnswered,
    EmptyBank,
    ModeForbidden,
    ParseError,
    SessionClosed,
    UnknownBank,
    UnknownDci,
    UnknownQuestion,
    UnknownSession,
)
from .grading import AnswerRecord, GradingPolicy, grade, report_to_document
from .model import MetaOntology
from .questions import Question
from .recommend import recommend, recommendations_to_document

MODES = ("learning", "exam")
ORDER_POLICIES = ("shuffle", "difficulty")


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def public_question(question: Question) -> dict:
    """The candidate-facing view: everything except the answer key."""
    return {
        "id": question.id,
        "dci": question.dci,
        "qtype": question.qtype,
        "competence": question.competence,
        "difficulty": question.difficulty,
        "stem": question.stem,
        "options": list(question.options),
        "weight": question.weight,
    }


@dataclass
class TestSession:
    id: str
    bank_ref: str
    mode: str
    seed: int
    question_order: tuple[str, ...]
    created_at: str
    state: str = "active"
    completed_at: str | None = None
    answers: dict[str, AnswerRecord] = field(default_factory=dict)
    report: dict | None = None
    recommendations: list[dict] | None = None

    def next_question_id(self) -> str | None:
        for qid in self.question_order:
            if qid not in self.answers:
                return qid
        return None

    def to_document(self) -> dict:
        return {
            "id": self.id,
            "bank_ref": self.bank_ref,
            "mode": self.mode,
            "seed": self.seed,
            "state": self.state,
            "created_at": self.created_at,
            "completed_at": self.completed_at,
            "question_order": list(self.question_order),
            "answers": [
                {
                    "question_id": record.question_id,
                    "response": list(record.response) if isinstance(record.response, tuple) else record.response,
                    "correct": record.correct,
                    "signed_points": record.signed_points,
                }
                for record in self.answers.values()
            ],
            "report": self.report,
            "recommendations": self.recommendations,
        }

    def serialized(self) -> str:
        return json.dumps(self.to_document(), indent=2, ensure_ascii=False) + "\n"


class SessionStore:
    """Sessions over a fixed set of banks and ontologies.

    Thread safety is per session: one lock guards creation and the
    session table, and each session's own lock serialises its answers.
    """

    def __init__(self, root: str | Path, banks: dict[str, tuple[str, list[Question]]],
                 ontologies: dict[str, MetaOntology]):
        self.root = Path(root)
        self.sessions_dir = self.root / "sessions"
        self.sessions_dir.mkdir(parents=True, exist_ok=True)
        self.banks = banks
        self.ontologies = ontologies
        self._sessions: dict[str, TestSession] = {}
        self._table_lock = threading.Lock()
        self._locks: dict[str, threading.Lock] = {}
        self._replay_all()

    # -- persistence ----------------------------------------------------

    def _log_path(self, session_id: str) -> Path:
        return self.sessions_dir / f"{session_id}.jsonl"

    def _append(self, session_id: str, event: dict) -> None:
        line = json.dumps(event, ensure_ascii=False)
        with self._log_path(session_id).open("a", encoding="utf-8") as handle:
            handle.write(line + "\n")

    def _replay_all(self) -> None:
        for path in sorted(self.sessions_dir.glob("*.jsonl")):
            session = self._replay(path)
            if session is not None:
                self._sessions[session.id] = session
                self._locks[session.id] = threading.Lock()

    def _replay(self, path: Path) -> TestSession | None:
        session: TestSession | None = None
        for line in path.read_text(encoding="utf-8").splitlines():
            if not line.strip():
                continue
            event = json.loads(line)
            kind = event.get("event")
            if kind == "created":
                session = TestSession(
                    id=event["id"],
                    bank_ref=event["bank_ref"],
                    mode=event["mode"],
                    seed=event["seed"],
                    question_order=tuple(event["question_order"]),
                    created_at=event["created_at"],
                )
            elif kind == "answer" and session is not None:
                response = event["response"]
                if isinstance(response, list):
                    response = tuple(response)
                session.answers[event["question_id"]] = AnswerRecord(
                    question_id=event["question_id"],
                    response=response,
                    correct=event["correct"],
                    signed_points=event["signed_points"],
                )
            elif kind == "completed" and session is not None:
                session.state = "completed"
                session.completed_at = event["at"]
                session.report = event["report"]
                session.recommendations = event["recommendations"]
        return session

    # -- helpers ---------------------------------------------------------

    def get_session(self, session_id: str) -> TestSession:
        session = self._sessions.get(session_id)
        if session is None:
            raise UnknownSession(session_id)
        return session

    def _lock_for(self, session_id: str) -> threading.Lock:
        with self._table_lock:
            if session_id not in self._locks:
                raise UnknownSession(session_id)
            return self._locks[session_id]

    def _bank_for(self, session: TestSession) -> tuple[str, list[Question]]:
        return self.banks[session.bank_ref]

    def list_sessions(self) -> list[TestSession]:
        return sorted(self._sessions.values(), key=lambda s: s.created_at)

    # -- lifecycle --------------------------------------------------------

    def create(self, bank_ref: str, mode: str, seed: int, order: str = "shuffle") -> TestSession:
        if bank_ref not in self.banks:
            raise UnknownBank(bank_ref)
        if mode not in MODES:
            raise ParseError(f"mode must be one of {MODES}, got {mode!r}")
        if order not in ORDER_POLICIES:
            raise ParseError(f"order must be one of {ORDER_POLICIES}, got {order!r}")
        _, questions = self.banks[bank_ref]
        if not questions:
            raise EmptyBank(bank_ref)

        question_ids = [q.id for q in questions]
        random.Random(str(seed)).shuffle(question_ids)
        if order == "difficulty":
            by_id = {q.id: q for q in questions}
            levels = {"I": 0, "II": 1, "III": 2}
            question_ids.sort(key=lambda qid: levels[by_id[qid].difficulty])

        session = TestSession(
            id=uuid.uuid4().hex,
            bank_ref=bank_ref,
            mode=mode,
            seed=seed,
            question_order=tuple(question_ids),
            created_at=_now(),
        )
        with self._table_lock:
            self._sessions[session.id] = session
            self._locks[session.id] = threading.Lock()
        self._append(session.id, {
            "event": "created",
            "id": session.id,
            "bank_ref": session.bank_ref,
            "mode": session.mode,
            "seed": session.seed,
            "question_order": list(session.question_order),
            "created_at": session.created_at,
        })
        return session

    def next_question(self, session_id: str) -> tuple[Question | None, TestSession]:
        session = self.get_session(session_id)
        qid = session.next_question_id()
        if qid is None:
            return None, session
        _, questions = self._bank_for(session)
        by_id = {q.id: q for q in questions}
        return by_id[qid], session

    def submit_answer(self, session_id: str, question_id: str, response) -> AnswerRecord:
        with self._lock_for(session_id):
            session = self.get_session(session_id)
            if session.state != "active":
                raise SessionClosed(session_id)
            _, questions = self._bank_for(session)
            by_id = {q.id: q for q in questions}
            if question_id not in by_id:
                raise UnknownQuestion(question_id)
            if question_id in session.answers:
                raise AlreadyAnswered(question_id)
            record = AnswerRecord.for_question(by_id[question_id], response)
            session.answers[question_id] = record
            self._append(session_id, {
                "event": "answer",
                "question_id": record.question_id,
                "response": list(record.response) if isinstance(record.response, tuple) else record.response,
                "correct": record.correct,
                "signed_points": record.signed_points,
            })
            return record

    def review_concept(self, session_id: str, dci: str) -> dict:
        """Learning-mode view of the chunks and objects behind one concept index."""
        session = self.get_session(session_id)
        if session.state != "active":
            raise SessionClosed(session_id)
        if session.mode != "learning":
            raise ModeForbidden()
        discipline_id, _ = self._bank_for(session)
        home = self.ontologies.get(discipline_id)
        if home is None:
            raise UnknownDci(dci)
        chunks = [c for c in home.didactic.chunks if c.dci == dci]
        if not chunks:
            raise UnknownDci(dci)
        object_map = home.content.object_map()
        views = []
        for chunk in chunks:
            objects = []
            for obj_id in home.bound_object_ids(chunk.id):
                obj = object_map.get(obj_id)
                if obj is None:
                    continue
                objects.append({
                    "id": obj.id,
                    "category": obj.category,
                    "label": obj.label,
                    "attributes": [
                        {"name": a.name, "value": a.value, **({"unit": a.unit} if a.unit else {})}
                        for a in obj.attributes
                    ],
                })
            views.append({
                "chunk_id": chunk.id,
                "label": chunk.label,
                "objects": objects,
                "materials": [
                    {"chunk_id": m.chunk_id, "content_kind": m.content_kind,
                     "content_ref": m.content_ref, "discipline_id": m.discipline_id}
                    for m in home.didactic.mappings_for(chunk.id)
                ],
            })
        return {"dci": dci, "chunks": views}

    def complete(self, session_id: str, policy: GradingPolicy | None = None,
                 deep: bool = False) -> tuple[dict, list[dict]]:
        """Grade the session and freeze the result.

        Completing an already completed session returns the stored report
        unchanged, whatever policy the second call carries.
        """
        with self._lock_for(session_id):
            session = self.get_session(session_id)
            if session.state == "completed":
                return session.report, session.recommendations or []

            discipline_id, questions = self._bank_for(session)
            records = list(session.answers.values())
            answered = set(session.answers)
            for question in questions:
                if question.id not in answered:
                    records.append(AnswerRecord.for_question(question, None))
            report = grade(questions, records, policy)

            home = self.ontologies.get(discipline_id)
            if home is not None:
                others = [o for d, o in sorted(self.ontologies.items()) if d != discipline_id]
                recs = recommend(report, home, others, deep=deep)
                rec_docs = recommendations_to_document(recs)["recommendations"]
            else:
                rec_docs = []

            session.report = report_to_document(report)["report"]
            session.recommendations = rec_docs
            session.state = "completed"
            session.completed_at = _now()
            self._append(session_id, {
                "event": "completed",
                "at": session.completed_at,
                "report": session.report,
                "recommendations": session.recommendations,
            })
            return session.report, session.recommendations
