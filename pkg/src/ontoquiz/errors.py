"""Exception hierarchy shared across the engine.

Exception class names double as wire-level error codes: the HTTP layer
reports ``type(exc).__name__`` in its JSON error body, and the CLI maps
them onto its exit-code contract. Renaming a class here is therefore an
interface change, not a refactor.
"""

from __future__ import annotations


class EngineError(Exception):
    """Base class for every domain error raised by this package."""


class ParseError(EngineError):
    """A document does not conform to the expected JSON schema."""


class ValidationError(EngineError):
    """An ontology violates a structural invariant.

    Carries the full validation report so callers can print every
    violation rather than only the first one.
    """

    def __init__(self, report):
        self.report = report
        lines = "; ".join(v.message for v in report.violations)
        super().__init__(f"ontology validation failed: {lines}")


class UnknownChunk(EngineError):
    """A chunk id does not resolve in the ontology under consideration."""

    def __init__(self, chunk_id: str):
        self.chunk_id = chunk_id
        super().__init__(f"unknown chunk: {chunk_id!r}")


class SameDiscipline(EngineError):
    """Cross-discipline matching was asked to compare a discipline with itself."""

    def __init__(self, discipline_id: str):
        self.discipline_id = discipline_id
        super().__init__(f"both ontologies carry discipline id {discipline_id!r}")


class InsufficientFacts(EngineError):
    """The content ontology cannot supply the requested number of questions."""

    def __init__(self, qtype: str, chunk_id: str | None, detail: str):
        self.qtype = qtype
        self.chunk_id = chunk_id
        super().__init__(detail)


class UnknownQuestion(EngineError):
    def __init__(self, question_id: str):
        self.question_id = question_id
        super().__init__(f"unknown question: {question_id!r}")


class DuplicateAnswer(EngineError):
    def __init__(self, question_id: str):
        self.question_id = question_id
        super().__init__(f"more than one answer for question {question_id!r}")


class UnresolvedDci(EngineError):
    """A failed concept index has no matching chunk in the home discipline."""

    def __init__(self, dci: str):
        self.dci = dci
        super().__init__(f"no chunk carries concept index {dci!r}")


class UnknownBank(EngineError):
    def __init__(self, bank_ref: str):
        self.bank_ref = bank_ref
        super().__init__(f"unknown bank: {bank_ref!r}")


class EmptyBank(EngineError):
    def __init__(self, bank_ref: str):
        self.bank_ref = bank_ref
        super().__init__(f"bank {bank_ref!r} holds no questions")


class UnknownSession(EngineError):
    def __init__(self, session_id: str):
        self.session_id = session_id
        super().__init__(f"unknown session: {session_id!r}")


class SessionClosed(EngineError):
    def __init__(self, session_id: str):
        self.session_id = session_id
        super().__init__(f"session {session_id!r} is already completed")


class AlreadyAnswered(EngineError):
    def __init__(self, question_id: str):
        self.question_id = question_id
        super().__init__(f"question {question_id!r} was already answered")


class UnknownDci(EngineError):
    def __init__(self, dci: str):
        self.dci = dci
        super().__init__(f"no concept with index {dci!r} in this discipline")


class ModeForbidden(EngineError):
    """Concept review was requested outside learning mode."""

    def __init__(self):
        super().__init__("concept review is only available in learning mode")
