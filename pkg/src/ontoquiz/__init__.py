"""Ontology-driven e-learning engine.

Disciplines are described as two-part ontologies (teaching chunks with a
prerequisite ordering, plus the objects of study with attributes and
relations). From those the engine generates seeded question banks,
scores answers with concept-indexed negative marking, derives grade
ceilings from difficulty coverage, and recommends remedial material
across disciplines. A CLI and an HTTP session service expose the same
functionality.
"""

from .errors import (
    AlreadyAnswered,
    DuplicateAnswer,
    EmptyBank,
    EngineError,
    InsufficientFacts,
    ModeForbidden,
    ParseError,
    SameDiscipline,
    SessionClosed,
    UnknownBank,
    UnknownChunk,
    UnknownDci,
    UnknownQuestion,
    UnknownSession,
    UnresolvedDci,
    ValidationError,
)
from .gift import export_gift, gift_text
from .grading import (
    AnswerRecord,
    GradeReport,
    GradingPolicy,
    evaluate_response,
    grade,
    grade_ceiling,
    records_for,
    report_to_document,
    report_to_json,
)
from .model import (
    Attribute,
    Chunk,
    ContentMapping,
    ContentObject,
    ContentOntology,
    ContentRelation,
    DidacticOntology,
    DidacticRelation,
    MetaOntology,
    ValidationReport,
    Violation,
    normalize_label,
    prerequisite_closure,
    shared_chunks,
    validate,
)
from .questions import (
    GenerationSpec,
    Question,
    bank_to_document,
    generate_bank,
    parse_bank,
)
from .recommend import Recommendation, recommend, recommendations_to_document
from .sessions import SessionStore, TestSession
from .storage import load_ontology, ontology_to_document, parse_ontology, save_ontology

__version__ = "0.1.0"

__all__ = [
    "AlreadyAnswered", "AnswerRecord", "Attribute", "Chunk", "ContentMapping",
    "ContentObject", "ContentOntology", "ContentRelation", "DidacticOntology",
    "DidacticRelation", "DuplicateAnswer", "EmptyBank", "EngineError",
    "GenerationSpec", "GradeReport", "GradingPolicy", "InsufficientFacts",
    "MetaOntology", "ModeForbidden", "ParseError", "Question", "Recommendation",
    "SameDiscipline", "SessionClosed", "SessionStore", "TestSession",
    "UnknownBank", "UnknownChunk", "UnknownDci", "UnknownQuestion",
    "UnknownSession", "UnresolvedDci", "ValidationError", "ValidationReport",
    "Violation", "bank_to_document", "evaluate_response", "export_gift",
    "generate_bank", "gift_text", "grade", "grade_ceiling", "load_ontology",
    "normalize_label", "ontology_to_document", "parse_bank", "parse_ontology",
    "prerequisite_closure", "recommend", "recommendations_to_document",
    "records_for", "report_to_document", "report_to_json", "save_ontology",
    "shared_chunks", "validate",
]
