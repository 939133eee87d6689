"""JSON interchange for discipline ontologies.

One UTF-8 JSON document describes one discipline. Top-level keys are
``discipline_id`` plus the six collection keys; collections may be omitted
when empty. Field names match the model exactly, except that content
relations use ``from``/``to`` on the wire (``from`` is reserved in several
host languages, so the in-memory fields are ``from_id``/``to_id``).
Unknown keys are rejected rather than ignored: a typo in an authoring tool
should fail loudly, not silently drop data.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import ParseError, ValidationError
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
    validate,
)

_TOP_KEYS = {
    "discipline_id", "chunks", "content_mappings", "didactic_relations",
    "objects", "content_relations", "bindings",
}


def check_keys(record: dict, required: dict[str, type | tuple], optional: dict[str, type | tuple], where: str) -> None:
    """Strict schema check for one JSON object: presence, types, no extras."""
    if not isinstance(record, dict):
        raise ParseError(f"{where}: expected an object, got {type(record).__name__}")
    for key in record:
        if key not in required and key not in optional:
            raise ParseError(f"{where}: unknown key {key!r}")
    for key, expected in required.items():
        if key not in record:
            raise ParseError(f"{where}: missing key {key!r}")
        if not isinstance(record[key], expected):
            raise ParseError(f"{where}: key {key!r} has the wrong type")
    for key, expected in optional.items():
        if key in record and not isinstance(record[key], expected):
            raise ParseError(f"{where}: key {key!r} has the wrong type")


def load_json_document(path: str | Path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: top level must be a JSON object")
    return doc


def dump_json_document(doc: dict, path: str | Path) -> None:
    text = json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    Path(path).write_text(text, encoding="utf-8")


def _parse_chunk(record: dict, discipline_id: str, index: int) -> Chunk:
    where = f"chunks[{index}]"
    check_keys(record, {"id": str, "label": str, "dci": str}, {"discipline_id": str}, where)
    owner = record.get("discipline_id", discipline_id)
    if owner != discipline_id:
        raise ParseError(f"{where}: chunk {record['id']!r} names discipline {owner!r}, "
                         f"but the document is for {discipline_id!r}")
    return Chunk(id=record["id"], label=record["label"], discipline_id=owner, dci=record["dci"])


def _parse_mapping(record: dict, discipline_id: str, index: int) -> ContentMapping:
    where = f"content_mappings[{index}]"
    check_keys(record, {"chunk_id": str, "content_kind": str, "content_ref": str},
               {"discipline_id": str}, where)
    return ContentMapping(
        chunk_id=record["chunk_id"],
        content_kind=record["content_kind"],
        content_ref=record["content_ref"],
        discipline_id=record.get("discipline_id", discipline_id),
    )


def _parse_didactic_relation(record: dict, index: int) -> DidacticRelation:
    where = f"didactic_relations[{index}]"
    check_keys(record, {"kind": str, "from_chunk": str, "to_chunk": str}, {}, where)
    return DidacticRelation(kind=record["kind"], from_chunk=record["from_chunk"], to_chunk=record["to_chunk"])


def _parse_attribute(record: dict, where: str) -> Attribute:
    check_keys(record, {"name": str, "value": (str, int, float)}, {"unit": str}, where)
    if isinstance(record["value"], bool):
        raise ParseError(f"{where}: attribute values must be text or numbers")
    return Attribute(name=record["name"], value=record["value"], unit=record.get("unit"))


def _parse_object(record: dict, index: int) -> ContentObject:
    where = f"objects[{index}]"
    check_keys(record, {"id": str, "category": str, "label": str}, {"attributes": list}, where)
    attributes = tuple(
        _parse_attribute(attr, f"{where}.attributes[{i}]")
        for i, attr in enumerate(record.get("attributes", []))
    )
    return ContentObject(id=record["id"], category=record["category"],
                         label=record["label"], attributes=attributes)


def _parse_content_relation(record: dict, index: int) -> ContentRelation:
    where = f"content_relations[{index}]"
    check_keys(record, {"kind": str, "from": str, "to": str}, {}, where)
    return ContentRelation(kind=record["kind"], from_id=record["from"], to_id=record["to"])


def _parse_binding(record: dict, index: int) -> tuple[str, str]:
    where = f"bindings[{index}]"
    check_keys(record, {"chunk_id": str, "object_id": str}, {}, where)
    return (record["chunk_id"], record["object_id"])


def parse_ontology(doc: dict, source: str = "<memory>") -> MetaOntology:
    """Build an (unvalidated) ontology from a parsed JSON document."""
    for key in doc:
        if key not in _TOP_KEYS:
            raise ParseError(f"{source}: unknown top-level key {key!r}")
    if "discipline_id" not in doc or not isinstance(doc["discipline_id"], str):
        raise ParseError(f"{source}: missing or malformed 'discipline_id'")
    discipline_id = doc["discipline_id"]
    for key in _TOP_KEYS - {"discipline_id"}:
        if key in doc and not isinstance(doc[key], list):
            raise ParseError(f"{source}: top-level key {key!r} must be a list")

    didactic = DidacticOntology(
        discipline_id=discipline_id,
        chunks=tuple(_parse_chunk(c, discipline_id, i) for i, c in enumerate(doc.get("chunks", []))),
        mappings=tuple(_parse_mapping(m, discipline_id, i) for i, m in enumerate(doc.get("content_mappings", []))),
        relations=tuple(_parse_didactic_relation(r, i) for i, r in enumerate(doc.get("didactic_relations", []))),
    )
    content = ContentOntology(
        objects=tuple(_parse_object(o, i) for i, o in enumerate(doc.get("objects", []))),
        relations=tuple(_parse_content_relation(r, i) for i, r in enumerate(doc.get("content_relations", []))),
    )
    bindings = tuple(_parse_binding(b, i) for i, b in enumerate(doc.get("bindings", [])))
    return MetaOntology(discipline_id=discipline_id, didactic=didactic,
                        content=content, bindings=bindings)


def ontology_to_document(meta: MetaOntology) -> dict:
    doc: dict = {"discipline_id": meta.discipline_id}
    doc["chunks"] = [
        {"id": c.id, "label": c.label, "dci": c.dci}
        for c in meta.didactic.chunks
    ]
    doc["content_mappings"] = [
        {"chunk_id": m.chunk_id, "content_kind": m.content_kind,
         "content_ref": m.content_ref, "discipline_id": m.discipline_id}
        for m in meta.didactic.mappings
    ]
    doc["didactic_relations"] = [
        {"kind": r.kind, "from_chunk": r.from_chunk, "to_chunk": r.to_chunk}
        for r in meta.didactic.relations
    ]
    doc["objects"] = [
        {
            "id": o.id, "category": o.category, "label": o.label,
            "attributes": [
                {"name": a.name, "value": a.value, **({"unit": a.unit} if a.unit else {})}
                for a in o.attributes
            ],
        }
        for o in meta.content.objects
    ]
    doc["content_relations"] = [
        {"kind": r.kind, "from": r.from_id, "to": r.to_id}
        for r in meta.content.relations
    ]
    doc["bindings"] = [
        {"chunk_id": chunk_id, "object_id": object_id}
        for chunk_id, object_id in meta.bindings
    ]
    return doc


def load_ontology(path: str | Path) -> MetaOntology:
    """Load and validate one discipline file.

    Raises ParseError for malformed documents and ValidationError when the
    document parses but breaks a structural invariant.
    """
    doc = load_json_document(path)
    meta = parse_ontology(doc, source=str(path))
    report = validate(meta)
    if not report.ok:
        raise ValidationError(report)
    return meta


def save_ontology(meta: MetaOntology, path: str | Path) -> None:
    dump_json_document(ontology_to_document(meta), path)
