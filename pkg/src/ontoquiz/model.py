"""Domain model for two-part discipline ontologies.

A discipline is described by a didactic half (teaching chunks, their
content materials, and a strict "precedes" ordering) and a content half
(the objects of study with attributes and named relations). Explicit
bindings connect chunks to the objects they teach. Every chunk carries a
hierarchical concept index (a dot-separated integer path such as "1.2")
that question banks and grading reports refer back to.

Instances are immutable once constructed. Collections are canonically
sorted at construction time so that structurally equal ontologies compare
equal regardless of authoring order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from . import dag
from .errors import SameDiscipline, UnknownChunk

DCI_PATTERN = re.compile(r"^\d+(\.\d+)*$")

CONTENT_KINDS = ("text", "presentation", "video", "test")
DIDACTIC_RELATION_KINDS = ("precedes",)


def normalize_label(label: str) -> str:
    """Join key for cross-discipline matching: casefold and collapse whitespace."""
    return " ".join(label.split()).casefold()


@dataclass(frozen=True)
class Chunk:
    """A teachable unit in the didactic half of a discipline."""

    id: str
    label: str
    discipline_id: str
    dci: str

    def normalized_label(self) -> str:
        return normalize_label(self.label)


@dataclass(frozen=True)
class ContentMapping:
    """Pointer from a chunk to one learning material."""

    chunk_id: str
    content_kind: str
    content_ref: str
    discipline_id: str


@dataclass(frozen=True)
class DidacticRelation:
    kind: str
    from_chunk: str
    to_chunk: str


@dataclass(frozen=True)
class Attribute:
    name: str
    value: str | int | float
    unit: str | None = None

    def display(self) -> str:
        text = str(self.value)
        return f"{text} {self.unit}" if self.unit else text


@dataclass(frozen=True)
class ContentObject:
    """An object of study; attributes keep their authored order."""

    id: str
    category: str
    label: str
    attributes: tuple[Attribute, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "attributes", tuple(self.attributes))

    def attribute(self, name: str) -> Attribute | None:
        for attr in self.attributes:
            if attr.name == name:
                return attr
        return None

    def normalized_label(self) -> str:
        return normalize_label(self.label)


@dataclass(frozen=True)
class ContentRelation:
    kind: str
    from_id: str
    to_id: str


@dataclass(frozen=True)
class DidacticOntology:
    discipline_id: str
    chunks: tuple[Chunk, ...] = ()
    mappings: tuple[ContentMapping, ...] = ()
    relations: tuple[DidacticRelation, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "chunks", tuple(sorted(self.chunks, key=lambda c: c.id)))
        object.__setattr__(
            self,
            "mappings",
            tuple(sorted(self.mappings, key=lambda m: (m.chunk_id, m.content_kind, m.content_ref, m.discipline_id))),
        )
        object.__setattr__(
            self,
            "relations",
            tuple(sorted(self.relations, key=lambda r: (r.kind, r.from_chunk, r.to_chunk))),
        )

    def chunk_map(self) -> dict[str, Chunk]:
        return {chunk.id: chunk for chunk in self.chunks}

    def mappings_for(self, chunk_id: str) -> tuple[ContentMapping, ...]:
        return tuple(m for m in self.mappings if m.chunk_id == chunk_id)


@dataclass(frozen=True)
class ContentOntology:
    objects: tuple[ContentObject, ...] = ()
    relations: tuple[ContentRelation, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(sorted(self.objects, key=lambda o: o.id)))
        object.__setattr__(
            self,
            "relations",
            tuple(sorted(self.relations, key=lambda r: (r.kind, r.from_id, r.to_id))),
        )

    def object_map(self) -> dict[str, ContentObject]:
        return {obj.id: obj for obj in self.objects}


@dataclass(frozen=True)
class MetaOntology:
    """One discipline: didactic half, content half, and the bindings between them."""

    discipline_id: str
    didactic: DidacticOntology
    content: ContentOntology = field(default_factory=ContentOntology)
    bindings: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "bindings", tuple(sorted(tuple(pair) for pair in self.bindings)))

    def bound_object_ids(self, chunk_id: str) -> tuple[str, ...]:
        return tuple(obj_id for cid, obj_id in self.bindings if cid == chunk_id)


@dataclass(frozen=True)
class Violation:
    """One broken invariant, naming the entity at fault."""

    code: str
    entity: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    """Validation outcome. Violations block loading; warnings do not."""

    violations: tuple[Violation, ...] = ()
    warnings: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def lines(self) -> list[str]:
        out = [f"error: {v.message}" for v in self.violations]
        out.extend(f"warning: {w.message}" for w in self.warnings)
        return out


def _resolvable_edges(ontology: DidacticOntology) -> list[tuple[str, str]]:
    known = {chunk.id for chunk in ontology.chunks}
    return [
        (rel.from_chunk, rel.to_chunk)
        for rel in ontology.relations
        if rel.from_chunk in known and rel.to_chunk in known and rel.from_chunk != rel.to_chunk
    ]


def validate(meta: MetaOntology) -> ValidationReport:
    """Check every structural invariant and collect violations.

    Unreachable content objects are reported as warnings: an object nobody
    binds (directly or through a relation chain from a bound object) is
    suspicious but does not make the ontology unusable.
    """
    violations: list[Violation] = []
    warnings: list[Violation] = []

    def bad(code: str, entity: str, message: str) -> None:
        violations.append(Violation(code, entity, message))

    didactic = meta.didactic
    if didactic.discipline_id != meta.discipline_id:
        bad("discipline_mismatch", didactic.discipline_id,
            f"didactic ontology carries discipline {didactic.discipline_id!r}, expected {meta.discipline_id!r}")

    seen_chunks: set[str] = set()
    for chunk in didactic.chunks:
        if chunk.id in seen_chunks:
            bad("duplicate_chunk_id", chunk.id, f"duplicate chunk id {chunk.id!r}")
        seen_chunks.add(chunk.id)
        if not chunk.label.strip():
            bad("empty_label", chunk.id, f"chunk {chunk.id!r} has an empty label")
        if not DCI_PATTERN.match(chunk.dci):
            bad("bad_dci", chunk.id,
                f"chunk {chunk.id!r} has malformed concept index {chunk.dci!r}")
        if chunk.discipline_id != meta.discipline_id:
            bad("foreign_chunk", chunk.id,
                f"chunk {chunk.id!r} belongs to {chunk.discipline_id!r}, not {meta.discipline_id!r}")

    chunk_ids = {chunk.id for chunk in didactic.chunks}
    for mapping in didactic.mappings:
        if mapping.chunk_id not in chunk_ids:
            bad("dangling_mapping", mapping.content_ref,
                f"content mapping {mapping.content_ref!r} points at unknown chunk {mapping.chunk_id!r}")
        if mapping.content_kind not in CONTENT_KINDS:
            bad("bad_content_kind", mapping.content_ref,
                f"content mapping {mapping.content_ref!r} has unknown kind {mapping.content_kind!r}")

    for rel in didactic.relations:
        if rel.kind not in DIDACTIC_RELATION_KINDS:
            bad("bad_relation_kind", rel.kind,
                f"didactic relation kind {rel.kind!r} is not recognised")
        if rel.from_chunk == rel.to_chunk:
            bad("self_relation", rel.from_chunk,
                f"chunk {rel.from_chunk!r} cannot precede itself")
        for endpoint in (rel.from_chunk, rel.to_chunk):
            if endpoint not in chunk_ids:
                bad("dangling_relation", endpoint,
                    f"precedes relation mentions unknown chunk {endpoint!r}")

    cycle = dag.find_cycle(chunk_ids, _resolvable_edges(didactic))
    if cycle is not None:
        bad("cycle", cycle[0], "precedes cycle: " + " -> ".join(cycle))

    seen_objects: set[str] = set()
    for obj in meta.content.objects:
        if obj.id in seen_objects:
            bad("duplicate_object_id", obj.id, f"duplicate object id {obj.id!r}")
        seen_objects.add(obj.id)
        if not obj.label.strip():
            bad("empty_label", obj.id, f"object {obj.id!r} has an empty label")
        seen_attrs: set[str] = set()
        for attr in obj.attributes:
            if not attr.name.strip():
                bad("empty_attribute_name", obj.id,
                    f"object {obj.id!r} has an attribute with an empty name")
            if attr.name in seen_attrs:
                bad("duplicate_attribute", obj.id,
                    f"object {obj.id!r} repeats attribute {attr.name!r}")
            seen_attrs.add(attr.name)

    object_ids = {obj.id for obj in meta.content.objects}
    for rel in meta.content.relations:
        for endpoint in (rel.from_id, rel.to_id):
            if endpoint not in object_ids:
                bad("dangling_relation", endpoint,
                    f"content relation {rel.kind!r} mentions unknown object {endpoint!r}")

    bound: set[str] = set()
    for chunk_id, object_id in meta.bindings:
        if chunk_id not in chunk_ids:
            bad("dangling_binding", chunk_id,
                f"binding points at unknown chunk {chunk_id!r}")
        if object_id not in object_ids:
            bad("dangling_binding", object_id,
                f"binding points at unknown object {object_id!r}")
        else:
            bound.add(object_id)

    # Orphan check: undirected reachability from any bound object.
    neighbours: dict[str, set[str]] = {obj_id: set() for obj_id in object_ids}
    for rel in meta.content.relations:
        if rel.from_id in object_ids and rel.to_id in object_ids:
            neighbours[rel.from_id].add(rel.to_id)
            neighbours[rel.to_id].add(rel.from_id)
    reachable = set(bound)
    frontier = list(bound)
    while frontier:
        node = frontier.pop()
        for nxt in neighbours.get(node, ()):
            if nxt not in reachable:
                reachable.add(nxt)
                frontier.append(nxt)
    for obj in meta.content.objects:
        if obj.id not in reachable:
            warnings.append(Violation(
                "orphan_object", obj.id,
                f"object {obj.id!r} is not reachable from any chunk binding"))

    return ValidationReport(tuple(violations), tuple(warnings))


def prerequisite_closure(meta: MetaOntology, chunk_id: str) -> list[Chunk]:
    """All chunks that must be studied before chunk_id, prerequisites first.

    The result covers every transitive predecessor under "precedes" and is
    topologically ordered; chunks with no ordering constraint between them
    appear in ascending id order. chunk_id itself is not included.
    """
    chunk_map = meta.didactic.chunk_map()
    if chunk_id not in chunk_map:
        raise UnknownChunk(chunk_id)
    edges = _resolvable_edges(meta.didactic)
    upstream = dag.ancestors(edges, chunk_id)
    induced = [(src, dst) for src, dst in edges if src in upstream and dst in upstream]
    ordered = dag.topological_order(upstream, induced)
    return [chunk_map[cid] for cid in ordered]


def shared_chunks(a: MetaOntology, b: MetaOntology) -> list[tuple[Chunk, Chunk]]:
    """Chunk pairs that denote the same concept in two different disciplines.

    Matching is by normalized label. The result is sorted by that label,
    then by the chunk ids on each side, so output is stable across runs.
    """
    if a.discipline_id == b.discipline_id:
        raise SameDiscipline(a.discipline_id)
    by_label: dict[str, list[Chunk]] = {}
    for chunk in b.didactic.chunks:
        by_label.setdefault(chunk.normalized_label(), []).append(chunk)
    pairs: list[tuple[Chunk, Chunk]] = []
    for chunk in a.didactic.chunks:
        for other in by_label.get(chunk.normalized_label(), ()):
            pairs.append((chunk, other))
    pairs.sort(key=lambda pair: (pair[0].normalized_label(), pair[0].id, pair[1].id))
    return pairs
