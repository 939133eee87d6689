"""Question bank generation from a discipline ontology.

Four question templates are drawn from the content half of the ontology:

* TFraises a single attribute assertion, either as authored (key: true)
  or with the value swapped for a sibling object's value (key: false).
* SA asks which attribute value belongs to an object, with sibling values
  as distractors.
* MA asks which objects stand in a named relation with an anchor object;
  distractors are same-category objects outside the relation.
* Mapping asks the candidate to match 3 to 5 same-category objects to
  their values for one attribute.

Generation is a pure function of (ontology, spec): the seeded generator
is split per question index, so producing question 7 never depends on
whether questions 0..6 were produced in the same process. Each question
carries the concept index (dci) of its source chunk.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import InsufficientFacts, ParseError, UnknownChunk
from .model import DCI_PATTERN, Attribute, ContentObject, MetaOntology, normalize_label
from .storage import check_keys

QTYPES = ("TF", "SA", "MA", "Mapping")

COMPETENCE_BY_QTYPE = {
    "TF": "Knowledge",
    "SA": "Knowledge",
    "MA": "Comprehension",
    "Mapping": "Application",
}

DIFFICULTY_BY_QTYPE = {
    "TF": "I",
    "SA": "I",
    "MA": "II",
    "Mapping": "III",
}

DIFFICULTY_LEVELS = ("I", "II", "III")

DISTRACTOR_POLICIES = ("sibling-category",)

_MAPPING_MIN = 3
_MAPPING_MAX = 5
_MAX_DISTRACTORS = 3


@dataclass(frozen=True)
class Question:
    """One generated question. The answer_key domain depends on qtype:

    TF: bool / SA: option index / MA: sorted tuple of option indices /
    Mapping: permutation tuple, pairing left option i with right option
    answer_key[i]. For Mapping questions the options list holds the left
    column followed by the right column, each of length len(options) // 2.
    """

    id: str
    dci: str
    qtype: str
    competence: str
    difficulty: str
    stem: str
    options: tuple[str, ...]
    answer_key: bool | int | tuple[int, ...]
    weight: int | float = 1

    def __post_init__(self):
        object.__setattr__(self, "options", tuple(self.options))
        if self.qtype not in QTYPES:
            raise ValueError(f"question {self.id!r}: unknown qtype {self.qtype!r}")
        if self.competence != COMPETENCE_BY_QTYPE[self.qtype]:
            raise ValueError(
                f"question {self.id!r}: {self.qtype} questions probe "
                f"{COMPETENCE_BY_QTYPE[self.qtype]}, not {self.competence!r}")
        if self.difficulty != DIFFICULTY_BY_QTYPE[self.qtype]:
            raise ValueError(
                f"question {self.id!r}: {self.qtype} questions sit at difficulty "
                f"{DIFFICULTY_BY_QTYPE[self.qtype]}, not {self.difficulty!r}")
        if isinstance(self.weight, bool) or not isinstance(self.weight, (int, float)) or self.weight <= 0:
            raise ValueError(f"question {self.id!r}: weight must be a positive number")
        if not self.stem.strip():
            raise ValueError(f"question {self.id!r}: empty stem")
        if not DCI_PATTERN.match(self.dci):
            raise ValueError(f"question {self.id!r}: malformed concept index {self.dci!r}")

        if self.qtype == "TF":
            if not isinstance(self.answer_key, bool):
                raise ValueError(f"question {self.id!r}: TF key must be a boolean")
            if self.options:
                raise ValueError(f"question {self.id!r}: TF questions take no options")
            return

        if len(self.options) != len(set(self.options)):
            raise ValueError(f"question {self.id!r}: options must be pairwise distinct")

        if self.qtype == "SA":
            if len(self.options) < 2:
                raise ValueError(f"question {self.id!r}: SA needs at least two options")
            key = self.answer_key
            if isinstance(key, bool) or not isinstance(key, int) or not 0 <= key < len(self.options):
                raise ValueError(f"question {self.id!r}: SA key must index an option")
        elif self.qtype == "MA":
            if len(self.options) < 2:
                raise ValueError(f"question {self.id!r}: MA needs at least two options")
            key = tuple(self.answer_key) if not isinstance(self.answer_key, tuple) else self.answer_key
            object.__setattr__(self, "answer_key", tuple(sorted(set(key))))
            key = self.answer_key
            if not key or any(isinstance(i, bool) or not isinstance(i, int) or not 0 <= i < len(self.options) for i in key):
                raise ValueError(f"question {self.id!r}: MA key must be a non-empty set of option indices")
        else:  # Mapping
            if len(self.options) < 2 * 2 or len(self.options) % 2:
                raise ValueError(f"question {self.id!r}: Mapping needs matching left and right columns of two or more")
            half = len(self.options) // 2
            left, right = self.options[:half], self.options[half:]
            if len(set(left)) != half or len(set(right)) != half:
                raise ValueError(f"question {self.id!r}: Mapping columns must not repeat entries")
            key = tuple(self.answer_key) if not isinstance(self.answer_key, tuple) else self.answer_key
            object.__setattr__(self, "answer_key", key)
            if sorted(key) != list(range(half)):
                raise ValueError(f"question {self.id!r}: Mapping key must be a permutation of the right column")

    def mapping_columns(self) -> tuple[tuple[str, ...], tuple[str, ...]]:
        half = len(self.options) // 2
        return self.options[:half], self.options[half:]


@dataclass(frozen=True)
class GenerationSpec:
    """What to generate: counts per qtype over a set of chunks.

    scope=None means every chunk in the ontology. Weights default to 1
    point per question and can be overridden per qtype.
    """

    seed: int
    counts: dict[str, int] = field(default_factory=dict)
    scope: tuple[str, ...] | None = None
    distractor_pool: str = "sibling-category"
    default_weight: dict[str, int | float] = field(default_factory=dict)

    def __post_init__(self):
        for qtype in self.counts:
            if qtype not in QTYPES:
                raise ValueError(f"unknown question type in counts: {qtype!r}")
        for qtype, count in self.counts.items():
            if isinstance(count, bool) or not isinstance(count, int) or count < 0:
                raise ValueError(f"count for {qtype} must be a non-negative integer")
        if self.distractor_pool not in DISTRACTOR_POLICIES:
            raise ValueError(f"unknown distractor policy {self.distractor_pool!r}")
        for qtype, weight in self.default_weight.items():
            if qtype not in QTYPES:
                raise ValueError(f"unknown question type in default_weight: {qtype!r}")
            if isinstance(weight, bool) or not isinstance(weight, (int, float)) or weight <= 0:
                raise ValueError(f"default weight for {qtype} must be positive")
        if self.scope is not None:
            object.__setattr__(self, "scope", tuple(self.scope))

    def weight_for(self, qtype: str) -> int | float:
        return self.default_weight.get(qtype, 1)


def generation_spec_from_document(doc: dict, source: str = "<memory>") -> GenerationSpec:
    check_keys(doc, {"seed": int},
               {"counts": dict, "scope": list, "distractor_pool": str, "default_weight": dict},
               source)
    try:
        return GenerationSpec(
            seed=doc["seed"],
            counts=dict(doc.get("counts", {})),
            scope=tuple(doc["scope"]) if "scope" in doc else None,
            distractor_pool=doc.get("distractor_pool", "sibling-category"),
            default_weight=dict(doc.get("default_weight", {})),
        )
    except ValueError as exc:
        raise ParseError(f"{source}: {exc}") from exc


class _ContentIndex:
    """Deterministic lookup structures over the content half of an ontology."""

    def __init__(self, meta: MetaOntology):
        self.meta = meta
        self.objects = {obj.id: obj for obj in meta.content.objects}
        self.by_category: dict[str, list[ContentObject]] = {}
        for obj in meta.content.objects:
            self.by_category.setdefault(obj.category, []).append(obj)
        self.partners: dict[tuple[str, str], list[str]] = {}
        for rel in meta.content.relations:
            if rel.from_id in self.objects and rel.to_id in self.objects:
                self.partners.setdefault((rel.from_id, rel.kind), []).append(rel.to_id)
                self.partners.setdefault((rel.to_id, rel.kind), []).append(rel.from_id)
        self.kinds_by_object: dict[str, list[str]] = {}
        for obj_id, kind in self.partners:
            self.kinds_by_object.setdefault(obj_id, []).append(kind)
        for obj_id in self.kinds_by_object:
            self.kinds_by_object[obj_id] = sorted(set(self.kinds_by_object[obj_id]))

    def bound_objects(self, chunk_id: str) -> list[ContentObject]:
        ids = self.meta.bound_object_ids(chunk_id)
        return [self.objects[obj_id] for obj_id in sorted(ids) if obj_id in self.objects]

    def sibling_values(self, obj: ContentObject, attr: Attribute) -> list[str]:
        """Distinct display values for the same attribute on same-category siblings."""
        correct_norm = normalize_label(attr.display())
        seen = {correct_norm}
        values: list[str] = []
        for sibling in self.by_category.get(obj.category, ()):
            if sibling.id == obj.id:
                continue
            other = sibling.attribute(attr.name)
            if other is None:
                continue
            norm = normalize_label(other.display())
            if norm not in seen:
                seen.add(norm)
                values.append(other.display())
        return values

    def relation_partners(self, obj: ContentObject, kind: str) -> list[ContentObject]:
        ids = sorted(set(self.partners.get((obj.id, kind), ())))
        partners: list[ContentObject] = []
        seen: set[str] = set()
        for obj_id in ids:
            partner = self.objects[obj_id]
            norm = partner.normalized_label()
            if norm not in seen and norm != obj.normalized_label():
                seen.add(norm)
                partners.append(partner)
        return partners

    def relation_distractors(self, obj: ContentObject, kind: str,
                             partners: list[ContentObject]) -> list[ContentObject]:
        partner_ids = {p.id for p in partners}
        taken_norms = {p.normalized_label() for p in partners} | {obj.normalized_label()}
        categories = sorted({p.category for p in partners})
        distractors: list[ContentObject] = []
        for category in categories:
            for candidate in self.by_category.get(category, ()):
                if candidate.id == obj.id or candidate.id in partner_ids:
                    continue
                if candidate.id in set(self.partners.get((obj.id, kind), ())):
                    continue
                norm = candidate.normalized_label()
                if norm in taken_norms:
                    continue
                taken_norms.add(norm)
                distractors.append(candidate)
        return distractors

    def matching_pool(self, category: str, attr_name: str) -> list[tuple[ContentObject, str]]:
        """Objects of one category with pairwise distinct values for one attribute."""
        pool: list[tuple[ContentObject, str]] = []
        value_norms: set[str] = set()
        label_norms: set[str] = set()
        for obj in self.by_category.get(category, ()):
            attr = obj.attribute(attr_name)
            if attr is None:
                continue
            value_norm = normalize_label(attr.display())
            label_norm = obj.normalized_label()
            if value_norm in value_norms or label_norm in label_norms:
                continue
            value_norms.add(value_norm)
            label_norms.add(label_norm)
            pool.append((obj, attr.display()))
        return pool


def _attribute_facts(index: _ContentIndex, chunk_id: str) -> list[tuple[ContentObject, Attribute, list[str]]]:
    facts = []
    for obj in index.bound_objects(chunk_id):
        for attr in obj.attributes:
            siblings = index.sibling_values(obj, attr)
            if siblings:
                facts.append((obj, attr, siblings))
    return facts


def _relation_facts(index: _ContentIndex, chunk_id: str):
    facts = []
    for obj in index.bound_objects(chunk_id):
        for kind in index.kinds_by_object.get(obj.id, ()):
            partners = index.relation_partners(obj, kind)
            if not partners:
                continue
            distractors = index.relation_distractors(obj, kind, partners)
            if distractors:
                facts.append((obj, kind, partners, distractors))
    return facts


def _matching_facts(index: _ContentIndex, chunk_id: str):
    bound_ids = {obj.id for obj in index.bound_objects(chunk_id)}
    facts = []
    seen: set[tuple[str, str]] = set()
    for obj in index.bound_objects(chunk_id):
        for attr in obj.attributes:
            key = (obj.category, attr.name)
            if key in seen:
                continue
            seen.add(key)
            pool = index.matching_pool(obj.category, attr.name)
            if len(pool) < _MAPPING_MIN:
                continue
            anchors = [entry for entry in pool if entry[0].id in bound_ids]
            if anchors:
                facts.append((obj.category, attr.name, pool, anchors[0]))
    return facts


def _question_rng(seed: int, qtype: str, index: int) -> random.Random:
    # String seeding is stable across processes and platforms.
    return random.Random(f"{seed}:{qtype}:{index}")


def _build_tf(fact, rng: random.Random, qid: str, dci: str, weight) -> Question:
    obj, attr, siblings = fact
    truth = rng.choice((True, False))
    shown = attr.display() if truth else rng.choice(siblings)
    stem = f"True or false: the {attr.name} of {obj.label} is {shown}."
    return Question(id=qid, dci=dci, qtype="TF", competence="Knowledge", difficulty="I",
                    stem=stem, options=(), answer_key=truth, weight=weight)


def _build_sa(fact, rng: random.Random, qid: str, dci: str, weight) -> Question:
    obj, attr, siblings = fact
    correct = attr.display()
    distractors = rng.sample(siblings, min(_MAX_DISTRACTORS, len(siblings)))
    options = [correct, *distractors]
    rng.shuffle(options)
    stem = f"Which value of {attr.name} belongs to {obj.label}?"
    return Question(id=qid, dci=dci, qtype="SA", competence="Knowledge", difficulty="I",
                    stem=stem, options=tuple(options), answer_key=options.index(correct),
                    weight=weight)


def _build_ma(fact, rng: random.Random, qid: str, dci: str, weight) -> Question:
    obj, kind, partners, distractors = fact
    if len(partners) > _MAX_DISTRACTORS:
        partners = sorted(rng.sample(partners, _MAX_DISTRACTORS), key=lambda o: o.id)
    chosen_distractors = rng.sample(distractors, min(_MAX_DISTRACTORS, len(distractors)))
    options = [p.label for p in partners] + [d.label for d in chosen_distractors]
    rng.shuffle(options)
    answer = tuple(sorted(options.index(p.label) for p in partners))
    stem = f'Which of the following stand in the "{kind}" relation with {obj.label}?'
    return Question(id=qid, dci=dci, qtype="MA", competence="Comprehension", difficulty="II",
                    stem=stem, options=tuple(options), answer_key=answer, weight=weight)


def _build_mapping(fact, rng: random.Random, qid: str, dci: str, weight) -> Question:
    category, attr_name, pool, anchor = fact
    size = min(_MAPPING_MAX, len(pool))
    others = [entry for entry in pool if entry[0].id != anchor[0].id]
    picked = [anchor, *rng.sample(others, size - 1)]
    picked.sort(key=lambda entry: entry[0].id)
    left = [entry[0].label for entry in picked]
    values = [entry[1] for entry in picked]
    right = list(values)
    rng.shuffle(right)
    key = tuple(right.index(value) for value in values)
    stem = f"Match each {category} to its {attr_name}."
    return Question(id=qid, dci=dci, qtype="Mapping", competence="Application", difficulty="III",
                    stem=stem, options=tuple(left + right), answer_key=key, weight=weight)


_FACT_BUILDERS = {
    "TF": (_attribute_facts, _build_tf),
    "SA": (_attribute_facts, _build_sa),
    "MA": (_relation_facts, _build_ma),
    "Mapping": (_matching_facts, _build_mapping),
}


def generate_bank(meta: MetaOntology, spec: GenerationSpec) -> list[Question]:
    """Produce exactly the requested number of questions per type.

    Questions are spread round-robin over the scoped chunks in ascending
    id order; each question's randomness (variant choice, distractor
    sample, option order) comes from a generator derived from the spec
    seed and the question's own index. Raises InsufficientFacts naming
    the question type and chunk when the ontology cannot supply a fact.
    """
    chunk_map = meta.didactic.chunk_map()
    if spec.scope is None:
        scope = [chunk.id for chunk in meta.didactic.chunks]
    else:
        scope = sorted(set(spec.scope))
        for chunk_id in scope:
            if chunk_id not in chunk_map:
                raise UnknownChunk(chunk_id)

    index = _ContentIndex(meta)
    fact_cache: dict[tuple[str, str], list] = {}

    def facts_for(qtype: str, chunk_id: str) -> list:
        key = (qtype, chunk_id)
        if key not in fact_cache:
            fact_cache[key] = _FACT_BUILDERS[qtype][0](index, chunk_id)
        return fact_cache[key]

    bank: list[Question] = []
    for qtype in QTYPES:
        count = spec.counts.get(qtype, 0)
        if count and not scope:
            raise InsufficientFacts(qtype, None, f"cannot produce {qtype} questions: empty chunk scope")
        weight = spec.weight_for(qtype)
        build = _FACT_BUILDERS[qtype][1]
        for i in range(count):
            chunk_id = scope[i % len(scope)]
            occurrence = i // len(scope)
            facts = facts_for(qtype, chunk_id)
            if occurrence >= len(facts):
                raise InsufficientFacts(
                    qtype, chunk_id,
                    f"cannot produce {qtype} question {i + 1}: chunk {chunk_id!r} supplies "
                    f"only {len(facts)} usable fact(s)")
            rng = _question_rng(spec.seed, qtype, i)
            qid = f"{qtype.lower()}-{i + 1:03d}"
            bank.append(build(facts[occurrence], rng, qid, chunk_map[chunk_id].dci, weight))
    return bank


def question_to_record(question: Question) -> dict:
    key = question.answer_key
    if isinstance(key, tuple):
        key = list(key)
    return {
        "id": question.id,
        "dci": question.dci,
        "qtype": question.qtype,
        "competence": question.competence,
        "difficulty": question.difficulty,
        "stem": question.stem,
        "options": list(question.options),
        "answer_key": key,
        "weight": question.weight,
    }


def question_from_record(record: dict, where: str) -> Question:
    check_keys(record,
               {"id": str, "dci": str, "qtype": str, "competence": str, "difficulty": str,
                "stem": str, "options": list, "answer_key": (bool, int, list),
                "weight": (int, float)},
               {}, where)
    key = record["answer_key"]
    if isinstance(key, list):
        key = tuple(key)
    try:
        return Question(
            id=record["id"], dci=record["dci"], qtype=record["qtype"],
            competence=record["competence"], difficulty=record["difficulty"],
            stem=record["stem"], options=tuple(record["options"]),
            answer_key=key, weight=record["weight"],
        )
    except ValueError as exc:
        raise ParseError(f"{where}: {exc}") from exc


def bank_to_document(questions: list[Question] | tuple[Question, ...], discipline_id: str) -> dict:
    return {
        "discipline_id": discipline_id,
        "questions": [question_to_record(q) for q in questions],
    }


def parse_bank(doc: dict, source: str = "<memory>") -> tuple[str, list[Question]]:
    check_keys(doc, {"discipline_id": str, "questions": list}, {}, source)
    questions = [
        question_from_record(record, f"{source}: questions[{i}]")
        for i, record in enumerate(doc["questions"])
    ]
    seen: set[str] = set()
    for question in questions:
        if question.id in seen:
            raise ParseError(f"{source}: duplicate question id {question.id!r}")
        seen.add(question.id)
    return doc["discipline_id"], questions
