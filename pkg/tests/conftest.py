"""Shared fixtures: sample disciplines and a hand-built scoring scenario."""

import json
import shutil
from pathlib import Path

import pytest

from ontoquiz import Question, bank_to_document, load_ontology

SAMPLEDATA = Path(__file__).resolve().parent.parent / "sampledata"


@pytest.fixture(scope="session")
def ag_path() -> Path:
    return SAMPLEDATA / "ontologies" / "algebra_geometry.json"


@pytest.fixture(scope="session")
def cg_path() -> Path:
    return SAMPLEDATA / "ontologies" / "computer_graphics.json"


@pytest.fixture(scope="session")
def ag(ag_path):
    return load_ontology(ag_path)


@pytest.fixture(scope="session")
def cg(cg_path):
    return load_ontology(cg_path)


def make_tf(qid: str, dci: str, weight=1, key: bool = True) -> Question:
    return Question(
        id=qid, dci=dci, qtype="TF", competence="Knowledge", difficulty="I",
        stem=f"True or false: statement {qid}.", options=(), answer_key=key,
        weight=weight,
    )


@pytest.fixture
def threshold_bank() -> list[Question]:
    """Nine weighted questions over three concept groups.

    Answered as in threshold_responses the groups score +60, +15 and -10:
    a 65-point total that clears a pass mark of 60 while one group sits
    below its zero entry threshold.
    """
    spec = [
        ("q1", "1.1", 20), ("q2", "1.1", 20), ("q3", "1.1", 20),
        ("q4", "1.2", 10), ("q5", "1.2", 5), ("q6", "1.2", 10),
        ("q7", "2.1", 5), ("q8", "2.1", 10), ("q9", "2.1", 5),
    ]
    return [make_tf(qid, dci, weight) for qid, dci, weight in spec]


@pytest.fixture
def threshold_responses(threshold_bank) -> list[tuple[str, object]]:
    wrong = {"q5", "q8", "q9"}
    out = []
    for question in threshold_bank:
        key = question.answer_key
        out.append((question.id, key if question.id not in wrong else not key))
    return out


@pytest.fixture
def service_data_dir(tmp_path, threshold_bank) -> Path:
    """A service data directory with both disciplines and two banks."""
    data = tmp_path / "data"
    (data / "ontologies").mkdir(parents=True)
    (data / "banks").mkdir()
    for name in ("algebra_geometry.json", "computer_graphics.json"):
        shutil.copy(SAMPLEDATA / "ontologies" / name, data / "ontologies" / name)
    shutil.copy(SAMPLEDATA / "banks" / "graphics_demo.json", data / "banks" / "graphics_demo.json")
    bank_doc = bank_to_document(threshold_bank, "computer-graphics")
    (data / "banks" / "threshold_demo.json").write_text(
        json.dumps(bank_doc, indent=2) + "\n", encoding="utf-8")
    return data
