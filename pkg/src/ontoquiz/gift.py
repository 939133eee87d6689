"""GIFT export for generated question banks.

GIFT is the plain-text question interchange format understood by Moodle
and several other learning platforms. Each question is written as a
comment line carrying the concept index and difficulty, then a
``::name::`` block with the stem and the answer section.
"""

from __future__ import annotations

from pathlib import Path

from .questions import Question

_ESCAPES = {
    "\\": "\\\\",
    "~": "\\~",
    "=": "\\=",
    "#": "\\#",
    "{": "\\{",
    "}": "\\}",
    ":": "\\:",
}


def escape_gift(text: str) -> str:
    out = []
    for char in str(text):
        out.append(_ESCAPES.get(char, char))
    return "".join(out).replace("\n", " ")


def _format_percent(value: float) -> str:
    text = f"{value:.5f}".rstrip("0").rstrip(".")
    return text if text else "0"


def _answers_tf(question: Question) -> str:
    return "{T}" if question.answer_key else "{F}"


def _answers_sa(question: Question) -> str:
    parts = []
    for i, option in enumerate(question.options):
        marker = "=" if i == question.answer_key else "~"
        parts.append(marker + escape_gift(option))
    return "{" + " ".join(parts) + "}"


def _answers_ma(question: Question) -> str:
    correct = set(question.answer_key)
    share = _format_percent(100.0 / len(correct))
    parts = []
    for i, option in enumerate(question.options):
        percent = share if i in correct else f"-{share}"
        parts.append(f"~%{percent}%" + escape_gift(option))
    return "{" + " ".join(parts) + "}"


def _answers_mapping(question: Question) -> str:
    left, right = question.mapping_columns()
    parts = []
    for i, item in enumerate(left):
        target = right[question.answer_key[i]]
        parts.append(f"={escape_gift(item)} -> {escape_gift(target)}")
    return "{" + " ".join(parts) + "}"


_ANSWER_WRITERS = {
    "TF": _answers_tf,
    "SA": _answers_sa,
    "MA": _answers_ma,
    "Mapping": _answers_mapping,
}


def gift_text(bank: list[Question] | tuple[Question, ...]) -> str:
    """Render a bank as one GIFT document. The bank must not be empty."""
    if not bank:
        raise ValueError("cannot export an empty bank")
    blocks = []
    for question in bank:
        comment = f"// dci={question.dci} difficulty={question.difficulty} competence={question.competence}"
        body = f"::{escape_gift(question.id)}:: {escape_gift(question.stem)} " \
               + _ANSWER_WRITERS[question.qtype](question)
        blocks.append(comment + "\n" + body)
    return "\n\n".join(blocks) + "\n"


def export_gift(bank: list[Question] | tuple[Question, ...], path: str | Path) -> None:
    Path(path).write_text(gift_text(bank), encoding="utf-8")
