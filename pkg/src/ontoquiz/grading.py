"""Concept-indexed scoring with symmetric negative marking.

Every answer is worth its question's weight: plus the weight when
correct, minus the weight when wrong, zero when left blank (a policy
flag can turn blanks into wrong answers instead). Scores are summed per
concept index group, so one wrong reply inside a group cancels a correct
reply of equal weight in the same group. A candidate passes only when
the total reaches the pass mark and no group falls below its entry
threshold. Sums are computed with exact arithmetic; integer weights
never pass through floating point.

Separately from points, a grade ceiling is derived from difficulty
levels: all level I questions answered correctly allows Satisfactory,
adding all of level II allows Good, adding level III allows Excellent.
Any level I question wrong or unanswered fails the attempt outright.
A level with no questions counts as satisfied.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import DuplicateAnswer, ParseError, UnknownQuestion
from .questions import Question
from .storage import check_keys

CEILINGS = ("Fail", "Satisfactory", "Good", "Excellent")


def evaluate_response(question: Question, response) -> bool:
    """Compare a candidate response against the answer key.

    A response outside the question's answer domain is simply wrong, not
    an error: candidates can submit anything.
    """
    if response is None:
        return False
    key = question.answer_key
    if question.qtype == "TF":
        return isinstance(response, bool) and response == key
    if question.qtype == "SA":
        return isinstance(response, int) and not isinstance(response, bool) and response == key
    if question.qtype == "MA":
        if not isinstance(response, (list, tuple, set, frozenset)):
            return False
        try:
            chosen = {int(i) for i in response if not isinstance(i, bool)}
        except (TypeError, ValueError):
            return False
        return len(chosen) == len(tuple(response)) and chosen == set(key)
    # Mapping: the response lists, per left item, the chosen right index.
    if not isinstance(response, (list, tuple)):
        return False
    return tuple(response) == key


@dataclass(frozen=True)
class AnswerRecord:
    """One scored reply. response None means the question went unanswered."""

    question_id: str
    response: object
    correct: bool
    signed_points: int | float

    @classmethod
    def for_question(cls, question: Question, response) -> "AnswerRecord":
        if isinstance(response, list):
            # JSON bodies deliver arrays; store the hashable form.
            response = tuple(response)
        correct = evaluate_response(question, response)
        if response is None:
            points: int | float = 0
        else:
            points = question.weight if correct else -question.weight
        return cls(question_id=question.id, response=response,
                   correct=correct, signed_points=points)


@dataclass
class GradingPolicy:
    """Pass mark, per-concept entry thresholds, and blank-answer handling.

    Groups without an explicit threshold use 0: within such a group the
    wrong answers must not outweigh the correct ones. By default a blank
    answer scores nothing; with unanswered_penalty it scores like a wrong
    one.
    """

    pass_mark: int | float = 60
    entry_thresholds: dict[str, int | float] = field(default_factory=dict)
    unanswered_penalty: bool = False

    def threshold_for(self, dci: str) -> int | float:
        return self.entry_thresholds.get(dci, 0)


def policy_from_document(doc: dict, source: str = "<memory>") -> GradingPolicy:
    check_keys(doc, {},
               {"pass_mark": (int, float), "entry_thresholds": dict, "unanswered_penalty": bool},
               source)
    thresholds = doc.get("entry_thresholds", {})
    for dci, value in thresholds.items():
        if not isinstance(dci, str) or isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ParseError(f"{source}: entry_thresholds must map concept indices to numbers")
    return GradingPolicy(
        pass_mark=doc.get("pass_mark", 60),
        entry_thresholds=dict(thresholds),
        unanswered_penalty=doc.get("unanswered_penalty", False),
    )


@dataclass
class GradeReport:
    group_scores: dict[str, int | float]
    total: int | float
    failed_dcis: list[str]
    passed: bool
    ceiling: str


def _index_bank(bank) -> dict[str, Question]:
    by_id: dict[str, Question] = {}
    for question in bank:
        by_id[question.id] = question
    return by_id


def _check_answers(bank_index: dict[str, Question], answers) -> None:
    seen: set[str] = set()
    for record in answers:
        if record.question_id not in bank_index:
            raise UnknownQuestion(record.question_id)
        if record.question_id in seen:
            raise DuplicateAnswer(record.question_id)
        seen.add(record.question_id)


def grade_ceiling(bank, answers) -> str:
    """Cumulative difficulty gate over the answer set.

    Only explicit correct answers count; a question missing from the
    answer list is treated as unanswered.
    """
    bank_index = _index_bank(bank)
    _check_answers(bank_index, answers)
    correct_ids = {
        record.question_id
        for record in answers
        if record.response is not None and record.correct
    }

    def level_cleared(level: str) -> bool:
        return all(q.id in correct_ids for q in bank_index.values() if q.difficulty == level)

    if not level_cleared("I"):
        return "Fail"
    if not level_cleared("II"):
        return "Satisfactory"
    if not level_cleared("III"):
        return "Good"
    return "Excellent"


def grade(bank, answers, policy: GradingPolicy | None = None) -> GradeReport:
    """Score an answer set against a bank under the annulment rule.

    Group scores cover every concept index with at least one scoring
    contribution. Bank questions without a record contribute nothing and
    do not activate their group; unanswered records (response None) only
    contribute when the policy penalises blanks.
    """
    if policy is None:
        policy = GradingPolicy()
    bank_index = _index_bank(bank)
    _check_answers(bank_index, answers)

    groups: dict[str, int | float] = {}
    for record in answers:
        question = bank_index[record.question_id]
        if record.response is None:
            if not policy.unanswered_penalty:
                continue
            points: int | float = -question.weight
        else:
            points = question.weight if record.correct else -question.weight
        groups[question.dci] = groups.get(question.dci, 0) + points

    group_scores = {dci: groups[dci] for dci in sorted(groups)}
    total = sum(group_scores.values())
    failed = [dci for dci, score in group_scores.items() if score < policy.threshold_for(dci)]
    passed = total >= policy.pass_mark and not failed
    return GradeReport(
        group_scores=group_scores,
        total=total,
        failed_dcis=failed,
        passed=passed,
        ceiling=grade_ceiling(bank, answers),
    )


def report_to_document(report: GradeReport) -> dict:
    return {
        "report": {
            "group_scores": dict(report.group_scores),
            "total": report.total,
            "failed_dcis": list(report.failed_dcis),
            "passed": report.passed,
            "ceiling": report.ceiling,
        }
    }


def report_to_json(report: GradeReport) -> str:
    return json.dumps(report_to_document(report), indent=2, ensure_ascii=False)


def load_answers(path: str | Path) -> list[tuple[str, object]]:
    """Read a candidate answer file: {"answers": [{question_id, response}]}."""
    from .storage import load_json_document

    doc = load_json_document(path)
    check_keys(doc, {"answers": list}, {}, str(path))
    out: list[tuple[str, object]] = []
    for i, record in enumerate(doc["answers"]):
        where = f"{path}: answers[{i}]"
        check_keys(record, {"question_id": str}, {"response": object}, where)
        out.append((record["question_id"], record.get("response")))
    return out


def records_for(bank, responses: list[tuple[str, object]]) -> list[AnswerRecord]:
    """Turn (question_id, response) pairs into scored records."""
    bank_index = _index_bank(bank)
    records: list[AnswerRecord] = []
    for question_id, response in responses:
        if question_id not in bank_index:
            raise UnknownQuestion(question_id)
        records.append(AnswerRecord.for_question(bank_index[question_id], response))
    return records
