"""Remediation advice from failed concept groups.

For every concept index that fell below its entry threshold, the engine
points the candidate at the chunk teaching that concept, its learning
materials, and the matching chunks in other disciplines where the same
concept (by label) is taught from a different angle. Output ordering is
didactic: inside each discipline prerequisites come before dependents,
and the home discipline is listed before foreign ones.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import dag
from .errors import UnresolvedDci
from .grading import GradeReport
from .model import ContentMapping, MetaOntology, shared_chunks
from .model import _resolvable_edges  # shared edge filter, not re-derived here


@dataclass(frozen=True)
class Recommendation:
    discipline_id: str
    chunk_id: str
    label: str
    content: tuple[ContentMapping, ...]
    reason: str
    rank: int

    @property
    def no_materials(self) -> bool:
        return not self.content


def _didactic_positions(meta: MetaOntology) -> dict[str, int]:
    order = dag.topological_order(
        [chunk.id for chunk in meta.didactic.chunks],
        _resolvable_edges(meta.didactic),
    )
    return {chunk_id: i for i, chunk_id in enumerate(order)}


def recommend(report: GradeReport, home: MetaOntology,
              others: list[MetaOntology] | tuple[MetaOntology, ...] = (),
              deep: bool = False) -> list[Recommendation]:
    """Build the ordered remediation list for a grade report.

    Each failed concept index must resolve to at least one chunk of the
    home discipline (UnresolvedDci otherwise). Foreign chunks come in
    through label matching against the failed home chunks. With deep=True
    every home prerequisite of a failed chunk is included as well, even
    when its own concept group was fine; without it, prerequisites appear
    only if their own concept index also failed.
    """
    failed = sorted(report.failed_dcis)
    if not failed:
        return []

    home_chunks = home.didactic.chunk_map()
    by_dci: dict[str, list[str]] = {}
    for chunk in home.didactic.chunks:
        by_dci.setdefault(chunk.dci, []).append(chunk.id)
    for dci in failed:
        if dci not in by_dci:
            raise UnresolvedDci(dci)

    # chunk id -> reason (first failed dci that pulled it in)
    selected_home: dict[str, str] = {}
    failed_home_ids: list[str] = []
    for dci in failed:
        for chunk_id in sorted(by_dci[dci]):
            selected_home.setdefault(chunk_id, dci)
            failed_home_ids.append(chunk_id)
    if deep:
        from .model import prerequisite_closure

        for chunk_id in list(failed_home_ids):
            reason = selected_home[chunk_id]
            for prerequisite in prerequisite_closure(home, chunk_id):
                selected_home.setdefault(prerequisite.id, reason)

    # Foreign matches are computed for the failed chunks themselves.
    failed_home_set = set(failed_home_ids)
    selected_foreign: dict[str, dict[str, str]] = {}
    for other in sorted(others, key=lambda o: o.discipline_id):
        matches: dict[str, str] = {}
        for home_chunk, foreign_chunk in shared_chunks(home, other):
            if home_chunk.id in failed_home_set:
                matches.setdefault(foreign_chunk.id, selected_home[home_chunk.id])
        if matches:
            selected_foreign[other.discipline_id] = matches

    recommendations: list[Recommendation] = []

    def emit(meta: MetaOntology, chosen: dict[str, str]) -> None:
        positions = _didactic_positions(meta)
        chunk_map = meta.didactic.chunk_map()
        for chunk_id in sorted(chosen, key=lambda cid: positions[cid]):
            chunk = chunk_map[chunk_id]
            recommendations.append(Recommendation(
                discipline_id=meta.discipline_id,
                chunk_id=chunk.id,
                label=chunk.label,
                content=meta.didactic.mappings_for(chunk.id),
                reason=chosen[chunk_id],
                rank=len(recommendations) + 1,
            ))

    emit(home, selected_home)
    for other in sorted(others, key=lambda o: o.discipline_id):
        chosen = selected_foreign.get(other.discipline_id)
        if chosen:
            emit(other, chosen)
    return recommendations


def recommendation_to_record(rec: Recommendation) -> dict:
    return {
        "discipline_id": rec.discipline_id,
        "chunk_id": rec.chunk_id,
        "label": rec.label,
        "content": [
            {"chunk_id": m.chunk_id, "content_kind": m.content_kind,
             "content_ref": m.content_ref, "discipline_id": m.discipline_id}
            for m in rec.content
        ],
        "reason": rec.reason,
        "rank": rec.rank,
        "no_materials": rec.no_materials,
    }


def recommendations_to_document(recs: list[Recommendation]) -> dict:
    return {"recommendations": [recommendation_to_record(r) for r in recs]}
