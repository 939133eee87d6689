"""Session lifecycle: ordering, answer flow, review gating, persistence."""

import pytest

from conftest import make_tf

from ontoquiz import (
    AlreadyAnswered,
    EmptyBank,
    ModeForbidden,
    ParseError,
    Question,
    SessionClosed,
    SessionStore,
    UnknownBank,
    UnknownDci,
    UnknownQuestion,
    UnknownSession,
    grade,
    records_for,
    report_to_document,
)


@pytest.fixture
def store(tmp_path, ag, cg, threshold_bank):
    banks = {
        "thresh": ("computer-graphics", threshold_bank),
        "hollow": ("computer-graphics", []),
    }
    ontologies = {"computer-graphics": cg, "algebra-geometry": ag}
    return SessionStore(tmp_path, banks, ontologies)


def answer_all(store, session, wrong=()):
    _, questions = store.banks[session.bank_ref]
    by_id = {q.id: q for q in questions}
    for qid in session.question_order:
        question = by_id[qid]
        response = question.answer_key if qid not in wrong else (not question.answer_key)
        store.submit_answer(session.id, qid, response)


class TestCreate:
    def test_unknown_bank(self, store):
        with pytest.raises(UnknownBank):
            store.create("nope", "learning", 1)

    def test_empty_bank(self, store):
        with pytest.raises(EmptyBank):
            store.create("hollow", "learning", 1)

    def test_bad_mode_and_order(self, store):
        with pytest.raises(ParseError):
            store.create("thresh", "practice", 1)
        with pytest.raises(ParseError):
            store.create("thresh", "learning", 1, order="alphabetical")

    def test_order_is_seeded_permutation(self, store, threshold_bank):
        first = store.create("thresh", "learning", seed=7)
        second = store.create("thresh", "learning", seed=7)
        third = store.create("thresh", "learning", seed=8)
        assert sorted(first.question_order) == sorted(q.id for q in threshold_bank)
        assert first.question_order == second.question_order
        assert first.id != second.id
        assert third.question_order != first.question_order

    def test_difficulty_order_is_stable_within_level(self, tmp_path, cg):
        mixed = [
            make_tf("t1", "1.1"),
            Question(id="m1", dci="1.1", qtype="MA", competence="Comprehension",
                     difficulty="II", stem="?", options=("a", "b"), answer_key=(0,)),
            make_tf("t2", "1.2"),
            Question(id="p1", dci="1.2", qtype="Mapping", competence="Application",
                     difficulty="III", stem="?", options=("L1", "L2", "R1", "R2"),
                     answer_key=(0, 1)),
            make_tf("t3", "2.1"),
        ]
        banks = {"mixed": ("computer-graphics", mixed)}
        store = SessionStore(tmp_path, banks, {"computer-graphics": cg})
        shuffled = store.create("mixed", "learning", seed=3, order="shuffle")
        ranked = store.create("mixed", "learning", seed=3, order="difficulty")
        by_id = {q.id: q for q in mixed}
        levels = [by_id[qid].difficulty for qid in ranked.question_order]
        assert levels == sorted(levels, key=("I", "II", "III").index)
        tf_ids = [qid for qid in shuffled.question_order if by_id[qid].qtype == "TF"]
        assert [qid for qid in ranked.question_order if by_id[qid].qtype == "TF"] == tf_ids


class TestAnswerFlow:
    def test_next_walks_the_order(self, store):
        session = store.create("thresh", "learning", seed=1)
        question, state = store.next_question(session.id)
        assert question.id == session.question_order[0]
        assert state.state == "active"
        store.submit_answer(session.id, question.id, question.answer_key)
        question2, _ = store.next_question(session.id)
        assert question2.id == session.question_order[1]

    def test_next_after_last_is_none(self, store):
        session = store.create("thresh", "learning", seed=1)
        answer_all(store, session)
        question, state = store.next_question(session.id)
        assert question is None
        assert len(state.answers) == len(session.question_order)

    def test_record_reflects_correctness(self, store, threshold_bank):
        session = store.create("thresh", "learning", seed=1)
        target = threshold_bank[0]
        record = store.submit_answer(session.id, target.id, not target.answer_key)
        assert record.correct is False
        assert record.signed_points == -target.weight

    def test_resubmission_rejected(self, store, threshold_bank):
        session = store.create("thresh", "learning", seed=1)
        store.submit_answer(session.id, "q1", True)
        with pytest.raises(AlreadyAnswered):
            store.submit_answer(session.id, "q1", False)

    def test_unknown_question_and_session(self, store):
        session = store.create("thresh", "learning", seed=1)
        with pytest.raises(UnknownQuestion):
            store.submit_answer(session.id, "ghost", True)
        with pytest.raises(UnknownSession):
            store.submit_answer("feedbeef", "q1", True)
        with pytest.raises(UnknownSession):
            store.next_question("feedbeef")

    def test_completed_session_is_sealed(self, store):
        session = store.create("thresh", "learning", seed=1)
        store.complete(session.id)
        with pytest.raises(SessionClosed):
            store.submit_answer(session.id, "q1", True)
        with pytest.raises(SessionClosed):
            store.review_concept(session.id, "1.1")


class TestReview:
    def test_learning_view_shape(self, store):
        session = store.create("thresh", "learning", seed=1)
        view = store.review_concept(session.id, "1.1")
        assert view["dci"] == "1.1"
        assert [c["chunk_id"] for c in view["chunks"]] == ["g1"]
        chunk = view["chunks"][0]
        assert chunk["label"] == "Vector"
        assert {o["id"] for o in chunk["objects"]} == {"cvec", "csca"}
        assert all(o["attributes"] for o in chunk["objects"])
        assert chunk["materials"]

    def test_exam_mode_refuses(self, store):
        session = store.create("thresh", "exam", seed=1)
        with pytest.raises(ModeForbidden):
            store.review_concept(session.id, "1.1")

    def test_unknown_dci(self, store):
        session = store.create("thresh", "learning", seed=1)
        with pytest.raises(UnknownDci):
            store.review_concept(session.id, "7.7")


class TestComplete:
    def test_report_matches_direct_grading(self, store, threshold_bank, threshold_responses):
        session = store.create("thresh", "learning", seed=5)
        for qid, response in threshold_responses:
            store.submit_answer(session.id, qid, response)
        report_doc, recs = store.complete(session.id)
        direct = grade(threshold_bank, records_for(threshold_bank, threshold_responses))
        assert report_doc == report_to_document(direct)["report"]
        assert report_doc["failed_dcis"] == ["2.1"]
        assert {r["chunk_id"] for r in recs} == {"g3"}

    def test_unanswered_fill_counts_against_ceiling_only(self, store):
        session = store.create("thresh", "learning", seed=5)
        report_doc, _ = store.complete(session.id)
        assert report_doc["total"] == 0
        assert report_doc["group_scores"] == {}
        assert report_doc["ceiling"] == "Fail"
        assert report_doc["passed"] is False

    def test_idempotent_under_new_policy(self, store, threshold_responses):
        session = store.create("thresh", "learning", seed=5)
        for qid, response in threshold_responses:
            store.submit_answer(session.id, qid, response)
        first, first_recs = store.complete(session.id)
        second, second_recs = store.complete(
            session.id, policy=None, deep=True)
        assert second == first
        assert second_recs == first_recs
        assert store.get_session(session.id).state == "completed"

    def test_cross_discipline_recommendations(self, store):
        session = store.create("thresh", "learning", seed=5)
        answer_all(store, session, wrong={"q1", "q2"})  # sinks group 1.1
        _, recs = store.complete(session.id)
        pairs = [(r["discipline_id"], r["chunk_id"]) for r in recs]
        assert ("computer-graphics", "g1") in pairs
        assert ("algebra-geometry", "v1") in pairs
        assert pairs.index(("computer-graphics", "g1")) < pairs.index(("algebra-geometry", "v1"))


class TestPersistence:
    def rebuild(self, store):
        return SessionStore(store.root, store.banks, store.ontologies)

    def test_active_session_survives_restart(self, store):
        session = store.create("thresh", "learning", seed=9)
        store.submit_answer(session.id, "q3", True)
        store.submit_answer(session.id, "q7", False)
        reborn = self.rebuild(store)
        restored = reborn.get_session(session.id)
        assert restored.serialized() == store.get_session(session.id).serialized()
        # still usable after replay
        reborn.submit_answer(session.id, "q1", True)
        with pytest.raises(AlreadyAnswered):
            reborn.submit_answer(session.id, "q3", True)

    def test_completed_session_survives_restart(self, store, threshold_responses):
        session = store.create("thresh", "learning", seed=9)
        for qid, response in threshold_responses:
            store.submit_answer(session.id, qid, response)
        report_doc, recs = store.complete(session.id)
        reborn = self.rebuild(store)
        restored = reborn.get_session(session.id)
        assert restored.state == "completed"
        assert restored.serialized() == store.get_session(session.id).serialized()
        again, again_recs = reborn.complete(session.id)
        assert again == report_doc
        assert again_recs == recs

    def test_sessions_do_not_bleed_between_roots(self, store, tmp_path_factory):
        store.create("thresh", "learning", seed=9)
        other_root = tmp_path_factory.mktemp("elsewhere")
        other = SessionStore(other_root, store.banks, store.ontologies)
        assert other.list_sessions() == []
