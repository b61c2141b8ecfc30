import json

import pytest
from conftest import doc
from hypothesis import given, strategies as st

from extsum.data_models import SummaryResult
from extsum.errors import EvaluationError
from extsum.processing.rouge import rouge_n_multi
from extsum.services.evaluation import evaluate, render_report, sentence_match

GOLD = doc(
    "g1",
    ["The cat sat.", "A dog ran.", "Birds sing loudly.", "It rained.", "The end came."],
    labels=[0, 1, 1, 1, 0],
)


def result_for(gold, indices, doc_id=None):
    return SummaryResult(
        doc_id=doc_id or gold.id,
        selected_indices=indices,
        probabilities=[0.5] * len(gold.sentences),
        summary_text=[gold.sentences[i].raw for i in indices],
    )


class TestSentenceMatch:
    def test_partial(self):
        score = sentence_match({1, 3, 5}, {1, 2, 3})
        assert (score.precision, score.recall, score.f1) == pytest.approx((2 / 3, 2 / 3, 2 / 3))

    def test_identity(self):
        score = sentence_match({0, 4}, {0, 4})
        assert (score.precision, score.recall, score.f1) == (1.0, 1.0, 1.0)

    def test_disjoint(self):
        score = sentence_match({0}, {1})
        assert (score.precision, score.recall, score.f1) == (0.0, 0.0, 0.0)

    def test_empty_selection(self):
        score = sentence_match(set(), {1})
        assert (score.precision, score.recall, score.f1) == (0.0, 0.0, 0.0)

    def test_empty_gold(self):
        with pytest.raises(EvaluationError):
            sentence_match({1}, set())

    @given(
        st.sets(st.integers(0, 15), min_size=1, max_size=10),
        st.sets(st.integers(0, 15), min_size=1, max_size=10),
    )
    def test_swapping_roles_swaps_precision_and_recall(self, selected, gold):
        forward, swapped = sentence_match(selected, gold), sentence_match(gold, selected)
        assert forward.precision == swapped.recall
        assert forward.recall == swapped.precision
        assert forward.f1 == pytest.approx(swapped.f1)


class TestEvaluate:
    def test_perfect_selection(self):
        report = evaluate([result_for(GOLD, [1, 2, 3])], [GOLD])
        assert [row.name for row in report.rows] == ["sentence_match", "rouge1", "rouge2"]
        for row in report.rows:
            assert (row.precision, row.recall, row.f1) == (1.0, 1.0, 1.0)
        assert report.num_documents == 1

    def test_macro_mean_of_f1(self):
        other = doc("g2", ["One.", "Two.", "Three."], labels=[1, 0, 0])
        report = evaluate([result_for(GOLD, [1, 2, 3]), result_for(other, [1])], [GOLD, other])
        assert report.row("sentence_match").f1 == pytest.approx(0.5)

    def test_micro_pools_counts(self):
        other = doc("g2", ["One.", "Two.", "Three.", "Four."], labels=[1, 0, 0, 0])
        results = [result_for(GOLD, [1, 2, 3]), result_for(other, [1, 2, 3])]
        report = evaluate(results, [GOLD, other], aggregate="micro")
        row = report.row("sentence_match")
        assert row.precision == pytest.approx(3 / 6)
        assert row.recall == pytest.approx(3 / 4)
        macro = evaluate(results, [GOLD, other]).row("sentence_match")
        assert macro.precision == pytest.approx(0.5)
        assert macro.recall == pytest.approx(0.5)

    def test_rouge_rows_agree_with_rouge_module(self):
        result = result_for(GOLD, [0, 1, 4])
        report = evaluate([result], [GOLD])
        candidate = [GOLD.sentences[i].tokens for i in [0, 1, 4]]
        reference = [GOLD.sentences[i].tokens for i in GOLD.gold_indices]
        for order, name in ((1, "rouge1"), (2, "rouge2")):
            expected = rouge_n_multi(candidate, reference, order)
            row = report.row(name)
            assert (row.precision, row.recall, row.f1) == pytest.approx(
                (expected.precision, expected.recall, expected.f1)
            )

    def test_identical_rows_aggregate_to_that_row(self):
        other = GOLD.model_copy(update={"id": "g2"})
        single = evaluate([result_for(GOLD, [0, 1, 2])], [GOLD])
        double = evaluate(
            [result_for(GOLD, [0, 1, 2]), result_for(other, [0, 1, 2])], [GOLD, other]
        )
        for a, b in zip(single.rows, double.rows, strict=True):
            assert (a.precision, a.recall, a.f1) == pytest.approx((b.precision, b.recall, b.f1))

    def test_text_matching(self):
        gold = doc("g1", ["Alpha  beta.", "Gamma.", "Delta."], labels=[1, 0, 0])
        result = SummaryResult(
            doc_id="g1",
            selected_indices=[0],
            probabilities=[0.9],
            summary_text=["alpha beta."],
        )
        report = evaluate([result], [gold], matching="text")
        assert report.row("sentence_match").f1 == 1.0

    def test_per_document_rows(self):
        report = evaluate([result_for(GOLD, [1, 2, 3])], [GOLD], per_document=True)
        assert [d.doc_id for d in report.per_document] == ["g1"]
        assert report.per_document[0].rows == report.rows

    def test_unknown_document(self):
        with pytest.raises(EvaluationError, match="without a gold document"):
            evaluate([result_for(GOLD, [1], doc_id="zzz")], [GOLD])

    def test_gold_without_labels(self):
        unlabeled = doc("g1", ["A.", "B."])
        with pytest.raises(EvaluationError, match="no labels"):
            evaluate([result_for(unlabeled, [0])], [unlabeled])


class TestRenderReport:
    def test_perfect_table(self):
        text, record = render_report(evaluate([result_for(GOLD, [1, 2, 3])], [GOLD]))
        lines = text.splitlines()
        assert lines[0].split() == ["Score", "Precision", "Recall", "F1"]
        body = lines[2:5]
        assert body[0].startswith("Sentence matching gold standard")
        assert body[1].startswith("ROUGE-1")
        assert body[2].startswith("ROUGE-2")
        for line in body:
            assert line.split()[-3:] == ["1.000", "1.000", "1.000"]
        assert json.loads(record)["rows"][0]["f1"] == 1.0

    def test_three_decimals(self):
        other = doc("g2", ["One.", "Two.", "Three."], labels=[1, 1, 1])
        report = evaluate([result_for(other, [0, 1])], [other])
        text, _ = render_report(report)
        assert "0.667" in text.splitlines()[2]
