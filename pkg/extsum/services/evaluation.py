"""
Corpus evaluation: sentence matching against the gold extractive summary, plus
ROUGE-1 and ROUGE-2 of the generated summary against the gold summary sentences.

Macro aggregation averages per-document precision, recall and F1 (F1 is averaged,
not recomputed from the averaged precision and recall). Micro aggregation pools the
match and n-gram counts of all documents before scoring.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Literal

import numpy as np

from extsum.data_models import (
    METRIC_ORDER,
    Document,
    DocumentEvaluation,
    EvaluationReport,
    MetricRow,
    ScoreTriple,
    SummaryResult,
)
from extsum.errors import EvaluationError
from extsum.logging_config import get_logger
from extsum.processing.rouge import overlap_counts, sentence_ngrams
from extsum.tokenization import tokenize

logger = get_logger(__name__)

Aggregate = Literal["macro", "micro"]
Matching = Literal["index", "text"]


@dataclass(frozen=True)
class MatchCounts:
    overlap: int
    candidate_total: int
    reference_total: int

    def score(self) -> ScoreTriple:
        return ScoreTriple.from_counts(self.overlap, self.candidate_total, self.reference_total)

    def __add__(self, other: MatchCounts) -> MatchCounts:
        return MatchCounts(
            self.overlap + other.overlap,
            self.candidate_total + other.candidate_total,
            self.reference_total + other.reference_total,
        )


def _match_counts(selected: set, gold: set) -> MatchCounts:
    if not gold:
        raise EvaluationError("gold extractive summary is empty")
    return MatchCounts(len(selected & gold), len(selected), len(gold))


def sentence_match(selected: set[int], gold: set[int]) -> ScoreTriple:
    """Precision/recall/F1 of the selected sentence set against the gold set."""
    return _match_counts(set(selected), set(gold)).score()


def normalize_sentence(raw: str) -> str:
    return " ".join(raw.lower().split())


def _rouge_counts(candidate: list[list[str]], reference: list[list[str]], order: int):
    return MatchCounts(
        *overlap_counts(sentence_ngrams(candidate, order), sentence_ngrams(reference, order))
    )


def _document_counts(
    result: SummaryResult, gold: Document, matching: Matching
) -> dict[str, MatchCounts]:
    if gold.labels is None:
        raise EvaluationError(f"gold document {gold.id} has no labels")

    gold_indices = gold.gold_indices
    if matching == "index":
        if any(i >= len(gold.sentences) for i in result.selected_indices):
            raise EvaluationError(
                f"result for {result.doc_id} selects sentences beyond the gold document"
            )
        match = _match_counts(set(result.selected_indices), set(gold_indices))
    else:
        selected = {normalize_sentence(s) for s in result.summary_text}
        reference = {normalize_sentence(gold.sentences[i].raw) for i in gold_indices}
        match = _match_counts(selected, reference)

    candidate = [tokenize(text) for text in result.summary_text]
    reference_tokens = [gold.sentences[i].tokens for i in gold_indices]
    return {
        "sentence_match": match,
        "rouge1": _rouge_counts(candidate, reference_tokens, 1),
        "rouge2": _rouge_counts(candidate, reference_tokens, 2),
    }


def _row(name: str, score: ScoreTriple) -> MetricRow:
    return MetricRow(name=name, **score.model_dump())


def _mean_row(name: str, scores: list[ScoreTriple]) -> MetricRow:
    if not scores:
        return MetricRow(name=name, precision=0.0, recall=0.0, f1=0.0)
    return MetricRow(
        name=name,
        precision=float(np.mean([s.precision for s in scores])),
        recall=float(np.mean([s.recall for s in scores])),
        f1=float(np.mean([s.f1 for s in scores])),
    )


def evaluate(
    results: list[SummaryResult],
    gold_corpus: list[Document],
    aggregate: Aggregate = "macro",
    matching: Matching = "index",
    per_document: bool = False,
) -> EvaluationReport:
    gold_by_id = {doc.id: doc for doc in gold_corpus}
    missing = [r.doc_id for r in results if r.doc_id not in gold_by_id]
    if missing:
        raise EvaluationError(f"results without a gold document: {', '.join(missing)}")

    counts = [_document_counts(r, gold_by_id[r.doc_id], matching) for r in results]

    if aggregate == "macro":
        rows = [_mean_row(name, [c[name].score() for c in counts]) for name in METRIC_ORDER]
    elif aggregate == "micro":
        rows = []
        for name in METRIC_ORDER:
            pooled = sum((c[name] for c in counts), MatchCounts(0, 0, 0))
            rows.append(_row(name, pooled.score()))
    else:
        raise EvaluationError(f"unknown aggregation {aggregate!r}")

    details = None
    if per_document:
        details = [
            DocumentEvaluation(
                doc_id=r.doc_id, rows=[_row(name, c[name].score()) for name in METRIC_ORDER]
            )
            for r, c in zip(results, counts, strict=True)
        ]

    logger.info(f"Evaluated {len(results)} documents ({aggregate} average)")
    return EvaluationReport(
        rows=rows, num_documents=len(results), aggregate=aggregate, per_document=details
    )


ROW_LABELS = {
    "sentence_match": "Sentence matching gold standard",
    "rouge1": "ROUGE-1",
    "rouge2": "ROUGE-2",
}


def render_report(report: EvaluationReport) -> tuple[str, str]:
    """Returns (aligned text table, JSON record) for an evaluation report."""
    label_width = max(len(label) for label in ROW_LABELS.values())
    lines = [f"{'Score':<{label_width}}  {'Precision':>9}  {'Recall':>9}  {'F1':>9}"]
    lines.append("-" * len(lines[0]))
    for row in report.rows:
        lines.append(
            f"{ROW_LABELS[row.name]:<{label_width}}  "
            f"{row.precision:>9.3f}  {row.recall:>9.3f}  {row.f1:>9.3f}"
        )
    lines.append(f"({report.num_documents} documents, {report.aggregate} average)")
    text = "\n".join(lines) + "\n"

    record = json.dumps(report.model_dump(mode="json"), indent=2, sort_keys=True) + "\n"
    return text, record
