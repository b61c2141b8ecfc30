from pathlib import Path
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

from extsum.tokenization import tokenize


class Sentence(BaseModel):
    """
    Represents one sentence of an article.
    The tokens are always the deterministic tokenization of the raw text,
    so a Sentence is fully described by its raw string.
    """

    model_config = ConfigDict(frozen=True)

    raw: str = Field(..., description="The original surface text of the sentence")
    tokens: list[str] = Field(
        default_factory=list, description="Lowercased tokens derived from the raw text"
    )

    @model_validator(mode="before")
    @classmethod
    def _derive_tokens(cls, data):
        if isinstance(data, str):
            return {"raw": data, "tokens": tokenize(data)}
        if isinstance(data, dict) and "raw" in data:
            return {**data, "tokens": tokenize(data["raw"])}
        return data

    @classmethod
    def from_text(cls, raw: str) -> "Sentence":
        return cls(raw=raw)


class Document(BaseModel):
    """
    Represents an article as an ordered list of sentences, with an optional
    abstractive summary and optional binary extractive labels.
    """

    model_config = ConfigDict(frozen=True)

    id: str = Field(..., description="Unique identifier of the article")
    sentences: list[Sentence] = Field(
        ..., min_length=1, description="Sentences in original article order"
    )
    abstractive: list[Sentence] | None = Field(
        default=None, description="Human-written abstractive summary, one entry per sentence"
    )
    labels: list[int] | None = Field(
        default=None, description="Binary extractive labels, one per sentence"
    )

    @model_validator(mode="after")
    def _check_labels(self):
        if self.labels is None:
            return self
        if len(self.labels) != len(self.sentences):
            raise ValueError(
                f"label length mismatch: {len(self.labels)} labels "
                f"for {len(self.sentences)} sentences"
            )
        if any(label not in (0, 1) for label in self.labels):
            raise ValueError("labels must be 0 or 1")
        if sum(self.labels) < 1:
            raise ValueError("labels must mark at least one sentence")
        return self

    @property
    def abstractive_tokens(self) -> list[str]:
        """All abstractive-summary tokens, concatenated in order."""
        if not self.abstractive:
            return []
        return [token for sentence in self.abstractive for token in sentence.tokens]

    @property
    def gold_indices(self) -> list[int]:
        if self.labels is None:
            return []
        return [i for i, label in enumerate(self.labels) if label == 1]

    def with_labels(self, labels: list[int]) -> "Document":
        return Document(
            id=self.id, sentences=self.sentences, abstractive=self.abstractive, labels=labels
        )


class ScoreTriple(BaseModel):
    """
    Represents a precision/recall/F1 triple.
    F1 is the harmonic mean of precision and recall, or 0 when both are 0.
    """

    model_config = ConfigDict(frozen=True)

    precision: float = Field(..., ge=0.0, le=1.0)
    recall: float = Field(..., ge=0.0, le=1.0)
    f1: float = Field(..., ge=0.0, le=1.0)

    @classmethod
    def from_counts(cls, overlap: int, candidate_total: int, reference_total: int):
        precision = overlap / candidate_total if candidate_total > 0 else 0.0
        recall = overlap / reference_total if reference_total > 0 else 0.0
        return cls.from_precision_recall(precision, recall)

    @classmethod
    def from_precision_recall(cls, precision: float, recall: float):
        if precision + recall > 0:
            f1 = 2 * precision * recall / (precision + recall)
        else:
            f1 = 0.0
        return cls(precision=precision, recall=recall, f1=f1)


class RougeScore(ScoreTriple):
    """ROUGE-N precision, recall and F1 for one candidate/reference pair."""


class LabeledDocument(BaseModel):
    """
    Represents a document after auto-annotation.
    The scores are the per-sentence ROUGE-1 F1 against the abstractive summary.
    """

    model_config = ConfigDict(frozen=True)

    document: Document = Field(..., description="The document with labels populated")
    scores: list[float] = Field(..., description="Per-sentence ROUGE-1 F1 scores")

    @model_validator(mode="after")
    def _check_alignment(self):
        if self.document.labels is None:
            raise ValueError("labeled document has no labels")
        if len(self.scores) != len(self.document.sentences):
            raise ValueError("one score per sentence is required")
        return self


class AnnotationResult(BaseModel):
    """Outcome of annotating a corpus: labeled documents plus the skipped ones."""

    documents: list[LabeledDocument] = Field(default_factory=list)
    skipped: dict[str, str] = Field(
        default_factory=dict, description="Skipped document ids mapped to the reason"
    )


class SummaryResult(BaseModel):
    """
    Represents the extractive summary produced for one document.
    Selected indices are ascending, so the summary keeps the article order.
    """

    model_config = ConfigDict(frozen=True)

    doc_id: str = Field(..., description="Id of the summarized document")
    selected_indices: list[int] = Field(..., description="Selected sentence indices, ascending")
    probabilities: list[float] = Field(..., description="Selection probability per sentence")
    summary_text: list[str] = Field(..., description="Raw text of the selected sentences")

    @model_validator(mode="after")
    def _check_selection(self):
        indices = self.selected_indices
        if any(b <= a for a, b in zip(indices, indices[1:], strict=False)):
            raise ValueError("selected indices must be strictly ascending")
        if indices and (indices[0] < 0 or indices[-1] >= len(self.probabilities)):
            raise ValueError("selected index out of range")
        if len(self.summary_text) != len(indices):
            raise ValueError("one summary sentence per selected index is required")
        return self


class SummarizationRun(BaseModel):
    """Results of a corpus summarization run and the documents that failed."""

    results: list[SummaryResult] = Field(default_factory=list)
    failures: dict[str, str] = Field(default_factory=dict)


MetricName = Literal["sentence_match", "rouge1", "rouge2"]
METRIC_ORDER: tuple[MetricName, ...] = ("sentence_match", "rouge1", "rouge2")


class MetricRow(ScoreTriple):
    """One row of the evaluation table."""

    name: MetricName = Field(..., description="Metric name")


class DocumentEvaluation(BaseModel):
    doc_id: str
    rows: list[MetricRow]


class EvaluationReport(BaseModel):
    """
    Represents the corpus-level evaluation table: sentence matching against the
    gold extractive summary, ROUGE-1 and ROUGE-2, in that order.
    """

    rows: list[MetricRow] = Field(..., min_length=3, max_length=3)
    num_documents: int = Field(..., ge=0)
    aggregate: Literal["macro", "micro"] = Field(default="macro")
    per_document: list[DocumentEvaluation] | None = Field(default=None)

    @model_validator(mode="after")
    def _check_order(self):
        if tuple(row.name for row in self.rows) != METRIC_ORDER:
            raise ValueError(f"rows must be ordered as {METRIC_ORDER}")
        return self

    def row(self, name: MetricName) -> MetricRow:
        return next(row for row in self.rows if row.name == name)


class TrainReport(BaseModel):
    """Summary of a training run."""

    epoch_losses: list[float] = Field(..., description="Mean document loss per epoch")
    initial_loss: float = Field(..., description="Mean loss before the first update")
    monitor_losses: list[float] = Field(default_factory=list)
    checkpoint_path: Path | None = Field(default=None)
    seconds: float = Field(..., ge=0.0, description="Wall-clock duration")
    documents_seen: int = Field(..., ge=0)
    skipped: list[str] = Field(default_factory=list)
