from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from extsum.config import TrainConfig, dump_config
from extsum.data_models import Document, EvaluationReport, LabeledDocument, TrainReport
from extsum.errors import ExtsumError, NotAnnotatableError, PipelineStageError
from extsum.logging_config import get_logger
from extsum.processing.labeling import annotate_corpus
from extsum.repositories import load_vectors, read_corpus, write_labeled_corpus
from extsum.services.evaluation import evaluate, render_report
from extsum.services.summarization import summarize_corpus
from extsum.services.training import train

logger = get_logger(__name__)

LABELED_FILE = "labeled.jsonl"
CHECKPOINT_FILE = "model.ckpt"
RESULTS_FILE = "results.jsonl"
REPORT_JSON = "report.json"
REPORT_TEXT = "report.txt"
CONFIG_FILE = "config.txt"


@dataclass
class PipelineRun:
    run_dir: Path
    report: EvaluationReport
    train_report: TrainReport
    train_ids: list[str]
    holdout_ids: list[str]


def split_corpus(docs: list, fraction: float, seed: int) -> tuple[list, list]:
    """
    Seeded by-document split into (train, holdout). Both parts keep corpus order.
    The holdout gets round(fraction * n) documents, at least one, and the
    training part is never empty.
    """
    n = len(docs)
    if n < 2:
        raise ExtsumError(f"need at least 2 documents to split, got {n}")
    holdout_size = min(max(1, round(fraction * n)), n - 1)

    order = np.random.default_rng(seed).permutation(n)
    holdout = set(order[:holdout_size].tolist())
    train_part = [doc for i, doc in enumerate(docs) if i not in holdout]
    holdout_part = [doc for i, doc in enumerate(docs) if i in holdout]
    return train_part, holdout_part


def _gold(labeled: LabeledDocument, originals: dict[str, Document]) -> Document:
    original = originals[labeled.document.id]
    return original if original.labels is not None else labeled.document


def run_pipeline(
    corpus_path: str | Path,
    vectors_path: str | Path,
    config: TrainConfig,
    run_dir: str | Path,
) -> PipelineRun:
    """
    label -> split -> train -> summarize (held-out part) -> evaluate.

    Every artifact lands in ``run_dir``: labeled corpus, checkpoint, results,
    the report as text and JSON, and the effective config. Failures are raised
    as PipelineStageError naming the stage.
    """
    run_dir = Path(run_dir)
    run_dir.mkdir(parents=True, exist_ok=True)
    (run_dir / CONFIG_FILE).write_text(dump_config(config), encoding="utf-8")

    stage = "label"
    try:
        docs = read_corpus(corpus_path)
        annotated = annotate_corpus(docs)
        if not annotated.documents:
            raise NotAnnotatableError("no document in the corpus could be annotated")
        write_labeled_corpus(annotated.documents, run_dir / LABELED_FILE)
        logger.info(f"[label] {len(annotated.documents)} labeled documents")

        stage = "split"
        train_docs, holdout = split_corpus(
            annotated.documents, config.holdout_fraction, config.seed
        )
        logger.info(f"[split] {len(train_docs)} training / {len(holdout)} held-out documents")

        stage = "train"
        vectors = load_vectors(vectors_path)
        params, train_report = train(
            train_docs, vectors, config, checkpoint_path=run_dir / CHECKPOINT_FILE
        )
        logger.info(f"[train] final loss {train_report.epoch_losses[-1]:.6f}")

        stage = "summarize"
        run = summarize_corpus(
            params, vectors, [item.document for item in holdout], run_dir / RESULTS_FILE
        )
        logger.info(f"[summarize] {len(run.results)} summaries, {len(run.failures)} failures")

        stage = "evaluate"
        originals = {doc.id: doc for doc in docs}
        gold = [_gold(item, originals) for item in holdout]
        report = evaluate(run.results, gold, aggregate="macro")
        text, record = render_report(report)
        (run_dir / REPORT_TEXT).write_text(text, encoding="utf-8")
        (run_dir / REPORT_JSON).write_text(record, encoding="utf-8")
        logger.info(f"[evaluate] report written to {run_dir / REPORT_TEXT}")
    except PipelineStageError:
        raise
    except (ExtsumError, OSError) as e:
        raise PipelineStageError(stage, e) from e

    return PipelineRun(
        run_dir=run_dir,
        report=report,
        train_report=train_report,
        train_ids=[item.document.id for item in train_docs],
        holdout_ids=[item.document.id for item in holdout],
    )
