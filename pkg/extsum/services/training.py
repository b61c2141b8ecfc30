from __future__ import annotations

import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from extsum.config import TrainConfig
from extsum.data_models import Document, LabeledDocument, TrainReport
from extsum.errors import DimensionMismatchError, ExtsumError
from extsum.logging_config import get_logger
from extsum.model.network import backward, document_loss, forward
from extsum.model.optim import AdamState, adam_step, clip_gradients
from extsum.model.params import ModelParams, init_params
from extsum.processing.embedding import WordVectorStore, embed_document, embedding_matrix
from extsum.repositories.checkpoints import save_params

logger = get_logger(__name__)


@dataclass(frozen=True)
class TrainingExample:
    doc_id: str
    inputs: np.ndarray  # (n, input_dim)
    targets: np.ndarray  # (n,)


def prepare_examples(
    docs: list[LabeledDocument | Document], vectors: WordVectorStore
) -> tuple[list[TrainingExample], list[str]]:
    """
    Embeds labeled documents. Documents where no sentence has an in-vocabulary
    token are skipped and returned by id.
    """
    examples, skipped = [], []
    for item in docs:
        doc = item.document if isinstance(item, LabeledDocument) else item
        if doc.labels is None:
            raise ExtsumError(f"document {doc.id} has no labels to train on")
        embeddings = embed_document(vectors, doc)
        if all(e.oov for e in embeddings):
            logger.warning(f"Skipping document {doc.id}: no embeddable sentences")
            skipped.append(doc.id)
            continue
        examples.append(
            TrainingExample(
                doc_id=doc.id,
                inputs=embedding_matrix(embeddings),
                targets=np.asarray(doc.labels, dtype=np.float64),
            )
        )
    return examples, skipped


def mean_loss(params: ModelParams, examples: list[TrainingExample]) -> float:
    if not examples:
        return float("nan")
    losses = [document_loss(forward(params, ex.inputs), ex.targets) for ex in examples]
    return float(np.mean(losses))


def batch_gradients(
    params: ModelParams, batch: list[TrainingExample]
) -> tuple[ModelParams, list[float]]:
    """Sums per-document gradients in batch order, then averages over the batch."""
    total = params.zeros_like()
    losses = []
    for ex in batch:
        loss, grads = backward(params, forward(params, ex.inputs), ex.targets)
        losses.append(loss)
        for acc, g in zip(total.tensors(), grads.tensors(), strict=True):
            acc += g
    return total.map(lambda t: t / len(batch)), losses


def train(
    corpus: list[LabeledDocument | Document],
    vectors: WordVectorStore,
    config: TrainConfig,
    checkpoint_path: str | Path | None = None,
    monitor: list[LabeledDocument | Document] | None = None,
) -> tuple[ModelParams, TrainReport]:
    """
    Mini-batch training: every epoch shuffles the documents (seeded), groups them
    into batches, averages the per-document gradients, clips the global norm and
    applies one Adam update per batch. Deterministic for a fixed corpus order and seed.
    """
    if not corpus:
        raise ExtsumError("cannot train on an empty corpus")
    if vectors.dim != config.input_dim:
        raise DimensionMismatchError(
            "word vectors vs config input_dim", config.input_dim, vectors.dim
        )

    started = time.perf_counter()
    examples, skipped = prepare_examples(corpus, vectors)
    if not examples:
        raise ExtsumError("no trainable documents: every document lacks embeddable sentences")
    monitor_examples = prepare_examples(monitor, vectors)[0] if monitor else []

    params = init_params(config.dims, config.seed, zero_head=config.zero_head)
    state = AdamState.zeros(params)
    rng = np.random.default_rng(config.seed)

    initial_loss = mean_loss(params, examples)
    logger.info(
        f"Training on {len(examples)} documents ({len(skipped)} skipped), "
        f"initial loss {initial_loss:.6f}"
    )

    epoch_losses, monitor_losses = [], []
    step = 0
    seen = 0
    for epoch in range(1, config.epochs + 1):
        order = rng.permutation(len(examples)) if config.shuffle else np.arange(len(examples))
        losses = []
        for start in range(0, len(order), config.batch_size):
            batch = [examples[i] for i in order[start : start + config.batch_size]]
            grads, batch_losses = batch_gradients(params, batch)
            grads, norm = clip_gradients(grads, config.gradient_clip)
            step += 1
            params, state = adam_step(params, grads, state, config.learning_rate, step)
            losses += batch_losses
            seen += len(batch)
            logger.debug(f"epoch {epoch} step {step}: grad norm {norm:.4f}")

        epoch_losses.append(float(np.mean(losses)))
        message = f"Epoch {epoch}/{config.epochs}: mean loss {epoch_losses[-1]:.6f}"
        if monitor_examples:
            monitor_losses.append(mean_loss(params, monitor_examples))
            message += f", monitor loss {monitor_losses[-1]:.6f}"
        logger.info(message)

    if checkpoint_path is not None:
        checkpoint_path = save_params(params, checkpoint_path, seed=config.seed)

    report = TrainReport(
        epoch_losses=epoch_losses,
        initial_loss=initial_loss,
        monitor_losses=monitor_losses,
        checkpoint_path=checkpoint_path,
        seconds=time.perf_counter() - started,
        documents_seen=seen,
        skipped=skipped,
    )
    return params, report
