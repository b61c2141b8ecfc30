from __future__ import annotations

from pathlib import Path

from extsum.data_models import Document, Sentence, SummarizationRun, SummaryResult
from extsum.errors import DimensionMismatchError, EmptyDocumentError, ExtsumError
from extsum.logging_config import get_logger
from extsum.model.network import predict
from extsum.model.params import ModelParams
from extsum.processing.embedding import WordVectorStore, embed_document
from extsum.processing.selection import rank_top, target_count
from extsum.repositories.results import write_results
from extsum.tokenization import split_sentences

logger = get_logger(__name__)


def _result(doc: Document, probabilities: list[float]) -> SummaryResult:
    selected = rank_top(probabilities, target_count(len(doc.sentences)))
    return SummaryResult(
        doc_id=doc.id,
        selected_indices=selected,
        probabilities=probabilities,
        summary_text=[doc.sentences[i].raw for i in selected],
    )


def summarize(params: ModelParams, vectors: WordVectorStore, doc: Document) -> SummaryResult:
    """
    Scores every sentence with the model and keeps the top-N (N from
    target_count), ties to the earlier sentence, emitted in article order.
    """
    if vectors.dim != params.dims.input_dim:
        raise DimensionMismatchError(
            "word vectors vs model input_dim", params.dims.input_dim, vectors.dim
        )
    if not any(sentence.tokens for sentence in doc.sentences):
        raise EmptyDocumentError(f"document {doc.id} has no tokens to summarize")

    probabilities = predict(params, embed_document(vectors, doc))
    return _result(doc, [float(p) for p in probabilities])


def lead_summary(doc: Document) -> SummaryResult:
    """Baseline: the first N sentences, with a flat probability of 1 for each of them."""
    count = target_count(len(doc.sentences))
    probabilities = [1.0 if j < count else 0.0 for j in range(len(doc.sentences))]
    return _result(doc, probabilities)


def summarize_text(
    params: ModelParams, vectors: WordVectorStore, text: str, doc_id: str = "text"
) -> SummaryResult:
    """Summarizes one raw article, segmented with the rule-based splitter."""
    sentences = split_sentences(text)
    if not sentences:
        raise EmptyDocumentError("no sentences found in the input text")
    doc = Document(id=doc_id, sentences=[Sentence.from_text(s) for s in sentences])
    return summarize(params, vectors, doc)


def summarize_corpus(
    params: ModelParams | None,
    vectors: WordVectorStore | None,
    docs: list[Document],
    out_path: str | Path,
    lead: bool = False,
) -> SummarizationRun:
    """
    Summarizes every document and writes one JSONL result per document, in input
    order. Failing documents are logged and reported; the run continues.
    With ``lead`` the model is bypassed and the lead baseline is written instead.
    """
    run = SummarizationRun()
    for doc in docs:
        try:
            result = lead_summary(doc) if lead else summarize(params, vectors, doc)
        except DimensionMismatchError:
            raise
        except ExtsumError as e:
            logger.warning(f"Failed to summarize document {doc.id}: {e}")
            run.failures[doc.id] = str(e)
            continue
        run.results.append(result)

    write_results(run.results, out_path)
    if run.failures:
        logger.warning(f"{len(run.failures)} of {len(docs)} documents could not be summarized")
    return run
