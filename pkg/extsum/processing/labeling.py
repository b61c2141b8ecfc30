from extsum.data_models import AnnotationResult, Document, LabeledDocument
from extsum.errors import ExtsumError, NotAnnotatableError
from extsum.logging_config import get_logger
from extsum.processing.rouge import ngrams, score_bags
from extsum.processing.selection import rank_top, target_count

logger = get_logger(__name__)


def score_sentences(doc: Document) -> list[float]:
    """
    Scores every sentence by its ROUGE-1 F1 against the whole abstractive
    summary, treated as one bag of tokens.
    """
    summary_tokens = doc.abstractive_tokens
    if not summary_tokens:
        raise NotAnnotatableError(f"document not annotatable: {doc.id} has no abstractive summary")

    reference = ngrams(summary_tokens, 1)
    return [score_bags(ngrams(sentence.tokens, 1), reference).f1 for sentence in doc.sentences]


def generate_labels(doc: Document) -> LabeledDocument:
    """
    Labels the top-N sentences by score (N from target_count), ties broken by
    ascending index. Sentences without tokens are never candidates.
    """
    scores = score_sentences(doc)

    candidates = [j for j, sentence in enumerate(doc.sentences) if sentence.tokens]
    if not candidates:
        raise NotAnnotatableError(f"document not annotatable: {doc.id} has no tokens")

    count = target_count(len(doc.sentences))
    picked = rank_top([scores[j] for j in candidates], count)
    selected = {candidates[k] for k in picked}

    labels = [1 if j in selected else 0 for j in range(len(doc.sentences))]
    return LabeledDocument(document=doc.with_labels(labels), scores=scores)


def annotate_corpus(docs: list[Document]) -> AnnotationResult:
    """
    Auto-annotates every document that carries an abstractive summary.
    Documents that cannot be annotated are skipped and reported, never fatal.
    """
    result = AnnotationResult()
    for doc in docs:
        try:
            result.documents.append(generate_labels(doc))
        except ExtsumError as e:
            logger.warning(f"Skipping document {doc.id}: {e}")
            result.skipped[doc.id] = str(e)

    logger.info(
        f"Annotated {len(result.documents)} documents, skipped {len(result.skipped)} "
        f"of {len(docs)}"
    )
    return result
