"""
Pure processing steps for extsum.

- rouge: n-gram bags and ROUGE-N precision/recall/F1
- selection: summary length and stable top-N ranking
- labeling: ROUGE-based auto-annotation of extractive labels
- embedding: word-vector lookup and mean-pooled sentence embeddings
"""

from .embedding import SentenceEmbedding, WordVectorStore, embed_document, embed_sentence
from .labeling import annotate_corpus, generate_labels, score_sentences
from .rouge import NGramBag, ngrams, rouge_n, rouge_n_multi, sentence_ngrams
from .selection import rank_top, target_count

__all__ = [
    "NGramBag",
    "ngrams",
    "sentence_ngrams",
    "rouge_n",
    "rouge_n_multi",
    "target_count",
    "rank_top",
    "score_sentences",
    "generate_labels",
    "annotate_corpus",
    "WordVectorStore",
    "SentenceEmbedding",
    "embed_sentence",
    "embed_document",
]
