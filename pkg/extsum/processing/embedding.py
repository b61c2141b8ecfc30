from dataclasses import dataclass

import numpy as np

from extsum.data_models import Document, Sentence


@dataclass(frozen=True)
class WordVectorStore:
    """
    Pretrained static word vectors.
    ``matrix`` holds one row per token; ``index`` maps a token to its row.
    """

    dim: int
    index: dict[str, int]
    matrix: np.ndarray
    duplicates: int = 0

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"vector dimension must be >= 1, got {self.dim}")
        if self.matrix.shape != (len(self.index), self.dim):
            raise ValueError(
                f"vector matrix shape {self.matrix.shape} does not match "
                f"{len(self.index)} tokens of dimension {self.dim}"
            )

    def __len__(self) -> int:
        return len(self.index)

    def __contains__(self, token: str) -> bool:
        return token in self.index

    def vector(self, token: str) -> np.ndarray:
        return self.matrix[self.index[token]]

    @classmethod
    def from_dict(cls, table: dict[str, list[float]]) -> "WordVectorStore":
        tokens = list(table)
        if not tokens:
            raise ValueError("cannot build a vector store without vectors")
        matrix = np.asarray([table[t] for t in tokens], dtype=np.float64)
        return cls(dim=matrix.shape[1], index={t: i for i, t in enumerate(tokens)}, matrix=matrix)


@dataclass(frozen=True)
class SentenceEmbedding:
    """Mean word vector of a sentence; ``oov`` flags the all-out-of-vocabulary fallback."""

    values: np.ndarray
    oov: bool = False


def embed_sentence(store: WordVectorStore, sentence: Sentence) -> SentenceEmbedding:
    rows = [store.index[token] for token in sentence.tokens if token in store.index]
    if not rows:
        return SentenceEmbedding(values=np.zeros(store.dim, dtype=np.float64), oov=True)
    return SentenceEmbedding(values=store.matrix[rows].mean(axis=0))


def embed_document(store: WordVectorStore, doc: Document) -> list[SentenceEmbedding]:
    return [embed_sentence(store, sentence) for sentence in doc.sentences]


def embedding_matrix(embeddings: list[SentenceEmbedding]) -> np.ndarray:
    """Stacks sentence embeddings into an (n_sentences, dim) array."""
    return np.stack([e.values for e in embeddings]).astype(np.float64, copy=False)
