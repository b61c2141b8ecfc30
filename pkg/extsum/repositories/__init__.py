from .checkpoints import load_params, save_params
from .corpus import (
    CorpusRepository,
    read_article,
    read_corpus,
    write_corpus,
    write_labeled_corpus,
)
from .results import ResultsRepository, read_results, write_results
from .vectors import load_vectors

__all__ = [
    "CorpusRepository",
    "ResultsRepository",
    "read_corpus",
    "read_article",
    "write_corpus",
    "write_labeled_corpus",
    "read_results",
    "write_results",
    "load_vectors",
    "load_params",
    "save_params",
]
