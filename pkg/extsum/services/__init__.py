"""Service layer for extsum."""

from .evaluation import evaluate, render_report, sentence_match
from .pipeline import run_pipeline, split_corpus
from .summarization import lead_summary, summarize, summarize_corpus, summarize_text
from .training import train

__all__ = [
    "train",
    "summarize",
    "summarize_text",
    "summarize_corpus",
    "lead_summary",
    "evaluate",
    "sentence_match",
    "render_report",
    "run_pipeline",
    "split_corpus",
]
