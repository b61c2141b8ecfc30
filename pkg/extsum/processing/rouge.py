"""
ROUGE-N with clipped n-gram matching.

Tokens are expected to be lowercased already (the corpus tokenizer does it); no
stemming or stopword removal is applied. N-grams never span a sentence boundary
when a summary is given as several sentences.
"""

from collections import Counter
from dataclasses import dataclass, field

from extsum.data_models import RougeScore


@dataclass(frozen=True)
class NGramBag:
    """Multiset of contiguous n-grams of a fixed order."""

    order: int
    counts: Counter = field(default_factory=Counter)

    @property
    def total_count(self) -> int:
        return sum(self.counts.values())

    def __add__(self, other: "NGramBag") -> "NGramBag":
        if other.order != self.order:
            raise ValueError(f"cannot merge {self.order}-gram and {other.order}-gram bags")
        return NGramBag(self.order, self.counts + other.counts)


def _check_order(order: int) -> None:
    if order < 1:
        raise ValueError(f"n-gram order must be >= 1, got {order}")


def ngrams(tokens: list[str], order: int) -> NGramBag:
    _check_order(order)
    windows = zip(*(tokens[i:] for i in range(order)), strict=False)
    return NGramBag(order, Counter(windows))


def sentence_ngrams(sentences: list[list[str]], order: int) -> NGramBag:
    """Bag of all n-grams of several sentences, without cross-sentence n-grams."""
    _check_order(order)
    bag = NGramBag(order)
    for tokens in sentences:
        bag = bag + ngrams(tokens, order)
    return bag


def overlap_counts(candidate: NGramBag, reference: NGramBag) -> tuple[int, int, int]:
    """Returns (clipped overlap, candidate n-gram total, reference n-gram total)."""
    overlap = sum((candidate.counts & reference.counts).values())
    return overlap, candidate.total_count, reference.total_count


def score_bags(candidate: NGramBag, reference: NGramBag) -> RougeScore:
    return RougeScore.from_counts(*overlap_counts(candidate, reference))


def rouge_n(candidate: list[str], reference: list[str], order: int) -> RougeScore:
    return score_bags(ngrams(candidate, order), ngrams(reference, order))


def rouge_n_multi(
    candidates: list[list[str]], references: list[list[str]], order: int
) -> RougeScore:
    return score_bags(sentence_ngrams(candidates, order), sentence_ngrams(references, order))
