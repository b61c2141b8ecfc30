import math

import numpy as np


def target_count(num_sentences: int) -> int:
    """
    Summary size for a document of ``num_sentences`` sentences: 10% rounded up,
    at least 3, never more than the document has.
    """
    if num_sentences < 1:
        raise ValueError(f"num_sentences must be >= 1, got {num_sentences}")
    return min(max(math.ceil(0.1 * num_sentences), 3), num_sentences)


def rank_top(scores: list[float], count: int) -> list[int]:
    """
    Indices of the ``count`` highest scores, returned in ascending index order.
    Ties go to the earlier sentence.
    """
    if count <= 0 or not scores:
        return []
    values = np.asarray(scores, dtype=np.float64)
    order = np.argsort(-values, kind="mergesort")  # stable desc
    return sorted(int(i) for i in order[:count])
