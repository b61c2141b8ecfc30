from __future__ import annotations

from pathlib import Path

import numpy as np

from extsum.errors import VectorFileError
from extsum.logging_config import get_logger
from extsum.processing.embedding import WordVectorStore

logger = get_logger(__name__)


def _parse_row(parts: list[str], line_number: int) -> np.ndarray:
    try:
        values = np.array([float(v) for v in parts], dtype=np.float64)
    except ValueError as e:
        raise VectorFileError(f"unparsable float: {e}", line_number) from e
    if not np.all(np.isfinite(values)):
        raise VectorFileError("non-finite vector entry", line_number)
    return values


def _is_header(first: list[str], second: list[str] | None) -> bool:
    """word2vec-style '<count> <dim>' header, confirmed by the width of the next row."""
    if len(first) != 2 or not all(p.isdigit() for p in first):
        return False
    return second is not None and len(second) - 1 == int(first[1])


def load_vectors(path: str | Path) -> WordVectorStore:
    """
    Loads word vectors from the common text layout: one ``<token> <f1> ... <fd>``
    entry per line. The dimension comes from the first row; duplicated tokens keep
    their last occurrence.
    """
    path = Path(path)
    lines = []
    with open(path, "rb") as f:
        for line_number, raw in enumerate(f, start=1):
            try:
                line = raw.decode("utf-8")
            except UnicodeDecodeError as e:
                raise VectorFileError(
                    f"invalid UTF-8 at byte {e.start}: {e.reason}", line_number
                ) from e
            lines.append((line_number, line.rstrip("\r\n").split(" ")))
    rows = [(n, [p for p in parts if p != ""]) for n, parts in lines]
    rows = [(n, parts) for n, parts in rows if parts]

    if not rows:
        raise VectorFileError(f"empty vector file: {path}")

    if _is_header(rows[0][1], rows[1][1] if len(rows) > 1 else None):
        logger.debug(f"Skipping header line of {path}")
        rows = rows[1:]

    first_line, first_parts = rows[0]
    dim = len(first_parts) - 1
    if dim < 1:
        raise VectorFileError("row has a token but no values", first_line)

    index: dict[str, int] = {}
    vectors: list[np.ndarray] = []
    duplicates = 0
    for line_number, parts in rows:
        if len(parts) - 1 != dim:
            raise VectorFileError(
                f"dimension mismatch: expected {dim} values, got {len(parts) - 1}", line_number
            )
        token, values = parts[0], _parse_row(parts[1:], line_number)
        if token in index:
            duplicates += 1
            vectors[index[token]] = values
        else:
            index[token] = len(vectors)
            vectors.append(values)

    if duplicates:
        logger.warning(f"{duplicates} duplicate tokens in {path}; kept the last occurrence")

    logger.info(f"Loaded {len(index)} word vectors of dimension {dim} from {path}")
    return WordVectorStore(dim=dim, index=index, matrix=np.stack(vectors), duplicates=duplicates)
