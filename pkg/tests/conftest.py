import json
import math
from pathlib import Path

import numpy as np
import pytest

from extsum.data_models import Document
from extsum.model.params import ModelDims, ModelParams, expected_shapes, from_tensors
from extsum.processing.embedding import WordVectorStore

MARKER = "zeta"


def doc(doc_id: str, sentences: list[str], abstractive=None, labels=None) -> Document:
    return Document(id=doc_id, sentences=sentences, abstractive=abstractive, labels=labels)


def write_jsonl(path: Path, records: list[dict]) -> Path:
    path.write_text(
        "".join(json.dumps(r, ensure_ascii=False) + "\n" for r in records), encoding="utf-8"
    )
    return path


def write_vectors(path: Path, store: WordVectorStore) -> Path:
    lines = []
    for token, row in store.index.items():
        values = " ".join(repr(float(v)) for v in store.matrix[row])
        lines.append(f"{token} {values}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def random_params(dims: ModelDims, seed: int, scale: float = 0.5) -> ModelParams:
    """Every tensor (biases included) drawn from N(0, scale^2)."""
    rng = np.random.default_rng(seed)
    return from_tensors(
        dims, [rng.normal(0.0, scale, size=shape) for _, shape in expected_shapes(dims)]
    )


def marker_vocabulary(dim: int = 16, seed: int = 7) -> WordVectorStore:
    """
    50 tokens: w00..w24 for filler sentences, w25..w48 for marker sentences and
    the marker itself, which alone has mass on the first coordinate.
    """
    rng = np.random.default_rng(seed)
    table = {}
    for i in range(49):
        vector = rng.normal(0.0, 1.0, size=dim)
        vector[0] = 0.0
        table[f"w{i:02d}"] = vector.tolist()
    marker = np.zeros(dim)
    marker[0] = 8.0
    table[MARKER] = marker.tolist()
    return WordVectorStore.from_dict(table)


def marker_corpus(
    num_docs: int = 200, num_sentences: int = 20, seed: int = 11, with_labels: bool = True
) -> list[dict]:
    """
    Synthetic articles with exactly three marker sentences each. The abstractive
    summary is the concatenation of the marker sentences, and the labels (when
    requested) mark their positions.
    """
    rng = np.random.default_rng(seed)
    records = []
    for k in range(num_docs):
        positions = sorted(rng.choice(num_sentences, size=3, replace=False).tolist())
        sentences = []
        for j in range(num_sentences):
            length = int(rng.integers(5, 9))
            if j in positions:
                words = [f"w{i:02d}" for i in rng.integers(25, 49, size=length - 1)]
                words.insert(int(rng.integers(0, length)), MARKER)
            else:
                words = [f"w{i:02d}" for i in rng.integers(0, 25, size=length)]
            sentences.append(" ".join(words).capitalize() + ".")
        record = {
            "id": f"doc{k:03d}",
            "sentences": sentences,
            "abstractive": [sentences[j] for j in positions],
        }
        if with_labels:
            record["labels"] = [1 if j in positions else 0 for j in range(num_sentences)]
        records.append(record)
    return records


@pytest.fixture
def rng():
    return np.random.default_rng(42)


@pytest.fixture
def tiny_dims():
    return ModelDims(input_dim=2, hidden_dim=2, doc_dim=2)


@pytest.fixture
def toy_vectors():
    return WordVectorStore.from_dict(
        {
            "the": [0.1, 0.2, 0.0],
            "cat": [1.0, 0.0, 0.5],
            "sat": [0.0, 1.0, -0.5],
            "dog": [0.5, 0.5, 0.5],
            "ran": [-1.0, 0.3, 0.2],
            "home": [0.2, -0.4, 1.0],
        }
    )


@pytest.fixture
def toy_corpus():
    return [
        doc(
            "a",
            ["The cat sat.", "The dog ran.", "Cat home.", "Dog sat home."],
            abstractive=["The cat sat at home."],
        ),
        doc(
            "b",
            ["The dog ran home.", "The cat ran.", "Sat."],
            abstractive=["A dog ran home."],
        ),
        doc("c", ["The cat.", "The dog.", "Home.", "Ran."], abstractive=["The dog."]),
    ]


def scalar_gru(cell, x, h_prev):
    """The four GRU gate equations, one coordinate at a time."""

    def sig(v):
        return 1.0 / (1.0 + math.exp(-v))

    hidden, inputs = cell.W_z.shape

    def affine(W, U, b, i, state):
        return (
            sum(W[i, k] * x[k] for k in range(inputs))
            + sum(U[i, k] * state[k] for k in range(hidden))
            + b[i]
        )

    z = [sig(affine(cell.W_z, cell.U_z, cell.b_z, i, h_prev)) for i in range(hidden)]
    r = [sig(affine(cell.W_r, cell.U_r, cell.b_r, i, h_prev)) for i in range(hidden)]
    reset = [r[k] * h_prev[k] for k in range(hidden)]
    h = []
    for i in range(hidden):
        candidate = math.tanh(affine(cell.W_h, cell.U_h, cell.b_h, i, reset))
        h.append((1.0 - z[i]) * h_prev[i] + z[i] * candidate)
    return h
