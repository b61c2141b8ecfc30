"""
Sentence-level bidirectional GRU encoder with a content/salience/novelty head.

For sentence j with encoder state h_j, document representation d and accumulated
summary state s_j (s_0 = 0):

    logit_j = W_content . h_j + h_j^T W_salience d - h_j^T W_novelty tanh(s_j) + bias
    p_j     = sigmoid(logit_j)
    s_j+1   = s_j + p_j h_j

The head sees no sentence position. Training minimizes the mean binary
cross-entropy over the document's sentences; ``backward`` returns its exact
gradient, including the path through the s_j recurrence.
"""

from dataclasses import dataclass

import numpy as np

from extsum.errors import DimensionMismatchError, EmptyDocumentError, ShapeError
from extsum.model.gru import GruStepCache, run_gru, run_gru_backward, sigmoid
from extsum.model.params import ClassifierParams, ModelParams
from extsum.processing.embedding import SentenceEmbedding, embedding_matrix

LOGIT_CLAMP = 30.0


@dataclass
class LayerCache:
    forward: list[GruStepCache]
    backward: list[GruStepCache]


@dataclass
class ForwardTrace:
    """Everything ``backward`` needs from one forward pass over a document."""

    h: np.ndarray  # (n, 2H) top-layer states
    d: np.ndarray  # (doc_dim,)
    s: np.ndarray  # (n, 2H) summary state before each sentence
    p: np.ndarray  # (n,)
    logits: np.ndarray  # (n,) before clamping
    mean_h: np.ndarray
    layers: list[LayerCache]

    def __len__(self) -> int:
        return len(self.p)


def _as_inputs(params: ModelParams, embeddings) -> np.ndarray:
    if len(embeddings) == 0:
        raise EmptyDocumentError("cannot encode an empty sentence sequence")
    if isinstance(embeddings, np.ndarray):
        xs = np.asarray(embeddings, dtype=np.float64)
    elif isinstance(embeddings[0], SentenceEmbedding):
        xs = embedding_matrix(embeddings)
    else:
        xs = np.stack([np.asarray(e, dtype=np.float64) for e in embeddings])
    if xs.ndim != 2:
        raise ShapeError(f"expected a sequence of vectors, got array of shape {xs.shape}")
    if xs.shape[1] != params.dims.input_dim:
        raise DimensionMismatchError("sentence embedding", params.dims.input_dim, xs.shape[1])
    return xs


def _encode(params: ModelParams, xs: np.ndarray):
    caches = []
    inputs = xs
    for layer in params.layers:
        states_f, cache_f = run_gru(layer.forward, inputs)
        states_b, cache_b = run_gru(layer.backward, inputs, reverse=True)
        caches.append(LayerCache(forward=cache_f, backward=cache_b))
        inputs = np.concatenate([states_f, states_b], axis=1)

    h = inputs
    mean_h = h.mean(axis=0)
    d = np.tanh(params.head.W_doc @ mean_h + params.head.b_doc)
    return h, d, mean_h, caches


def encode(params: ModelParams, embeddings) -> tuple[np.ndarray, np.ndarray]:
    """Returns the per-sentence bidirectional states (n, 2H) and the document vector."""
    h, d, _, _ = _encode(params, _as_inputs(params, embeddings))
    return h, d


def _check_head(head: ClassifierParams, width: int, doc_width: int) -> None:
    expected = {
        "W_content": (width,),
        "W_salience": (width, doc_width),
        "W_novelty": (width, width),
        "bias": (),
    }
    for name, shape in expected.items():
        actual = np.shape(getattr(head, name))
        if actual != shape:
            raise ShapeError(
                f"classifier head {name} has shape {actual}, expected {shape} for states of "
                f"width {width} and a document vector of width {doc_width}"
            )


def _classify(head: ClassifierParams, h: np.ndarray, d: np.ndarray):
    n, width = h.shape
    if d.ndim != 1:
        raise ShapeError(f"document vector must be 1-D, got shape {d.shape}")
    _check_head(head, width, d.shape[0])

    salience = head.W_salience @ d
    s = np.zeros(width)
    states = np.zeros((n, width))
    logits = np.zeros(n)
    p = np.zeros(n)
    for j in range(n):
        states[j] = s
        novelty = head.W_novelty @ np.tanh(s)
        logits[j] = h[j] @ head.W_content + h[j] @ salience - h[j] @ novelty + head.bias
        p[j] = sigmoid(np.clip(logits[j], -LOGIT_CLAMP, LOGIT_CLAMP))
        s = s + p[j] * h[j]
    return p, states, logits


def classify(head: ClassifierParams, h, d) -> tuple[np.ndarray, np.ndarray]:
    """Sequential left-to-right selection probabilities and summary states."""
    h = np.atleast_2d(np.asarray(h, dtype=np.float64))
    p, states, _ = _classify(head, h, np.asarray(d, dtype=np.float64))
    return p, states


def forward(params: ModelParams, embeddings) -> ForwardTrace:
    xs = _as_inputs(params, embeddings)
    h, d, mean_h, caches = _encode(params, xs)
    p, states, logits = _classify(params.head, h, d)
    return ForwardTrace(h=h, d=d, s=states, p=p, logits=logits, mean_h=mean_h, layers=caches)


def document_loss(trace: ForwardTrace, targets) -> float:
    """Mean binary cross-entropy, computed from the clamped logits."""
    y = np.asarray(targets, dtype=np.float64)
    if y.shape != trace.p.shape:
        raise ShapeError(f"expected {len(trace.p)} targets, got {y.shape[0] if y.ndim else 0}")
    a = np.clip(trace.logits, -LOGIT_CLAMP, LOGIT_CLAMP)
    per_sentence = y * np.logaddexp(0.0, -a) + (1.0 - y) * np.logaddexp(0.0, a)
    return float(per_sentence.mean())


def backward(params: ModelParams, trace: ForwardTrace, targets) -> tuple[float, ModelParams]:
    loss = document_loss(trace, targets)
    y = np.asarray(targets, dtype=np.float64)
    n = len(trace)
    head = params.head
    grads = params.zeros_like()
    g = grads.head

    h, d, p = trace.h, trace.d, trace.p
    inside = np.abs(trace.logits) < LOGIT_CLAMP
    salience = head.W_salience @ d

    dh = np.zeros_like(h)
    dd = np.zeros_like(d)
    ds = np.zeros(h.shape[1])  # gradient w.r.t. s_{j+1}
    for j in range(n - 1, -1, -1):
        t = np.tanh(trace.s[j])
        dp = ds @ h[j]
        dh[j] += ds * p[j]
        dlogit = ((p[j] - y[j]) / n + dp * p[j] * (1.0 - p[j])) * inside[j]

        novelty = head.W_novelty @ t
        g.W_content += dlogit * h[j]
        g.W_salience += dlogit * np.outer(h[j], d)
        g.W_novelty -= dlogit * np.outer(h[j], t)
        g.bias += dlogit
        dh[j] += dlogit * (head.W_content + salience - novelty)
        dd += dlogit * (head.W_salience.T @ h[j])

        dt = -dlogit * (head.W_novelty.T @ h[j])
        ds = ds + dt * (1.0 - t**2)

    da = dd * (1.0 - d**2)
    g.W_doc += np.outer(da, trace.mean_h)
    g.b_doc += da
    dh += (head.W_doc.T @ da) / n

    hidden = params.dims.hidden_dim
    d_out = dh
    for k in range(len(params.layers) - 1, -1, -1):
        layer, layer_grads, cache = params.layers[k], grads.layers[k], trace.layers[k]
        dx_f = run_gru_backward(
            layer.forward, cache.forward, d_out[:, :hidden], layer_grads.forward
        )
        dx_b = run_gru_backward(
            layer.backward, cache.backward, d_out[:, hidden:], layer_grads.backward, reverse=True
        )
        d_out = dx_f + dx_b

    return loss, grads


def predict(params: ModelParams, embeddings) -> np.ndarray:
    return forward(params, embeddings).p
