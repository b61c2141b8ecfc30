"""
Trainable tensors of the sentence-level classifier.

Every container exposes its tensors as an ordered list of ``(name, array)`` pairs.
That order is the canonical one: checkpoints store tensors in it, and the optimizer,
gradient clipping and gradient checks walk it. There are no position-feature tensors.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

import numpy as np

from extsum.errors import ShapeError

GRU_TENSORS = ("W_z", "W_r", "W_h", "U_z", "U_r", "U_h", "b_z", "b_r", "b_h")
HEAD_TENSORS = ("W_content", "W_salience", "W_novelty", "W_doc", "b_doc", "bias")


@dataclass(frozen=True)
class ModelDims:
    input_dim: int
    hidden_dim: int
    doc_dim: int
    num_layers: int = 1

    def __post_init__(self):
        for f in fields(self):
            if getattr(self, f.name) < 1:
                raise ValueError(f"{f.name} must be positive, got {getattr(self, f.name)}")

    @property
    def state_dim(self) -> int:
        """Width of a concatenated bidirectional state."""
        return 2 * self.hidden_dim

    def layer_input_dim(self, layer: int) -> int:
        return self.input_dim if layer == 0 else self.state_dim


def gru_shapes(input_dim: int, hidden_dim: int) -> dict[str, tuple[int, ...]]:
    return {
        "W_z": (hidden_dim, input_dim),
        "W_r": (hidden_dim, input_dim),
        "W_h": (hidden_dim, input_dim),
        "U_z": (hidden_dim, hidden_dim),
        "U_r": (hidden_dim, hidden_dim),
        "U_h": (hidden_dim, hidden_dim),
        "b_z": (hidden_dim,),
        "b_r": (hidden_dim,),
        "b_h": (hidden_dim,),
    }


def head_shapes(dims: ModelDims) -> dict[str, tuple[int, ...]]:
    state = dims.state_dim
    return {
        "W_content": (state,),
        "W_salience": (state, dims.doc_dim),
        "W_novelty": (state, state),
        "W_doc": (dims.doc_dim, state),
        "b_doc": (dims.doc_dim,),
        "bias": (),
    }


@dataclass
class GruCellParams:
    W_z: np.ndarray
    W_r: np.ndarray
    W_h: np.ndarray
    U_z: np.ndarray
    U_r: np.ndarray
    U_h: np.ndarray
    b_z: np.ndarray
    b_r: np.ndarray
    b_h: np.ndarray

    @property
    def input_dim(self) -> int:
        return self.W_z.shape[1]

    @property
    def hidden_dim(self) -> int:
        return self.W_z.shape[0]

    def named_tensors(self) -> list[tuple[str, np.ndarray]]:
        return [(name, getattr(self, name)) for name in GRU_TENSORS]


@dataclass
class BiGruLayer:
    forward: GruCellParams
    backward: GruCellParams


@dataclass
class ClassifierParams:
    W_content: np.ndarray
    W_salience: np.ndarray
    W_novelty: np.ndarray
    W_doc: np.ndarray
    b_doc: np.ndarray
    bias: np.ndarray  # 0-d

    def named_tensors(self) -> list[tuple[str, np.ndarray]]:
        return [(name, getattr(self, name)) for name in HEAD_TENSORS]


@dataclass
class ModelParams:
    """All trainable tensors: stacked bidirectional GRU layers and the classifier head."""

    dims: ModelDims
    layers: list[BiGruLayer]
    head: ClassifierParams

    @property
    def forward_cell(self) -> GruCellParams:
        return self.layers[0].forward

    @property
    def backward_cell(self) -> GruCellParams:
        return self.layers[0].backward

    def named_tensors(self) -> list[tuple[str, np.ndarray]]:
        named = []
        for k, layer in enumerate(self.layers):
            for direction, cell in (("forward", layer.forward), ("backward", layer.backward)):
                named += [(f"layer{k}.{direction}.{n}", t) for n, t in cell.named_tensors()]
        named += [(f"head.{n}", t) for n, t in self.head.named_tensors()]
        return named

    def tensors(self) -> list[np.ndarray]:
        return [t for _, t in self.named_tensors()]

    def map(self, fn) -> ModelParams:
        return from_tensors(self.dims, [fn(t) for t in self.tensors()])

    def copy(self) -> ModelParams:
        return self.map(np.copy)

    def zeros_like(self) -> ModelParams:
        return self.map(np.zeros_like)

    def global_norm(self) -> float:
        return float(np.sqrt(sum(float(np.sum(t * t)) for t in self.tensors())))


def expected_shapes(dims: ModelDims) -> list[tuple[str, tuple[int, ...]]]:
    shapes = []
    for k in range(dims.num_layers):
        cell = gru_shapes(dims.layer_input_dim(k), dims.hidden_dim)
        for direction in ("forward", "backward"):
            shapes += [(f"layer{k}.{direction}.{n}", cell[n]) for n in GRU_TENSORS]
    head = head_shapes(dims)
    shapes += [(f"head.{n}", head[n]) for n in HEAD_TENSORS]
    return shapes


def from_tensors(dims: ModelDims, tensors: list[np.ndarray]) -> ModelParams:
    """Rebuilds a ModelParams from tensors given in canonical order."""
    shapes = expected_shapes(dims)
    if len(tensors) != len(shapes):
        raise ShapeError(f"expected {len(shapes)} tensors, got {len(tensors)}")
    for (name, shape), tensor in zip(shapes, tensors, strict=True):
        if tuple(np.shape(tensor)) != shape:
            raise ShapeError(f"{name}: expected shape {shape}, got {np.shape(tensor)}")

    arrays = iter(np.asarray(t, dtype=np.float64) for t in tensors)

    def cell() -> GruCellParams:
        return GruCellParams(**{name: next(arrays) for name in GRU_TENSORS})

    layers = [BiGruLayer(forward=cell(), backward=cell()) for _ in range(dims.num_layers)]
    head = ClassifierParams(**{name: next(arrays) for name in HEAD_TENSORS})
    return ModelParams(dims=dims, layers=layers, head=head)


def zero_params(dims: ModelDims) -> ModelParams:
    return from_tensors(dims, [np.zeros(shape) for _, shape in expected_shapes(dims)])


def glorot_bound(shape: tuple[int, ...]) -> float:
    """Uniform Glorot bound sqrt(6 / (fan_in + fan_out)); a vector counts as one row."""
    if len(shape) == 1:
        fan_out, fan_in = 1, shape[0]
    else:
        fan_out, fan_in = shape
    return float(np.sqrt(6.0 / (fan_in + fan_out)))


def init_params(dims: ModelDims, seed: int, zero_head: bool = False) -> ModelParams:
    """
    Glorot-uniform matrices and zero biases, deterministic in ``seed``.
    With ``zero_head`` the classifier head starts at zero, so every first
    probability is exactly 0.5.
    """
    rng = np.random.default_rng(seed)
    tensors = []
    for name, shape in expected_shapes(dims):
        short = name.rsplit(".", 1)[1]
        is_bias = short.startswith("b_") or short == "bias"
        if is_bias or (zero_head and name.startswith("head.")):
            tensors.append(np.zeros(shape))
        else:
            bound = glorot_bound(shape)
            tensors.append(rng.uniform(-bound, bound, size=shape))
    return from_tensors(dims, tensors)
