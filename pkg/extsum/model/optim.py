from dataclasses import dataclass

import numpy as np

from extsum.errors import ShapeError
from extsum.model.params import ModelParams, from_tensors

BETA1 = 0.9
BETA2 = 0.999
EPSILON = 1e-8


@dataclass(frozen=True)
class AdamState:
    """First and second moment estimates, shaped like the parameters."""

    m: ModelParams
    v: ModelParams

    @classmethod
    def zeros(cls, params: ModelParams) -> "AdamState":
        return cls(m=params.zeros_like(), v=params.zeros_like())


def _check_alike(params: ModelParams, other: ModelParams, what: str) -> None:
    for (name, a), (_, b) in zip(params.named_tensors(), other.named_tensors(), strict=True):
        if a.shape != b.shape:
            raise ShapeError(f"{what} {name}: expected shape {a.shape}, got {b.shape}")


def adam_step(
    params: ModelParams, grads: ModelParams, state: AdamState, lr: float, t: int
) -> tuple[ModelParams, AdamState]:
    """
    One bias-corrected Adam update. Pure: the inputs are left untouched and new
    parameters and moments are returned.
    """
    if t < 1:
        raise ValueError(f"Adam step counter must be >= 1, got {t}")
    _check_alike(params, grads, "gradient")

    new_params, new_m, new_v = [], [], []
    for theta, g, m, v in zip(
        params.tensors(), grads.tensors(), state.m.tensors(), state.v.tensors(), strict=True
    ):
        m = BETA1 * m + (1.0 - BETA1) * g
        v = BETA2 * v + (1.0 - BETA2) * g * g
        m_hat = m / (1.0 - BETA1**t)
        v_hat = v / (1.0 - BETA2**t)
        new_params.append(theta - lr * m_hat / (np.sqrt(v_hat) + EPSILON))
        new_m.append(m)
        new_v.append(v)

    dims = params.dims
    return from_tensors(dims, new_params), AdamState(
        m=from_tensors(dims, new_m), v=from_tensors(dims, new_v)
    )


def clip_gradients(grads: ModelParams, max_norm: float) -> tuple[ModelParams, float]:
    """Rescales the gradients so their global L2 norm is at most ``max_norm``."""
    norm = grads.global_norm()
    if norm <= max_norm or norm == 0.0:
        return grads, norm
    scale = max_norm / norm
    return grads.map(lambda t: t * scale), norm
