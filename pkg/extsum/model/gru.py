"""
GRU cell and its backpropagation through time.

    z  = sigmoid(W_z x + U_z h_prev + b_z)
    r  = sigmoid(W_r x + U_r h_prev + b_r)
    h~ = tanh(W_h x + U_h (r * h_prev) + b_h)
    h  = (1 - z) * h_prev + z * h~
"""

from dataclasses import dataclass

import numpy as np

from extsum.errors import ShapeError
from extsum.model.params import GruCellParams


def sigmoid(x):
    # exp of a non-positive argument only, so it never overflows
    x = np.asarray(x, dtype=np.float64)
    e = np.exp(-np.abs(x))
    return np.where(x >= 0, 1.0 / (1.0 + e), e / (1.0 + e))


@dataclass
class GruStepCache:
    x: np.ndarray
    h_prev: np.ndarray
    z: np.ndarray
    r: np.ndarray
    h_tilde: np.ndarray


def _check_shapes(params: GruCellParams, x: np.ndarray, h_prev: np.ndarray) -> None:
    if x.shape != (params.input_dim,):
        raise ShapeError(f"GRU input: expected shape ({params.input_dim},), got {x.shape}")
    if h_prev.shape != (params.hidden_dim,):
        raise ShapeError(f"GRU state: expected shape ({params.hidden_dim},), got {h_prev.shape}")


def gru_step(
    params: GruCellParams, x: np.ndarray, h_prev: np.ndarray
) -> tuple[np.ndarray, GruStepCache]:
    z = sigmoid(params.W_z @ x + params.U_z @ h_prev + params.b_z)
    r = sigmoid(params.W_r @ x + params.U_r @ h_prev + params.b_r)
    h_tilde = np.tanh(params.W_h @ x + params.U_h @ (r * h_prev) + params.b_h)
    h = (1.0 - z) * h_prev + z * h_tilde
    return h, GruStepCache(x=x, h_prev=h_prev, z=z, r=r, h_tilde=h_tilde)


def gru_cell(params: GruCellParams, x: np.ndarray, h_prev: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    h_prev = np.asarray(h_prev, dtype=np.float64)
    _check_shapes(params, x, h_prev)
    h, _ = gru_step(params, x, h_prev)
    return h


def run_gru(
    params: GruCellParams, xs: np.ndarray, reverse: bool = False
) -> tuple[np.ndarray, list[GruStepCache]]:
    """
    Runs the cell over the rows of ``xs`` from a zero state. States are returned
    aligned with the input positions, also when running right to left.
    """
    n = xs.shape[0]
    if xs.ndim != 2 or xs.shape[1] != params.input_dim:
        raise ShapeError(f"GRU inputs: expected (n, {params.input_dim}), got {xs.shape}")

    states = np.zeros((n, params.hidden_dim))
    caches: list[GruStepCache | None] = [None] * n
    h = np.zeros(params.hidden_dim)
    positions = range(n - 1, -1, -1) if reverse else range(n)
    for j in positions:
        h, caches[j] = gru_step(params, xs[j], h)
        states[j] = h
    return states, caches


def gru_step_backward(
    params: GruCellParams, cache: GruStepCache, dh: np.ndarray, grads: GruCellParams
) -> tuple[np.ndarray, np.ndarray]:
    """Accumulates parameter gradients into ``grads``; returns (dx, dh_prev)."""
    x, h_prev, z, r, h_tilde = cache.x, cache.h_prev, cache.z, cache.r, cache.h_tilde

    dz = dh * (h_tilde - h_prev)
    dh_tilde = dh * z
    dh_prev = dh * (1.0 - z)

    da_h = dh_tilde * (1.0 - h_tilde**2)
    reset_prev = r * h_prev
    grads.W_h += np.outer(da_h, x)
    grads.U_h += np.outer(da_h, reset_prev)
    grads.b_h += da_h
    d_reset_prev = params.U_h.T @ da_h
    dr = d_reset_prev * h_prev
    dh_prev += d_reset_prev * r

    da_z = dz * z * (1.0 - z)
    grads.W_z += np.outer(da_z, x)
    grads.U_z += np.outer(da_z, h_prev)
    grads.b_z += da_z
    dh_prev += params.U_z.T @ da_z

    da_r = dr * r * (1.0 - r)
    grads.W_r += np.outer(da_r, x)
    grads.U_r += np.outer(da_r, h_prev)
    grads.b_r += da_r
    dh_prev += params.U_r.T @ da_r

    dx = params.W_z.T @ da_z + params.W_r.T @ da_r + params.W_h.T @ da_h
    return dx, dh_prev


def run_gru_backward(
    params: GruCellParams,
    caches: list[GruStepCache],
    d_states: np.ndarray,
    grads: GruCellParams,
    reverse: bool = False,
) -> np.ndarray:
    """
    Backpropagation through time for a run produced by ``run_gru``.
    ``d_states`` holds the loss gradient w.r.t. each output state; returns the
    gradient w.r.t. each input row.
    """
    n = len(caches)
    dxs = np.zeros((n, params.input_dim))
    carry = np.zeros(params.hidden_dim)
    # walk the positions in the opposite order of the forward run
    positions = range(n) if reverse else range(n - 1, -1, -1)
    for j in positions:
        dxs[j], carry = gru_step_backward(params, caches[j], d_states[j] + carry, grads)
    return dxs
