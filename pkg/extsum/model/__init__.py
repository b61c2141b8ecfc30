"""Bidirectional GRU sentence classifier: parameters, forward/backward passes, optimizer."""

from .gru import gru_cell
from .network import backward, classify, document_loss, encode, forward, predict
from .optim import AdamState, adam_step, clip_gradients
from .params import ModelDims, ModelParams, init_params

__all__ = [
    "ModelDims",
    "ModelParams",
    "init_params",
    "gru_cell",
    "encode",
    "classify",
    "forward",
    "backward",
    "document_loss",
    "predict",
    "AdamState",
    "adam_step",
    "clip_gradients",
]
