"""
Model checkpoint files.

Layout:
    line 1   magic ``EXTSUM-CHECKPOINT``
    line 2   JSON header: format version, dims, seed note, tensor names and shapes
    rest     every tensor as little-endian float64, in canonical order, row-major

Reading back yields bit-identical parameters.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from extsum.errors import CheckpointError, CheckpointVersionError, ShapeError
from extsum.logging_config import get_logger
from extsum.model.params import ModelDims, ModelParams, expected_shapes, from_tensors

logger = get_logger(__name__)

MAGIC = b"EXTSUM-CHECKPOINT"
FORMAT_VERSION = 1
DTYPE = np.dtype("<f8")


def checkpoint_header(params: ModelParams, seed: int | None = None) -> dict:
    return {
        "version": FORMAT_VERSION,
        "dims": {
            "input_dim": params.dims.input_dim,
            "hidden_dim": params.dims.hidden_dim,
            "doc_dim": params.dims.doc_dim,
            "num_layers": params.dims.num_layers,
        },
        "seed": seed,
        "tensors": [[name, list(t.shape)] for name, t in params.named_tensors()],
    }


def save_params(params: ModelParams, path: str | Path, seed: int | None = None) -> Path:
    path = Path(path)
    header = json.dumps(checkpoint_header(params, seed), sort_keys=True)
    payload = b"".join(np.ascontiguousarray(t, dtype=DTYPE).tobytes() for t in params.tensors())
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "wb") as f:
            f.write(MAGIC + b"\n")
            f.write(header.encode("utf-8") + b"\n")
            f.write(payload)
    except OSError as e:
        raise OSError(f"cannot write checkpoint {path}: {e}") from e

    logger.info(f"Saved checkpoint to {path}")
    return path


def read_header(path: str | Path) -> tuple[dict, bytes]:
    with open(path, "rb") as f:
        data = f.read()

    magic, sep, rest = data.partition(b"\n")
    if magic != MAGIC or not sep:
        raise CheckpointError(f"{path} is not an extsum checkpoint")
    header_line, sep, payload = rest.partition(b"\n")
    if not sep:
        raise CheckpointError(f"{path}: truncated header")
    try:
        header = json.loads(header_line.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise CheckpointError(f"{path}: corrupt header: {e}") from e
    if not isinstance(header, dict):
        raise CheckpointError(f"{path}: corrupt header")

    version = header.get("version")
    if version != FORMAT_VERSION:
        raise CheckpointVersionError(
            f"{path}: unsupported checkpoint version {version!r} (expected {FORMAT_VERSION})"
        )
    return header, payload


def load_params(path: str | Path) -> ModelParams:
    header, payload = read_header(path)
    try:
        dims = ModelDims(**header["dims"])
    except (KeyError, TypeError, ValueError) as e:
        raise CheckpointError(f"{path}: corrupt dims in header: {e}") from e

    shapes = expected_shapes(dims)
    try:
        stored = [(name, tuple(shape)) for name, shape in header.get("tensors", [])]
    except (TypeError, ValueError) as e:
        raise CheckpointError(f"{path}: corrupt tensor table in header: {e}") from e
    if stored != shapes:
        raise CheckpointError(f"{path}: tensor layout does not match dims {header['dims']}")

    sizes = [int(np.prod(shape, dtype=np.int64)) for _, shape in shapes]
    expected_bytes = sum(sizes) * DTYPE.itemsize
    if len(payload) != expected_bytes:
        raise CheckpointError(
            f"{path}: corrupt or truncated payload ({len(payload)} bytes, "
            f"expected {expected_bytes})"
        )

    flat = np.frombuffer(payload, dtype=DTYPE)
    tensors, offset = [], 0
    for (_, shape), size in zip(shapes, sizes, strict=True):
        tensors.append(flat[offset : offset + size].astype(np.float64).reshape(shape))
        offset += size

    try:
        return from_tensors(dims, tensors)
    except ShapeError as e:
        raise CheckpointError(f"{path}: {e}") from e
