"""
Run configuration.

Config files are plain text with one ``key = value`` per line; blank lines and
``#`` comments are ignored. Keys are the TrainConfig field names; unknown keys are
rejected. The defaults for everything except ``epochs`` are not taken from any
published run and should be treated as starting points.
"""

from __future__ import annotations

from pathlib import Path
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, PositiveFloat, PositiveInt, ValidationError

from extsum.errors import ConfigError
from extsum.model.params import ModelDims

DEFAULT_SEED = 13


class TrainConfig(BaseModel):
    """
    Hyperparameters for training and for the end-to-end pipeline.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    epochs: PositiveInt = Field(default=20, description="Passes over the training corpus")
    learning_rate: PositiveFloat = Field(default=1e-3, description="Adam step size")
    batch_size: PositiveInt = Field(default=16, description="Documents per update")
    seed: int = Field(default=DEFAULT_SEED, description="Seed for init, shuffling and splits")
    input_dim: PositiveInt = Field(default=100, description="Word/sentence vector width")
    hidden_dim: PositiveInt = Field(default=200, description="GRU state width per direction")
    doc_dim: PositiveInt = Field(default=100, description="Document representation width")
    num_layers: PositiveInt = Field(default=1, description="Stacked bidirectional GRU layers")
    gradient_clip: PositiveFloat = Field(default=5.0, description="Max global gradient L2 norm")
    shuffle: bool = Field(default=True, description="Shuffle documents every epoch")
    zero_head: bool = Field(default=False, description="Start the classifier head at zero")
    holdout_fraction: float = Field(
        default=0.1, gt=0.0, lt=1.0, description="Held-out share of documents in the pipeline"
    )

    @property
    def dims(self) -> ModelDims:
        return ModelDims(
            input_dim=self.input_dim,
            hidden_dim=self.hidden_dim,
            doc_dim=self.doc_dim,
            num_layers=self.num_layers,
        )


class GlobalOptions(BaseModel):
    """Options shared by every CLI command."""

    seed: int = Field(default=DEFAULT_SEED)
    log_level: Literal["error", "warn", "info", "debug"] = Field(default="info")
    config: Path | None = Field(default=None)


def parse_key_values(text: str, source: str = "<config>") -> dict[str, tuple[str, int]]:
    """Parses ``key = value`` lines into {key: (value, line_number)}; last key wins."""
    values: dict[str, tuple[str, int]] = {}
    for line_number, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        key, sep, value = stripped.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key:
            raise ConfigError(f"{source}:{line_number}: expected 'key = value', got {line!r}")
        values[key] = (value, line_number)
    return values


def build_config(values: dict[str, tuple[str, int]], source: str = "<config>") -> TrainConfig:
    for key, (_, line_number) in values.items():
        if key not in TrainConfig.model_fields:
            raise ConfigError(f"{source}:{line_number}: unknown config key {key!r}")
    try:
        return TrainConfig.model_validate({key: value for key, (value, _) in values.items()})
    except ValidationError as e:
        first = e.errors()[0]
        key = str(first["loc"][0]) if first["loc"] else "?"
        line = values.get(key, ("", "?"))[1]
        raise ConfigError(f"{source}:{line}: invalid value for {key!r}: {first['msg']}") from e


def _read_utf8(path: Path) -> str:
    data = path.read_bytes()
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as e:
        line = data.count(b"\n", 0, e.start) + 1
        raise ConfigError(f"{path}:{line}: invalid UTF-8: {e.reason}") from e


def load_config(path: str | Path | None = None, **overrides) -> TrainConfig:
    """Loads a config file (defaults when ``path`` is None) and applies overrides."""
    values: dict[str, tuple[str, int]] = {}
    source = "<defaults>"
    if path is not None:
        source = str(path)
        values = parse_key_values(_read_utf8(Path(path)), source)
    config = build_config(values, source)
    if overrides:
        try:
            config = TrainConfig.model_validate({**config.model_dump(), **overrides})
        except ValidationError as e:
            raise ConfigError(f"invalid override: {e.errors()[0]['msg']}") from e
    return config


def dump_config(config: TrainConfig) -> str:
    """Renders a config in the same key/value format ``load_config`` reads."""
    lines = []
    for key, value in config.model_dump().items():
        if isinstance(value, bool):
            value = str(value).lower()
        lines.append(f"{key} = {value}")
    return "\n".join(lines) + "\n"
