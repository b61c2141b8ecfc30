"""Exception types raised by the extsum library.

Everything derives from ``ExtsumError``, itself a ``ValueError``, so the CLI can map
anticipated data problems to exit code 2 without catching programming errors.
"""


class ExtsumError(ValueError):
    pass


class CorpusFormatError(ExtsumError):
    def __init__(self, reason: str, line_number: int | None = None):
        self.reason = reason
        self.line_number = line_number
        where = f"line {line_number}: " if line_number is not None else ""
        super().__init__(f"{where}{reason}")


class VectorFileError(ExtsumError):
    def __init__(self, reason: str, line_number: int | None = None):
        self.reason = reason
        self.line_number = line_number
        where = f"line {line_number}: " if line_number is not None else ""
        super().__init__(f"{where}{reason}")


class CheckpointError(ExtsumError):
    pass


class CheckpointVersionError(CheckpointError):
    pass


class DimensionMismatchError(ExtsumError):
    def __init__(self, what: str, expected: int, actual: int):
        self.expected = expected
        self.actual = actual
        super().__init__(f"{what}: expected dimension {expected}, got {actual}")


class ShapeError(ExtsumError):
    pass


class NotAnnotatableError(ExtsumError):
    pass


class EmptyDocumentError(ExtsumError):
    pass


class ConfigError(ExtsumError):
    pass


class EvaluationError(ExtsumError):
    pass


class PipelineStageError(ExtsumError):
    def __init__(self, stage: str, cause: Exception):
        self.stage = stage
        self.cause = cause
        super().__init__(f"stage '{stage}' failed: {cause}")
