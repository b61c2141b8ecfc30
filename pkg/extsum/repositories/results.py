from __future__ import annotations

import json
from pathlib import Path

from pydantic import BaseModel, ValidationError

from extsum.data_models import SummaryResult
from extsum.errors import CorpusFormatError
from extsum.logging_config import get_logger

logger = get_logger(__name__)


class ResultRecord(BaseModel):
    """One line of a summarization results file."""

    id: str
    selected: list[int]
    probabilities: list[float]
    summary: list[str]

    def to_result(self) -> SummaryResult:
        return SummaryResult(
            doc_id=self.id,
            selected_indices=self.selected,
            probabilities=self.probabilities,
            summary_text=self.summary,
        )

    @classmethod
    def from_result(cls, result: SummaryResult) -> ResultRecord:
        return cls(
            id=result.doc_id,
            selected=result.selected_indices,
            probabilities=result.probabilities,
            summary=result.summary_text,
        )


class ResultsRepository:
    """Reads and writes JSONL summarization results, one document per line."""

    def __init__(self, path: str | Path):
        self.path = Path(path)

    def read(self) -> list[SummaryResult]:
        results = []
        with open(self.path, "rb") as f:
            for line_number, raw in enumerate(f, start=1):
                try:
                    line = raw.decode("utf-8")
                except UnicodeDecodeError as e:
                    raise CorpusFormatError(
                        f"invalid UTF-8 at byte {e.start}: {e.reason}", line_number
                    ) from e
                if not line.strip():
                    continue
                try:
                    results.append(ResultRecord.model_validate_json(line).to_result())
                except ValidationError as e:
                    raise CorpusFormatError(f"malformed result record: {e}", line_number) from e
        return results

    def write(self, results: list[SummaryResult]) -> int:
        try:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with open(self.path, "w", encoding="utf-8") as f:
                for result in results:
                    record = ResultRecord.from_result(result).model_dump()
                    f.write(json.dumps(record, ensure_ascii=False) + "\n")
        except OSError as e:
            raise OSError(f"cannot write results to {self.path}: {e}") from e

        logger.info(f"Wrote {len(results)} summaries to {self.path}")
        return len(results)


def read_results(path: str | Path) -> list[SummaryResult]:
    return ResultsRepository(path).read()


def write_results(results: list[SummaryResult], path: str | Path) -> int:
    return ResultsRepository(path).write(results)
