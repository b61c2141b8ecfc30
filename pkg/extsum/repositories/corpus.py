from __future__ import annotations

import json
from pathlib import Path

from pydantic import BaseModel, ConfigDict, ValidationError

from extsum.data_models import Document, LabeledDocument
from extsum.errors import CorpusFormatError
from extsum.logging_config import get_logger

logger = get_logger(__name__)


class CorpusRecord(BaseModel):
    """One JSONL line of a corpus file. Unknown keys are ignored."""

    model_config = ConfigDict(extra="ignore")

    id: str
    sentences: list[str]
    abstractive: list[str] | None = None
    labels: list[int] | None = None

    def to_document(self) -> Document:
        return Document(
            id=self.id,
            sentences=self.sentences,
            abstractive=self.abstractive,
            labels=self.labels,
        )

    @classmethod
    def from_document(cls, doc: Document) -> CorpusRecord:
        return cls(
            id=doc.id,
            sentences=[s.raw for s in doc.sentences],
            abstractive=[s.raw for s in doc.abstractive] if doc.abstractive is not None else None,
            labels=list(doc.labels) if doc.labels is not None else None,
        )


def _reason(error: ValidationError) -> str:
    first = error.errors()[0]
    location = ".".join(str(part) for part in first["loc"])
    message = first["msg"].removeprefix("Value error, ")
    return f"{location}: {message}" if location else message


def _decode_reason(error: UnicodeDecodeError) -> str:
    return f"invalid UTF-8 at byte {error.start}: {error.reason}"


class CorpusRepository:
    """Reads and writes a JSONL corpus file, one document per line."""

    def __init__(self, path: str | Path):
        self.path = Path(path)

    def read(self) -> list[Document]:
        docs: list[Document] = []
        seen: set[str] = set()
        with open(self.path, "rb") as f:
            for line_number, raw in enumerate(f, start=1):
                try:
                    line = raw.decode("utf-8")
                except UnicodeDecodeError as e:
                    raise CorpusFormatError(_decode_reason(e), line_number) from e
                if not line.strip():
                    continue
                try:
                    doc = CorpusRecord.model_validate_json(line).to_document()
                except ValidationError as e:
                    raise CorpusFormatError(_reason(e), line_number) from e
                if doc.id in seen:
                    raise CorpusFormatError(f"duplicate id {doc.id!r}", line_number)
                seen.add(doc.id)
                docs.append(doc)

        logger.info(f"Read {len(docs)} documents from {self.path}")
        return docs

    def write(self, docs: list[Document]) -> int:
        try:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with open(self.path, "w", encoding="utf-8") as f:
                for doc in docs:
                    record = CorpusRecord.from_document(doc).model_dump(exclude_none=True)
                    f.write(json.dumps(record, ensure_ascii=False) + "\n")
        except OSError as e:
            raise OSError(f"cannot write corpus to {self.path}: {e}") from e

        logger.info(f"Wrote {len(docs)} documents to {self.path}")
        return len(docs)


# Optional functional facade for convenience
def read_corpus(path: str | Path) -> list[Document]:
    return CorpusRepository(path).read()


def write_corpus(docs: list[Document], path: str | Path) -> int:
    return CorpusRepository(path).write(docs)


def write_labeled_corpus(docs: list[LabeledDocument], path: str | Path) -> int:
    return CorpusRepository(path).write([labeled.document for labeled in docs])


def read_article(path: str | Path) -> str:
    """Reads one raw-text article; invalid UTF-8 is reported with its line number."""
    data = Path(path).read_bytes()
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as e:
        line_number = data.count(b"\n", 0, e.start) + 1
        raise CorpusFormatError(_decode_reason(e), line_number) from e
