import json

import pytest
from conftest import write_jsonl
from hypothesis import HealthCheck, given, settings, strategies as st
from pydantic import ValidationError

from extsum.data_models import Document, Sentence
from extsum.errors import CorpusFormatError
from extsum.repositories import CorpusRepository, read_article, read_corpus, write_corpus


class TestDocumentModel:
    def test_sentence_tokens_follow_raw(self):
        sentence = Sentence(raw="The Cat, sat!", tokens=["ignored"])
        assert sentence.tokens == ["the", "cat", "sat"]

    def test_labels_present(self):
        d = Document(id="a", sentences=["A.", "B.", "C."], labels=[1, 0, 1])
        assert d.labels == [1, 0, 1]
        assert d.gold_indices == [0, 2]

    def test_label_length_mismatch(self):
        with pytest.raises(ValidationError, match="label length mismatch"):
            Document(id="a", sentences=["A.", "B.", "C."], labels=[1, 0])

    def test_labels_must_mark_a_sentence(self):
        with pytest.raises(ValidationError, match="at least one"):
            Document(id="a", sentences=["A.", "B."], labels=[0, 0])

    def test_no_sentences(self):
        with pytest.raises(ValidationError):
            Document(id="a", sentences=[])


class TestReadCorpus:
    def test_minimal_record(self, tmp_path):
        path = write_jsonl(tmp_path / "c.jsonl", [{"id": "a", "sentences": ["X y."]}])
        docs = read_corpus(path)
        assert len(docs) == 1
        assert docs[0].sentences[0].raw == "X y."
        assert docs[0].sentences[0].tokens == ["x", "y"]
        assert docs[0].labels is None
        assert docs[0].abstractive is None

    def test_unknown_keys_ignored(self, tmp_path):
        path = write_jsonl(tmp_path / "c.jsonl", [{"id": "a", "sentences": ["X."], "url": "u"}])
        assert read_corpus(path)[0].id == "a"

    def test_blank_lines_skipped(self, tmp_path):
        path = tmp_path / "c.jsonl"
        path.write_text('\n{"id": "a", "sentences": ["X."]}\n\n', encoding="utf-8")
        assert [d.id for d in read_corpus(path)] == ["a"]

    def test_malformed_line_reports_line_number(self, tmp_path):
        path = tmp_path / "c.jsonl"
        path.write_text('{"id": "a", "sentences": ["X."]}\n{"id": "b", \n', encoding="utf-8")
        with pytest.raises(CorpusFormatError) as excinfo:
            read_corpus(path)
        assert excinfo.value.line_number == 2
        assert "line 2" in str(excinfo.value)

    def test_label_mismatch_reports_reason(self, tmp_path):
        record = {"id": "a", "sentences": ["A.", "B.", "C."], "labels": [1, 0]}
        path = write_jsonl(tmp_path / "c.jsonl", [record])
        with pytest.raises(CorpusFormatError, match="label length mismatch") as excinfo:
            read_corpus(path)
        assert excinfo.value.line_number == 1

    def test_duplicate_id(self, tmp_path):
        records = [{"id": "a", "sentences": ["X."]}, {"id": "a", "sentences": ["Y."]}]
        path = write_jsonl(tmp_path / "c.jsonl", records)
        with pytest.raises(CorpusFormatError, match="duplicate id") as excinfo:
            read_corpus(path)
        assert excinfo.value.line_number == 2

    def test_invalid_utf8_reports_line_number(self, tmp_path):
        path = tmp_path / "c.jsonl"
        path.write_bytes(
            b'{"id": "a", "sentences": ["X."]}\n{"id": "b", "sentences": ["\xff bad"]}\n'
        )
        with pytest.raises(CorpusFormatError, match="invalid UTF-8") as excinfo:
            read_corpus(path)
        assert excinfo.value.line_number == 2

    def test_crlf_line_endings(self, tmp_path):
        path = tmp_path / "c.jsonl"
        path.write_bytes(
            b'{"id": "a", "sentences": ["X."]}\r\n{"id": "b", "sentences": ["Y."]}\r\n'
        )
        assert [d.id for d in read_corpus(path)] == ["a", "b"]

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            read_corpus(tmp_path / "absent.jsonl")


class TestWriteCorpus:
    def test_empty_list_gives_empty_file(self, tmp_path):
        path = tmp_path / "out.jsonl"
        assert write_corpus([], path) == 0
        assert path.read_text(encoding="utf-8") == ""

    def test_optional_fields_preserved(self, tmp_path):
        d = Document(
            id="a",
            sentences=["Über café.", "Second."],
            abstractive=["Summary — here."],
            labels=[0, 1],
        )
        path = tmp_path / "out.jsonl"
        write_corpus([d], path)
        record = json.loads(path.read_text(encoding="utf-8"))
        assert record == {
            "id": "a",
            "sentences": ["Über café.", "Second."],
            "abstractive": ["Summary — here."],
            "labels": [0, 1],
        }
        assert read_corpus(path) == [d]

    def test_absent_fields_not_emitted(self, tmp_path):
        path = tmp_path / "out.jsonl"
        write_corpus([Document(id="a", sentences=["X."])], path)
        assert json.loads(path.read_text(encoding="utf-8")) == {"id": "a", "sentences": ["X."]}


_text = st.text(min_size=0, max_size=30).filter(lambda s: "\r" not in s)


@st.composite
def documents(draw):
    n = draw(st.integers(min_value=1, max_value=6))
    sentences = draw(st.lists(_text, min_size=n, max_size=n))
    abstractive = draw(st.none() | st.lists(_text, min_size=1, max_size=3))
    labels = draw(
        st.none()
        | st.lists(st.integers(0, 1), min_size=n, max_size=n).filter(lambda ls: sum(ls) > 0)
    )
    return sentences, abstractive, labels


class TestRoundTrip:
    @settings(
        max_examples=50,
        deadline=None,
        suppress_health_check=[HealthCheck.function_scoped_fixture],
    )
    @given(st.lists(documents(), max_size=5))
    def test_corpus_round_trip(self, tmp_path, drawn):
        docs = [
            Document(id=f"d{i}", sentences=s, abstractive=a, labels=lab)
            for i, (s, a, lab) in enumerate(drawn)
        ]
        path = tmp_path / "rt.jsonl"
        repository = CorpusRepository(path)
        repository.write(docs)
        back = repository.read()
        assert back == docs
        repository.write(back)
        assert path.read_bytes() == first


class TestReadArticle:
    def test_text_is_returned_verbatim(self, tmp_path):
        path = tmp_path / "a.txt"
        path.write_text("First line.\nSecond — line.", encoding="utf-8")
        assert read_article(path) == "First line.\nSecond — line."

    def test_invalid_utf8_reports_line_number(self, tmp_path):
        path = tmp_path / "a.txt"
        path.write_bytes(b"Fine.\nStill fine.\nBroken \xfe here.")
        with pytest.raises(CorpusFormatError, match="invalid UTF-8") as excinfo:
            read_article(path)
        assert excinfo.value.line_number == 3
