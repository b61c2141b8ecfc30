import json

import numpy as np
import pytest
from conftest import marker_corpus, marker_vocabulary, write_jsonl, write_vectors

from extsum.config import TrainConfig
from extsum.errors import ExtsumError, PipelineStageError
from extsum.repositories import read_corpus, read_results
from extsum.services.pipeline import (
    CHECKPOINT_FILE,
    CONFIG_FILE,
    LABELED_FILE,
    REPORT_JSON,
    REPORT_TEXT,
    RESULTS_FILE,
    run_pipeline,
    split_corpus,
)

ARTIFACTS = (LABELED_FILE, CHECKPOINT_FILE, RESULTS_FILE, REPORT_JSON, REPORT_TEXT, CONFIG_FILE)


@pytest.fixture
def inputs(tmp_path):
    return {
        "corpus": write_jsonl(tmp_path / "corpus.jsonl", marker_corpus(20, 10, seed=3)),
        "vectors": write_vectors(tmp_path / "vectors.txt", marker_vocabulary()),
    }


@pytest.fixture
def tiny_config():
    return TrainConfig(
        epochs=2, learning_rate=0.01, batch_size=4, input_dim=16, hidden_dim=4, doc_dim=4, seed=3
    )


class TestSplit:
    def test_sizes(self):
        docs = list(range(50))
        train, holdout = split_corpus(docs, 0.1, seed=1)
        assert len(holdout) == 5
        assert sorted(train + holdout) == docs

    def test_keeps_corpus_order(self):
        train, holdout = split_corpus(list(range(30)), 0.3, seed=4)
        assert train == sorted(train)
        assert holdout == sorted(holdout)

    def test_seeded(self):
        docs = list(range(40))
        assert split_corpus(docs, 0.25, seed=9) == split_corpus(docs, 0.25, seed=9)
        assert split_corpus(docs, 0.25, seed=9) != split_corpus(docs, 0.25, seed=10)

    @pytest.mark.parametrize(("n", "fraction"), [(2, 0.1), (3, 0.0), (5, 0.99)])
    def test_both_parts_non_empty(self, n, fraction):
        train, holdout = split_corpus(list(range(n)), fraction, seed=0)
        assert train and holdout

    def test_needs_two_documents(self):
        with pytest.raises(ExtsumError, match="at least 2"):
            split_corpus(["only"], 0.5, seed=0)


class TestRunPipeline:
    def test_writes_every_artifact(self, inputs, tiny_config, tmp_path):
        run = run_pipeline(inputs["corpus"], inputs["vectors"], tiny_config, tmp_path / "run")
        for name in ARTIFACTS:
            assert (tmp_path / "run" / name).is_file(), name

        assert len(run.holdout_ids) == 2
        assert not set(run.holdout_ids) & set(run.train_ids)
        assert [r.doc_id for r in read_results(tmp_path / "run" / RESULTS_FILE)] == run.holdout_ids
        assert len(read_corpus(tmp_path / "run" / LABELED_FILE)) == 20
        assert len(run.train_report.epoch_losses) == 2

        report = json.loads((tmp_path / "run" / REPORT_JSON).read_text(encoding="utf-8"))
        assert report["num_documents"] == 2
        assert report["aggregate"] == "macro"
        text = (tmp_path / "run" / REPORT_TEXT).read_text(encoding="utf-8")
        assert "Sentence matching gold standard" in text

    def test_same_seed_is_byte_identical(self, inputs, tiny_config, tmp_path):
        run_pipeline(inputs["corpus"], inputs["vectors"], tiny_config, tmp_path / "one")
        run_pipeline(inputs["corpus"], inputs["vectors"], tiny_config, tmp_path / "two")
        for name in ARTIFACTS:
            assert (tmp_path / "one" / name).read_bytes() == (tmp_path / "two" / name).read_bytes()

    def test_unlabeled_corpus_uses_auto_labels_as_gold(self, tmp_path, tiny_config):
        corpus = write_jsonl(
            tmp_path / "corpus.jsonl", marker_corpus(12, 8, seed=5, with_labels=False)
        )
        vectors = write_vectors(tmp_path / "vectors.txt", marker_vocabulary())
        run = run_pipeline(corpus, vectors, tiny_config, tmp_path / "run")
        assert run.report.num_documents == 1

    def test_missing_abstractive_fails_at_label(self, tmp_path, tiny_config):
        records = [
            {"id": r["id"], "sentences": r["sentences"]} for r in marker_corpus(5, 6, seed=1)
        ]
        corpus = write_jsonl(tmp_path / "corpus.jsonl", records)
        vectors = write_vectors(tmp_path / "vectors.txt", marker_vocabulary())
        with pytest.raises(PipelineStageError) as excinfo:
            run_pipeline(corpus, vectors, tiny_config, tmp_path / "run")
        assert excinfo.value.stage == "label"
        assert (tmp_path / "run" / CONFIG_FILE).is_file()

    def test_vector_dimension_mismatch_fails_at_train(self, inputs, tmp_path):
        config = TrainConfig(epochs=1, input_dim=8, hidden_dim=4, doc_dim=4)
        with pytest.raises(PipelineStageError, match="expected dimension 8, got 16") as excinfo:
            run_pipeline(inputs["corpus"], inputs["vectors"], config, tmp_path / "run")
        assert excinfo.value.stage == "train"


@pytest.mark.slow
def test_marker_sentences_are_learned(tmp_path):
    corpus = write_jsonl(tmp_path / "corpus.jsonl", marker_corpus(200, 20, seed=11))
    vectors = write_vectors(tmp_path / "vectors.txt", marker_vocabulary())
    config = TrainConfig(
        epochs=20,
        learning_rate=0.02,
        batch_size=4,
        input_dim=16,
        hidden_dim=8,
        doc_dim=8,
        holdout_fraction=0.1,
        seed=13,
    )
    run = run_pipeline(corpus, vectors, config, tmp_path / "run")

    losses = run.train_report.epoch_losses
    assert np.all(np.isfinite(losses))
    assert losses[-1] < 0.1 * losses[0]
    assert run.report.num_documents == 20
    sentence_match = next(row for row in run.report.rows if row.name == "sentence_match")
    assert sentence_match.f1 >= 0.9
