"""Dataset assembly: counts, negatives, skipping, stats."""

import pytest

from gsw_datagen.examples import generate_silver, negative_quota
from gsw_datagen.stats import corpus_stats, format_stats_table
from gsw_datagen.teacher import TeacherError, TeacherSession, MockTransport, ResponseCache
from gsw_datagen.train_config import TrainConfig

from conftest import synthetic_corpus


def mock_session(cache_dir=None) -> TeacherSession:
    return TeacherSession(MockTransport(), ResponseCache(cache_dir))


class TestCrimeStoryCounts:
    def test_minimum_example_counts(self, crime_corpus):
        ds = generate_silver(crime_corpus, mock_session(), neg_rate=0.40, window=1)
        counts = ds.counts()
        assert counts["operator_examples"] >= 10
        assert counts["rec_examples"] >= 2
        assert counts["qr_examples"] >= 2
        assert counts["skipped"] == 0

    def test_one_operator_example_per_stage_per_segment(self, crime_corpus):
        ds = generate_silver(crime_corpus, mock_session(), neg_rate=0.0, window=1)
        stages = [r["stage"] for r in ds.operator if not r.get("negative")]
        assert stages == ["actors", "roles", "states", "predicates", "questions"] * 2


class TestNegativeInjection:
    def test_quota_formula_hits_40_of_100(self):
        assert negative_quota(60, 0.40) == 40  # 40 of 100 predicate examples

    def test_zero_rate_means_zero_none_targets(self, crime_corpus):
        ds = generate_silver(crime_corpus, mock_session(), neg_rate=0.0, window=1)
        for row in ds.operator:
            assert not row.get("negative")
            for edge in row["target"]["edges"]:
                assert edge["label"] != "none"

    def test_negative_targets_are_none_rejections(self, crime_corpus):
        ds = generate_silver(crime_corpus, mock_session(), neg_rate=0.40, window=1)
        negatives = [r for r in ds.operator if r.get("negative")]
        assert negatives
        for row in negatives:
            assert row["stage"] == "predicates"
            assert [e["label"] for e in row["target"]["edges"]] == ["none"]
            pair = row["input"]["candidate"]
            actors = {n["actor"] for n in row["target"]["nodes"]}
            assert pair["source"] in actors and pair["target"] in actors


class TestFailureHandling:
    def test_teacher_failure_skips_and_logs(self, crime_corpus):
        class FlakyTransport(MockTransport):
            def complete(self, payload):
                user = payload["messages"][1]["content"]
                if "Police" in user:
                    raise TeacherError("synthetic outage")
                return super().complete(payload)

        session = TeacherSession(FlakyTransport(), ResponseCache(None))
        ds = generate_silver(crime_corpus, session, window=1)
        assert any("synthetic outage" in s for s in ds.skipped)
        # the surviving segment still contributed its five stage examples
        assert len([r for r in ds.operator if not r.get("negative")]) == 5

    def test_bad_neg_rate_rejected(self, crime_corpus):
        with pytest.raises(ValueError):
            generate_silver(crime_corpus, mock_session(), neg_rate=1.0)


class TestStats:
    def test_single_doc_counts(self):
        corpus = [
            {
                "doc_id": "d1",
                "situation": "economy",
                "text": "Rates rose fast. Markets cooled.",
            }
        ]
        rows = corpus_stats(corpus)
        assert rows == [
            {"situation": "economy", "documents": 1, "sentences": 2, "tokens": 5}
        ]
        assert rows[0]["tokens"] == len(corpus[0]["text"].split())

    def test_empty_corpus(self):
        assert corpus_stats([]) == []

    def test_table_layout(self):
        table = format_stats_table(corpus_stats(synthetic_corpus(3)))
        assert "Situation Label" in table and "Documents" in table
        assert "Sentences" in table and "Tokens" in table


class TestTrainConfig:
    def test_training_recipe_defaults(self):
        cfg = TrainConfig()
        assert (cfg.epochs, cfg.batch_size, cfg.lora_rank) == (10, 8, 2)
        assert (cfg.lora_dropout, cfg.lora_alpha) == (0.05, 32)
        assert cfg.max_window_tokens == 1024
        assert cfg.precision == "4bit"
        assert cfg.base_model == "llama-2-13b"
        assert cfg.adapter_for("economy") == "gsw-economy"
