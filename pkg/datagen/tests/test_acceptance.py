"""Secondary acceptance: replay determinism, negative fraction, and the
cross-component schema contract (targets checked by the primary parser and
the shared schema file)."""

import json
import time
from importlib import resources
from pathlib import Path

import jsonschema

from gsw_datagen.cli import main

from conftest import synthetic_corpus


def report(name: str, started: float) -> None:
    print(f"ACCEPTANCE PASS: {name} ({time.perf_counter() - started:.2f}s)")


def write_corpus(path: Path, rows) -> str:
    path.write_text("\n".join(json.dumps(r) for r in rows) + "\n")
    return str(path)


def run_generate(corpus: str, out: Path, cache: Path, cache_only=False, extra=()):
    args = [
        "generate",
        "--corpus",
        corpus,
        "--out",
        str(out),
        "--teacher",
        "mock",
        "--cache",
        str(cache),
        "--window",
        "1",
    ]
    if cache_only:
        args.append("--cache-only")
    args.extend(extra)
    assert main(args) == 0


def read_bytes(out: Path) -> dict[str, bytes]:
    return {
        name: (out / name).read_bytes()
        for name in ("operator.jsonl", "rec.jsonl", "qr.jsonl", "train_config.json")
    }


def test_datagen_replay_byte_identical(tmp_path, crime_corpus):
    """A cache-only rerun (no live teacher) emits byte-identical JSONL."""
    started = time.perf_counter()
    corpus = write_corpus(tmp_path / "corpus.jsonl", crime_corpus)
    cache = tmp_path / "cache"
    first, second = tmp_path / "run1", tmp_path / "run2"
    run_generate(corpus, first, cache)
    run_generate(corpus, second, cache, cache_only=True)
    assert read_bytes(first) == read_bytes(second)
    report("datagen replay (cache-only rerun byte-identical)", started)


def test_negative_fraction_at_scale(tmp_path):
    """At >= 1000 predicate examples the 'none' fraction is 0.40 +/- 0.02."""
    started = time.perf_counter()
    corpus = write_corpus(tmp_path / "big.jsonl", synthetic_corpus(334))
    out = tmp_path / "out"
    run_generate(corpus, out, tmp_path / "cache")
    rows = [
        json.loads(line)
        for line in (out / "operator.jsonl").read_text().splitlines()
    ]
    predicates = [r for r in rows if r["stage"] == "predicates"]
    negatives = [r for r in predicates if r.get("negative")]
    assert len(predicates) >= 1000
    fraction = len(negatives) / len(predicates)
    assert abs(fraction - 0.40) <= 0.02, f"negative fraction {fraction:.3f}"
    report(
        f"negative fraction {fraction:.3f} over {len(predicates)} predicate examples",
        started,
    )


def test_targets_validate_against_shared_schema(tmp_path, crime_corpus):
    """Every emitted operator target parses with the primary component's
    parser and validates against the shared instance schema file; rec/qr
    labels stay in range."""
    started = time.perf_counter()
    corpus = write_corpus(
        tmp_path / "corpus.jsonl", crime_corpus + synthetic_corpus(40)
    )
    out = tmp_path / "out"
    run_generate(corpus, out, tmp_path / "cache")

    # shared schema file shipped by the primary package
    schema = json.loads(
        resources.files("gsw")
        .joinpath("schema", "instance.schema.json")
        .read_text(encoding="utf-8")
    )
    validator = jsonschema.Draft7Validator(schema)

    # the primary component's parser is the contract oracle
    from gsw.backends import parse_oracle_output

    operator_rows = [
        json.loads(line)
        for line in (out / "operator.jsonl").read_text().splitlines()
    ]
    assert operator_rows
    for row in operator_rows:
        target = row["target"]
        validator.validate(target)
        fragment, status = parse_oracle_output(json.dumps(target))
        assert status == "clean", f"primary parser rejected target: {row['stage']}"
        assert fragment is not None

    for name, allowed in (("rec.jsonl", (0, 1, 2)), ("qr.jsonl", (0, 1))):
        rows = [json.loads(line) for line in (out / name).read_text().splitlines()]
        assert rows
        for row in rows:
            assert row["target"] in allowed

    config = json.loads((out / "train_config.json").read_text())
    assert (config["epochs"], config["batch_size"], config["lora_rank"]) == (10, 8, 2)
    assert config["counts"]["documents"] == 41
    assert "operator_examples" in config["counts"]
    report(
        f"schema contract ({len(operator_rows)} operator targets via primary parser)",
        started,
    )
