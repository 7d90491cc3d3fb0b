"""gsw-datagen: silver-standard dataset generation and corpus statistics."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from .examples import generate_silver
from .schema import canonical_json
from .stats import corpus_stats, format_stats_table
from .teacher import TeacherError, make_session
from .train_config import TrainConfig, emit_train_config

log = logging.getLogger("gsw_datagen")


def read_corpus(path: str) -> list[dict]:
    with open(path, "r", encoding="utf-8") as fh:
        return [json.loads(line) for line in fh if line.strip()]


def write_jsonl(path: str, rows: list[dict]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for row in rows:
            fh.write(canonical_json(row))
            fh.write("\n")


def cmd_generate(args) -> int:
    corpus = read_corpus(args.corpus)
    session = make_session(
        args.teacher,
        args.cache,
        endpoint=args.endpoint,
        model=args.model,
        cache_only=args.cache_only,
    )
    datasets = generate_silver(
        corpus, session, neg_rate=args.neg_rate, window=args.window
    )
    os.makedirs(args.out, exist_ok=True)
    write_jsonl(os.path.join(args.out, "operator.jsonl"), datasets.operator)
    write_jsonl(os.path.join(args.out, "rec.jsonl"), datasets.rec)
    write_jsonl(os.path.join(args.out, "qr.jsonl"), datasets.qr)
    situations = sorted({str(r.get("situation", "")) for r in corpus if r.get("situation")})
    counts = datasets.counts()
    emit_train_config(args.out, TrainConfig(base_model=args.base_model), situations, counts)
    print(json.dumps(counts, indent=2, sort_keys=True))
    return 0


def cmd_stats(args) -> int:
    print(format_stats_table(corpus_stats(read_corpus(args.corpus))))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gsw-datagen", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="emit silver-standard datasets")
    gen.add_argument("--corpus", required=True, help="JSONL of doc_id/situation/text")
    gen.add_argument("--out", required=True, help="output directory")
    gen.add_argument("--teacher", choices=("mock", "remote"), default="mock")
    gen.add_argument("--endpoint", default=None, help="teacher API base URL")
    gen.add_argument("--model", default="gpt-4")
    gen.add_argument("--cache", default=None, help="teacher response cache directory")
    gen.add_argument("--cache-only", action="store_true", help="replay from cache only")
    gen.add_argument("--neg-rate", type=float, default=0.40)
    gen.add_argument("--window", type=int, default=3)
    gen.add_argument("--base-model", default="llama-2-13b")
    gen.set_defaults(func=cmd_generate)

    st = sub.add_parser("stats", help="per-situation corpus statistics")
    st.add_argument("--corpus", required=True)
    st.set_defaults(func=cmd_stats)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (TeacherError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
