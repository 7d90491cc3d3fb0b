"""Command-line surface: run, export, eval, validate, replay.

Exit codes: 0 success (skipped segments still count as success), 1 a
document aborted or a check failed, 2 unusable input or configuration.
User errors never print stack traces.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ThreadPoolExecutor

from .backends import BackendConfig, BackendConfigError
from .core import (
    instance_from_dict,
    instance_to_dict,
    instance_warnings,
    pretty_json,
    validate_instance,
)
from .evalharness import format_report, load_pairs, score
from .export import export_dot, export_graphml
from .pipeline import (
    Document,
    PipelineConfig,
    ReplayDivergenceError,
    load_document,
    record_from_dict,
    replay,
    run_document,
    write_outputs,
)

log = logging.getLogger("gsw")

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_USAGE):
        super().__init__(message)
        self.code = code


def _read_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise CliError(f"file not found: {path}")
    except json.JSONDecodeError as exc:
        raise CliError(f"{path}: not valid JSON: {exc}")


def _read_jsonl(path: str) -> list[dict]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except FileNotFoundError:
        raise CliError(f"file not found: {path}")
    rows = []
    for i, line in enumerate(lines, 1):
        line = line.strip()
        if not line:
            continue
        try:
            rows.append(json.loads(line))
        except json.JSONDecodeError as exc:
            raise CliError(f"{path}:{i}: not valid JSON: {exc}")
    return rows


def _backend_config(args, situation: str) -> BackendConfig:
    try:
        return BackendConfig(
            kind=args.backend,
            situation=situation,
            endpoint=getattr(args, "endpoint", None),
            fixtures_path=getattr(args, "fixtures", None),
        )
    except BackendConfigError as exc:
        raise CliError(str(exc))


_RUN_DEFAULTS = {"window": 3, "overlap": 0, "hops": 1, "jobs": 1, "seed": None}


def _apply_config_file(args) -> None:
    """Optional JSON config mirroring PipelineConfig; explicit flags win
    over the file, the file wins over built-in defaults."""
    config = {}
    if getattr(args, "config", None):
        config = _read_json(args.config)
        if not isinstance(config, dict):
            raise CliError(f"{args.config}: config must be a JSON object")
    for key, default in _RUN_DEFAULTS.items():
        if getattr(args, key) is None:
            setattr(args, key, config.get(key, default))
    if not args.no_prune and config.get("prune") is False:
        args.no_prune = True
    if args.backend is None:
        args.backend = config.get("backend", "mock")
    if args.endpoint is None:
        args.endpoint = config.get("endpoint")


def cmd_run(args) -> int:
    _apply_config_file(args)
    rows = _read_jsonl(args.corpus)
    if not rows:
        log.warning("corpus %s is empty; nothing to do", args.corpus)
        return EXIT_OK
    try:
        documents = [load_document(row, args.situation) for row in rows]
    except (KeyError, ValueError) as exc:
        raise CliError(f"bad corpus line: {exc}")

    def run_one(doc: Document) -> bool:
        cfg = PipelineConfig(
            operator=_backend_config(args, doc.situation),
            reconciler=_backend_config(args, doc.situation),
            window=args.window,
            overlap=args.overlap,
            prune=not args.no_prune,
            hops=args.hops,
            seed=args.seed,
        )
        try:
            record = run_document(doc, cfg)
        except Exception as exc:  # noqa: BLE001 - report, do not trace
            log.error("document %s aborted: %s", doc.doc_id, exc)
            return False
        write_outputs(record, args.out)
        skipped = sum(1 for s in record.snapshots if s.skipped)
        if skipped:
            log.warning("document %s: %d segment(s) skipped", doc.doc_id, skipped)
        return True

    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(run_one, documents))
    else:
        results = [run_one(doc) for doc in documents]
    return EXIT_OK if all(results) else EXIT_FAILURE


def cmd_export(args) -> int:
    data = _read_json(args.input)
    try:
        instance = instance_from_dict(data)
    except Exception as exc:  # noqa: BLE001
        raise CliError(f"{args.input}: not an instance: {exc}")
    violations = validate_instance(instance)
    if violations:
        raise CliError(f"{args.input}: invalid instance: {violations[0]}")
    rendered = (
        export_graphml(instance) if args.format == "graphml" else export_dot(instance)
    )
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(rendered)
            fh.write("\n")
    else:
        print(rendered)
    return EXIT_OK


def cmd_eval(args) -> int:
    rows = _read_jsonl(args.pairs)
    if not rows:
        raise CliError(f"{args.pairs}: no labeled pairs")
    try:
        pairs = load_pairs([json.dumps(r) for r in rows])
        reports = {}
        for task in sorted({p.task for p in pairs}):
            reports[task] = score([p for p in pairs if p.task == task])
    except ValueError as exc:
        raise CliError(str(exc))
    for task, report in reports.items():
        print(format_report(report))
        print()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(pretty_json({t: r.to_dict() for t, r in reports.items()}))
            fh.write("\n")
    return EXIT_OK


def cmd_validate(args) -> int:
    if args.kind == "instance":
        data = _read_json(args.input)
        try:
            instance = instance_from_dict(data)
        except Exception as exc:  # noqa: BLE001
            print(f"unparseable instance: {exc}")
            return EXIT_FAILURE
        violations = validate_instance(instance)
        for warning in instance_warnings(instance):
            log.warning("%s", warning)
    elif args.kind == "corpus":
        violations = []
        for i, row in enumerate(_read_jsonl(args.input), 1):
            for key in ("doc_id", "situation", "text"):
                if key not in row:
                    violations.append(f"line {i}: missing {key}")
    else:  # record
        try:
            record = record_from_dict(_read_json(args.input))
        except Exception as exc:  # noqa: BLE001
            print(f"unparseable record: {exc}")
            return EXIT_FAILURE
        violations = validate_instance(record.final_consensus)
    if violations:
        for v in violations:
            print(v)
        return EXIT_FAILURE
    print("ok")
    return EXIT_OK


def cmd_replay(args) -> int:
    record = record_from_dict(_read_json(args.record))
    try:
        consensus = replay(record)
    except ReplayDivergenceError as exc:
        print(str(exc))
        return EXIT_FAILURE
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(pretty_json(instance_to_dict(consensus)))
            fh.write("\n")
    print("replay ok")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gsw", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run the pipeline over a corpus")
    run.add_argument("--corpus", required=True, help="JSONL of doc_id/situation/text")
    run.add_argument("--situation", default=None, help="default situation label")
    run.add_argument("--backend", choices=("mock", "remote"), default=None)
    run.add_argument("--endpoint", default=None, help="remote endpoint override")
    run.add_argument("--fixtures", default=None, help="fixture store JSONL for mock")
    run.add_argument("--out", required=True, help="output directory")
    run.add_argument("--config", default=None, help="JSON config mirroring PipelineConfig")
    run.add_argument("--window", type=int, default=None)
    run.add_argument("--overlap", type=int, default=None)
    run.add_argument("--no-prune", action="store_true")
    run.add_argument("--hops", type=int, default=None)
    run.add_argument("--seed", type=int, default=None)
    run.add_argument("--jobs", type=int, default=None)
    run.set_defaults(func=cmd_run)

    export = sub.add_parser("export", help="render a consensus instance")
    export.add_argument("input", help="instance JSON file")
    export.add_argument("--format", choices=("dot", "graphml"), default="dot")
    export.add_argument("--out", default=None)
    export.set_defaults(func=cmd_export)

    ev = sub.add_parser("eval", help="score labeled reconciler pairs")
    ev.add_argument("--pairs", required=True, help="JSONL of task/gold/pred")
    ev.add_argument("--out", default=None, help="write the MetricReport JSON here")
    ev.set_defaults(func=cmd_eval)

    val = sub.add_parser("validate", help="validate an artifact")
    val.add_argument("input")
    val.add_argument("--kind", choices=("instance", "corpus", "record"), default="instance")
    val.set_defaults(func=cmd_validate)

    rep = sub.add_parser("replay", help="re-fold a run record and verify it")
    rep.add_argument("record")
    rep.add_argument("--out", default=None)
    rep.set_defaults(func=cmd_replay)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
