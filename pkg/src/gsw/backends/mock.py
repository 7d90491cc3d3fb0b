"""Deterministic fixture/heuristic backend.

Fixtures are keyed by a hash of the normalized context so whitespace and
casing variants hit the same recording. On a miss, a trivial extractor
(capitalized-phrase actors, no roles/states, no edges or questions) keeps
the pipeline moving.
"""

from __future__ import annotations

import hashlib
import json
import re
from importlib import resources
from typing import Iterable, Optional

from ..core import (
    EmptyMentionError,
    WorkspaceInstance,
    build_instance,
    instance_from_dict,
    instance_to_dict,
    make_actor,
    make_node,
)
from .config import (
    FULL_STAGE,
    GENERATION_STAGES,
    OracleRequest,
    RawOracleOutput,
)

BUNDLED_FIXTURES = "oracle_fixtures.jsonl"


def normalize_context(context: str) -> str:
    return " ".join(context.lower().split())


def context_hash(context: str) -> str:
    return hashlib.sha1(normalize_context(context).encode("utf-8")).hexdigest()


class FixtureStore:
    """Recorded context -> instance mappings (JSONL, one
    {"context_hash": ..., "instance": {...}} per line)."""

    def __init__(self, entries: Optional[dict[str, dict]] = None):
        self._entries = dict(entries or {})

    def __len__(self) -> int:
        return len(self._entries)

    @classmethod
    def from_lines(cls, lines: Iterable[str]) -> "FixtureStore":
        entries = {}
        for line in lines:
            line = line.strip()
            if not line:
                continue
            record = json.loads(line)
            entries[record["context_hash"]] = record["instance"]
        return cls(entries)

    @classmethod
    def from_jsonl(cls, path: str) -> "FixtureStore":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_lines(fh)

    @classmethod
    def bundled(cls) -> "FixtureStore":
        text = (
            resources.files("gsw")
            .joinpath("fixtures", BUNDLED_FIXTURES)
            .read_text(encoding="utf-8")
        )
        return cls.from_lines(text.splitlines())

    def record(self, context: str, instance: WorkspaceInstance) -> None:
        self._entries[context_hash(context)] = instance_to_dict(instance)

    def lookup(self, context: str) -> Optional[WorkspaceInstance]:
        data = self._entries.get(context_hash(context))
        if data is None:
            return None
        return instance_from_dict(data)


_CAP_RUN_RE = re.compile(r"\b(?:[A-Z][\w'-]*|\d+)(?:[ \t]+(?:[A-Z][\w'-]*|\d+))*\b")


def heuristic_instance(context: str, situation: str, seg: int) -> WorkspaceInstance:
    """Fallback extraction: capitalized phrases become actors with the
    "none" role/state placeholder; no edges, no questions."""
    drafts = []
    seen = set()
    for match in _CAP_RUN_RE.finditer(context):
        try:
            actor = make_actor(match.group(0), situation)
        except EmptyMentionError:
            continue
        if actor.canonical_id in seen or len(actor.mention) < 2:
            continue
        seen.add(actor.canonical_id)
        drafts.append(make_node(actor, "none", "none", seg))
    return build_instance(situation, seg, drafts)


def mock_lookup(
    context: str, store: Optional[FixtureStore] = None, situation: str = "crime_and_justice", seg: int = 1
) -> WorkspaceInstance:
    """Fixture hit returns the recording verbatim; a miss falls through to
    the heuristic extractor so the caller always gets an instance."""
    store = store if store is not None else FixtureStore.bundled()
    hit = store.lookup(context)
    if hit is not None:
        return hit
    return heuristic_instance(context, situation, seg)


def stage_slice(full: WorkspaceInstance, stage: str, situation: str, seg: int) -> dict:
    """Cumulative canonical fragment for one generation stage, derived from
    a complete instance. Later stages strictly contain earlier ones, which
    is what makes the stage-monotonicity contract testable."""
    doc = instance_to_dict(full)
    doc["situation"] = situation
    doc["segment"] = seg
    if stage == FULL_STAGE or stage == "questions":
        return doc
    doc["questions"] = []
    if stage == "predicates":
        return doc
    doc["edges"] = []
    if stage == "states":
        return doc
    if stage == "roles":
        doc["nodes"] = [
            {"actor": row["actor"], "role": row["role"], "state": "none"}
            for row in doc["nodes"]
        ]
        return doc
    if stage == "actors":
        seen = set()
        rows = []
        for row in doc["nodes"]:
            if row["actor"] in seen:
                continue
            seen.add(row["actor"])
            rows.append({"actor": row["actor"], "role": "none", "state": "none"})
        doc["nodes"] = rows
        return doc
    raise ValueError(f"unknown stage: {stage!r}")


class MockBackend:
    """Stage oracle answering from the fixture store (heuristic on miss)."""

    def __init__(self, store: Optional[FixtureStore] = None):
        self.store = store if store is not None else FixtureStore.bundled()

    def stage_output(self, req: OracleRequest) -> RawOracleOutput:
        seg = req.conditioning.segment_index
        full = self.store.lookup(req.context)
        if full is None:
            full = heuristic_instance(req.context, req.situation, seg)
        fragment = stage_slice(full, req.stage, req.situation, seg)
        return RawOracleOutput(
            json.dumps(fragment, ensure_ascii=False, sort_keys=True)
        )


__all__ = [
    "FixtureStore",
    "MockBackend",
    "context_hash",
    "heuristic_instance",
    "mock_lookup",
    "normalize_context",
    "stage_slice",
    "GENERATION_STAGES",
]
