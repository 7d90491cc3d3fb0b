"""Autoregressive pipeline driver.

For each segment C_n: generate an instance, resolve actor aliases against
the working memory, propose candidate pairs, classify them, and merge. A
segment whose generation fails is skipped with a warning and leaves the
consensus untouched; the loop continues.
"""

from __future__ import annotations

import json
import logging
import os
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

from ..backends import BackendConfig, BackendError, backend_for, generate
from ..backends.generate import StageOracle
from ..core import (
    WorkingMemory,
    WorkspaceInstance,
    canonical_json,
    empty_memory,
    instance_from_dict,
    instance_to_dict,
    normalize_situation,
    pretty_json,
)
from ..reconcile import (
    CandidatePairSet,
    ReconcileDecision,
    classify_pair,
    merge,
    propose_pairs,
)
from .aliases import resolve_aliases
from .segment import segment

log = logging.getLogger(__name__)

Classifier = Callable[[str, object, object, str], ReconcileDecision]


@dataclass
class Document:
    doc_id: str
    situation: str
    text: str
    segments: list[str] = field(default_factory=list)

    def __post_init__(self):
        self.situation = normalize_situation(self.situation)


@dataclass
class PipelineConfig:
    operator: BackendConfig
    reconciler: Optional[BackendConfig] = None
    window: int = 3
    overlap: int = 0
    prune: bool = True
    hops: int = 1
    seed: Optional[int] = None

    def __post_init__(self):
        if not 1 <= self.window <= 10:
            raise ValueError("window must be in 1..10")
        if not 0 <= self.overlap < self.window:
            raise ValueError("overlap must satisfy 0 <= overlap < window")
        if self.hops < 0:
            raise ValueError("hops must be >= 0")

    def summary(self) -> dict:
        return {
            "window": self.window,
            "overlap": self.overlap,
            "prune": self.prune,
            "hops": self.hops,
            "operator": self.operator.kind,
            "reconciler": self.reconciler.kind if self.reconciler else "mock",
            "seed": self.seed,
        }


@dataclass
class SegmentSnapshot:
    segment_index: int
    context: str
    instance: Optional[WorkspaceInstance]
    decisions: tuple[ReconcileDecision, ...]
    pair_counts: dict
    consensus: WorkspaceInstance
    skipped: bool = False
    warnings: list[str] = field(default_factory=list)
    elapsed_ms: float = 0.0

    def to_dict(self, include_timings: bool = True) -> dict:
        data = {
            "segment": self.segment_index,
            "context": self.context,
            "skipped": self.skipped,
            "warnings": list(self.warnings),
            "instance": instance_to_dict(self.instance) if self.instance else None,
            "decisions": [d.to_dict() for d in self.decisions],
            "pair_counts": dict(self.pair_counts),
            "consensus": instance_to_dict(self.consensus),
        }
        if include_timings:
            data["elapsed_ms"] = round(self.elapsed_ms, 3)
        return data


@dataclass
class RunRecord:
    doc_id: str
    situation: str
    config: dict
    snapshots: list[SegmentSnapshot]
    final_consensus: WorkspaceInstance
    seed: Optional[int] = None

    def to_dict(self, include_timings: bool = True) -> dict:
        return {
            "doc_id": self.doc_id,
            "situation": self.situation,
            "seed": self.seed,
            "config": dict(self.config),
            "segments": [s.to_dict(include_timings) for s in self.snapshots],
            "final_consensus": instance_to_dict(self.final_consensus),
        }

    def canonical(self) -> str:
        """Byte form used for determinism and replay checks (timings are
        wall-clock noise and are excluded)."""
        return canonical_json(self.to_dict(include_timings=False))


def _pair_counts(pairs: CandidatePairSet) -> dict:
    return {
        "node_pairs": len(pairs.node_pairs),
        "edge_pairs": len(pairs.edge_pairs),
        "question_checks": len(pairs.question_checks),
        "unmatched_new_nodes": len(pairs.unmatched_new_nodes),
        "unmatched_new_edges": len(pairs.unmatched_new_edges),
    }


def classify_all(
    pairs: CandidatePairSet,
    cfg: Optional[BackendConfig],
    context: str,
    classifier: Optional[Classifier] = None,
) -> list[ReconcileDecision]:
    """Classify every pair in canonical order (nodes, edges, questions)."""
    decide = classifier or (
        lambda task, old, new, ctx: classify_pair(cfg, task, old, new, ctx)
    )
    decisions = []
    for old, new in pairs.node_pairs:
        decisions.append(decide("rec_node", old, new, context))
    for old, new in pairs.edge_pairs:
        decisions.append(decide("rec_edge", old, new, context))
    for question, element in pairs.question_checks:
        decisions.append(decide("qr", question, element, context))
    return decisions


def load_document(data: dict, default_situation: Optional[str] = None) -> Document:
    situation = data.get("situation") or default_situation
    if not situation:
        raise ValueError(f"document {data.get('doc_id')!r} has no situation")
    return Document(
        doc_id=str(data["doc_id"]),
        situation=situation,
        text=data.get("text", ""),
        segments=list(data.get("segments", [])),
    )


def run_document(
    doc: Document,
    cfg: PipelineConfig,
    operator: Optional[StageOracle] = None,
    classifier: Optional[Classifier] = None,
) -> RunRecord:
    """Run the operator -> prune -> classify -> merge loop over a document,
    starting from an empty working memory."""
    segments = doc.segments or (segment(doc.text, cfg.window, cfg.overlap) if doc.text.strip() else [])
    memory = empty_memory(doc.situation)
    oracle = operator if operator is not None else backend_for(cfg.operator)
    snapshots: list[SegmentSnapshot] = []

    for n, context in enumerate(segments, 1):
        started = time.perf_counter()
        try:
            result = generate(cfg.operator, context, n, backend=oracle)
        except (BackendError, ValueError) as exc:
            log.warning("doc %s segment %d skipped: %s", doc.doc_id, n, exc)
            snapshots.append(
                SegmentSnapshot(
                    segment_index=n,
                    context=context,
                    instance=None,
                    decisions=(),
                    pair_counts={},
                    consensus=memory.consensus,
                    skipped=True,
                    warnings=[f"generation failed: {exc}"],
                    elapsed_ms=(time.perf_counter() - started) * 1000,
                )
            )
            continue
        resolution = resolve_aliases(memory, result.instance)
        memory = WorkingMemory(memory.consensus, resolution.alias_table, memory.history)
        pairs = propose_pairs(memory, resolution.instance, cfg.prune, cfg.hops)
        decisions = classify_all(pairs, cfg.reconciler, context, classifier)
        outcome = merge(memory, resolution.instance, decisions, pairs)
        memory = outcome.memory
        snapshots.append(
            SegmentSnapshot(
                segment_index=n,
                context=context,
                instance=resolution.instance,
                decisions=tuple(decisions),
                pair_counts=_pair_counts(pairs),
                consensus=memory.consensus,
                warnings=result.warnings + resolution.log + outcome.warnings,
                elapsed_ms=(time.perf_counter() - started) * 1000,
            )
        )

    return RunRecord(
        doc_id=doc.doc_id,
        situation=doc.situation,
        config=cfg.summary(),
        snapshots=snapshots,
        final_consensus=memory.consensus,
        seed=cfg.seed,
    )


def write_outputs(record: RunRecord, out_dir: str) -> None:
    """Per-document artifacts: full run record, final consensus, and the
    decision log (one timestamped decision per line)."""
    os.makedirs(out_dir, exist_ok=True)
    base = os.path.join(out_dir, record.doc_id)
    with open(f"{base}.record.json", "w", encoding="utf-8") as fh:
        fh.write(pretty_json(record.to_dict()))
        fh.write("\n")
    with open(f"{base}.consensus.json", "w", encoding="utf-8") as fh:
        fh.write(pretty_json(instance_to_dict(record.final_consensus)))
        fh.write("\n")
    stamp = time.strftime("%Y-%m-%dT%H:%M:%S%z")
    with open(f"{base}.decisions.jsonl", "w", encoding="utf-8") as fh:
        for snapshot in record.snapshots:
            for decision in snapshot.decisions:
                row = {"ts": stamp, "segment": snapshot.segment_index}
                row.update(decision.to_dict())
                fh.write(json.dumps(row, ensure_ascii=False))
                fh.write("\n")


def record_from_dict(data: dict) -> RunRecord:
    snapshots = []
    for row in data.get("segments", []):
        instance = (
            instance_from_dict(row["instance"]) if row.get("instance") else None
        )
        snapshots.append(
            SegmentSnapshot(
                segment_index=row["segment"],
                context=row.get("context", ""),
                instance=instance,
                decisions=tuple(
                    ReconcileDecision.from_dict(d) for d in row.get("decisions", [])
                ),
                pair_counts=row.get("pair_counts", {}),
                consensus=instance_from_dict(row["consensus"]),
                skipped=bool(row.get("skipped", False)),
                warnings=list(row.get("warnings", [])),
                elapsed_ms=float(row.get("elapsed_ms", 0.0)),
            )
        )
    return RunRecord(
        doc_id=data["doc_id"],
        situation=data["situation"],
        config=dict(data.get("config", {})),
        snapshots=snapshots,
        final_consensus=instance_from_dict(data["final_consensus"]),
        seed=data.get("seed"),
    )
