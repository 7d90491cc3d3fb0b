"""Staged instance generation.

The operator factors generation into five ordered stages -- actors, then
roles per actor, states per (actor, role), predicates over node pairs, and
questions last -- so each stage conditions on everything generated before
it. A single-call mode collapses the chain into one request when cost
matters more than stage-level telemetry.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Protocol

from ..core import (
    NONE_SENTINEL,
    WorkspaceInstance,
    build_instance,
    empty_instance,
)
from .config import (
    FULL_STAGE,
    GENERATION_STAGES,
    PARSE_FAILED,
    BackendConfig,
    OracleRequest,
    RawOracleOutput,
)
from .mock import FixtureStore, MockBackend
from .parse import parse_oracle_output
from .remote import RemoteBackend


class StageOracle(Protocol):
    def stage_output(self, req: OracleRequest) -> RawOracleOutput: ...


@dataclass
class GenerationResult:
    instance: WorkspaceInstance
    stage_status: dict[str, str] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)


def backend_for(cfg: BackendConfig) -> StageOracle:
    if cfg.kind == "remote":
        return RemoteBackend(cfg)
    store = (
        FixtureStore.from_jsonl(cfg.fixtures_path)
        if cfg.fixtures_path
        else FixtureStore.bundled()
    )
    return MockBackend(store)


def _supersedes(fragment_node, partial_node) -> bool:
    if fragment_node.actor.canonical_id != partial_node.actor.canonical_id:
        return False
    if partial_node.role == NONE_SENTINEL:
        return True
    if fragment_node.role != partial_node.role:
        return False
    return partial_node.state in (NONE_SENTINEL, fragment_node.state)


def merge_stage(
    partial: WorkspaceInstance, fragment: WorkspaceInstance, stage: str
) -> tuple[WorkspaceInstance, list[str]]:
    """Fold a stage fragment into the running partial.

    Fragments are cumulative, so normally the fragment strictly contains the
    partial; placeholder nodes ("none" role/state) are upgraded in place. A
    backend that drops earlier content violates stage monotonicity -- the
    loss is repaired by union and reported as a warning.
    """
    warnings: list[str] = []
    partial_actors = set(partial.actors())
    fragment_actors = set(fragment.actors())
    if partial_actors - fragment_actors:
        warnings.append(f"stage {stage}: fragment dropped earlier actors")
    partial_pairs = {
        (n.actor.canonical_id, n.role) for n in partial.nodes if n.role != NONE_SENTINEL
    }
    fragment_pairs = {(n.actor.canonical_id, n.role) for n in fragment.nodes}
    if partial_pairs - fragment_pairs:
        warnings.append(f"stage {stage}: fragment dropped earlier roles")

    nodes = list(fragment.nodes)
    for p in partial.nodes:
        if not any(_supersedes(f, p) for f in fragment.nodes):
            nodes.append(p)

    edge_keys = {(e.source, e.label, e.target) for e in fragment.edges}
    node_ids = {n.node_id for n in nodes}
    edges = list(fragment.edges)
    for e in partial.edges:
        if (e.source, e.label, e.target) in edge_keys:
            continue
        if e.source in node_ids and e.target in node_ids:
            edges.append(e)
            if stage in ("questions", FULL_STAGE) or stage == "predicates":
                warnings.append(f"stage {stage}: fragment dropped earlier edge {e.key}")

    q_texts = {q.text for q in fragment.questions}
    questions = list(fragment.questions) + [
        q for q in partial.questions if q.text not in q_texts
    ]

    merged = build_instance(
        partial.situation, partial.segment_index, nodes, edges, questions
    )
    return merged, warnings


def scrub_negatives(w: WorkspaceInstance) -> WorkspaceInstance:
    """Drop negative samples: "none"-role nodes and "none"-label edges.
    Edges left dangling by a dropped node disappear with them."""
    nodes = [n for n in w.nodes if not n.is_negative]
    edges = [e for e in w.edges if not e.is_negative]
    return build_instance(w.situation, w.segment_index, nodes, edges, w.questions)


def generate(
    cfg: BackendConfig,
    context: str,
    seg: int,
    backend: Optional[StageOracle] = None,
) -> GenerationResult:
    """Run the staged chain and return the scrubbed, validated instance
    along with per-stage parse status and any warnings.

    Transport errors propagate (the pipeline skips the segment); a stage
    whose output cannot be parsed leaves that stage empty and is recorded
    as a warning.
    """
    if not context.strip():
        raise ValueError("context must be non-empty")
    oracle = backend if backend is not None else backend_for(cfg)
    partial = empty_instance(cfg.situation, seg)
    result = GenerationResult(partial)

    stages = (FULL_STAGE,) if cfg.single_call else GENERATION_STAGES
    for stage in stages:
        req = OracleRequest(context, cfg.situation, stage, partial)
        raw = oracle.stage_output(req)
        fragment, status = parse_oracle_output(raw.text, cfg.situation, seg)
        result.stage_status[stage] = status
        if fragment is None or status == PARSE_FAILED:
            result.warnings.append(f"stage {stage}: unparseable oracle output")
            continue
        partial, stage_warnings = merge_stage(partial, fragment, stage)
        result.warnings.extend(stage_warnings)

    result.instance = scrub_negatives(partial)
    return result


def generate_instance(
    cfg: BackendConfig,
    context: str,
    seg: int,
    backend: Optional[StageOracle] = None,
) -> WorkspaceInstance:
    return generate(cfg, context, seg, backend).instance
