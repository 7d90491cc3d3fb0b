"""Deterministic consensus merge.

Per node/edge pair: label 0 drops the new element, label 1 removes the old
and inserts the new, label 2 inserts the new alongside the old. Unmatched
new elements are inserted; old elements never paired are retained. A
question with any QR label 1 is removed (and never reappears later); new
questions are inserted unless their normalized text matches an open or
previously resolved question. Conflicting decisions for one element resolve
by precedence replace > keep-both > keep-old.

Edges incident to a replaced node are re-pointed to the replacing node;
edges whose endpoint vanished are dropped with a warning.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..core import (
    HistoryEntry,
    WorkingMemory,
    WorkspaceInstance,
    build_instance,
    validate_instance,
)
from .decisions import (
    QR_RESOLVED,
    REC_KEEP_BOTH,
    REC_REPLACE,
    TASK_QR,
    TASK_REC_EDGE,
    TASK_REC_NODE,
    CandidatePairSet,
    ReconcileDecision,
    element_key,
)
from .pairs import edge_refs


class MergeError(RuntimeError):
    """Decision/pair mismatch or a merge that broke an invariant: these are
    pipeline bugs, not data conditions."""


@dataclass
class MergeOutcome:
    memory: WorkingMemory
    warnings: list[str] = field(default_factory=list)


def _decision_index(
    decisions: list[ReconcileDecision], pairs: CandidatePairSet
) -> dict[tuple[str, str, str], int]:
    expected: set[tuple[str, str, str]] = set()
    for old, new in pairs.node_pairs:
        expected.add((TASK_REC_NODE, old.node_id, new.node_id))
    for old, new in pairs.edge_pairs:
        expected.add((TASK_REC_EDGE, old.key, new.key))
    for question, element in pairs.question_checks:
        expected.add((TASK_QR, question.text, element_key(element)))

    index: dict[tuple[str, str, str], int] = {}
    for d in decisions:
        key = (d.task, d.old_ref or "", d.new_ref or "")
        if key in index:
            raise MergeError(f"duplicate decision for pair {key}")
        index[key] = d.label
    missing = expected - set(index)
    extra = set(index) - expected
    if missing or extra:
        raise MergeError(
            f"decision/pair mismatch: {len(missing)} pairs undecided, "
            f"{len(extra)} decisions without a pair"
        )
    return index


def _resolve_new(labels: list[int]) -> str:
    if REC_REPLACE in labels:
        return "replace"
    if REC_KEEP_BOTH in labels:
        return "keep_both"
    return "drop"


def merge(
    memory: WorkingMemory,
    w: WorkspaceInstance,
    decisions: list[ReconcileDecision],
    pairs: CandidatePairSet,
) -> MergeOutcome:
    index = _decision_index(list(decisions), pairs)
    warnings: list[str] = []
    consensus = memory.consensus

    # --- nodes ---------------------------------------------------------
    labels_by_new: dict[str, list[int]] = {}
    replacers: dict[str, list[str]] = {}  # old node_id -> replacing new ids
    for old, new in pairs.node_pairs:
        label = index[(TASK_REC_NODE, old.node_id, new.node_id)]
        labels_by_new.setdefault(new.node_id, []).append(label)
        if label == REC_REPLACE:
            replacers.setdefault(old.node_id, []).append(new.node_id)

    unmatched_node_ids = {n.node_id for n in pairs.unmatched_new_nodes}
    inserted_nodes = []
    dropped_new: list[str] = []
    for node in w.nodes:
        labels = labels_by_new.get(node.node_id)
        if labels is None:
            if node.node_id not in unmatched_node_ids:
                raise MergeError(f"new node {node.node_id} neither paired nor unmatched")
            inserted_nodes.append(node)
        elif _resolve_new(labels) == "drop":
            dropped_new.append(node.node_id)
        else:
            inserted_nodes.append(node)

    node_redirect = {old: sorted(news)[0] for old, news in replacers.items()}
    retained_nodes = [n for n in consensus.nodes if n.node_id not in node_redirect]

    drafts = retained_nodes + inserted_nodes
    draft_ids = {n.node_id for n in drafts}
    draft_actor = {n.node_id: n.actor.canonical_id for n in drafts}

    # --- edges ---------------------------------------------------------
    edge_labels_by_new: dict[str, list[int]] = {}
    edge_replacers: dict[str, list[str]] = {}  # old edge key -> new edge keys
    for old, new in pairs.edge_pairs:
        label = index[(TASK_REC_EDGE, old.key, new.key)]
        edge_labels_by_new.setdefault(new.key, []).append(label)
        if label == REC_REPLACE:
            edge_replacers.setdefault(old.key, []).append(new.key)
    edge_redirect = {old: sorted(news)[0] for old, news in edge_replacers.items()}

    unmatched_edge_keys = {r.key for r in pairs.unmatched_new_edges}
    inserted_edges = []
    for ref in edge_refs(w):
        labels = edge_labels_by_new.get(ref.key)
        if labels is None:
            if ref.key not in unmatched_edge_keys:
                raise MergeError(f"new edge {ref.key} neither paired nor unmatched")
            inserted_edges.append(ref.edge)
        elif _resolve_new(labels) == "drop":
            dropped_new.append(ref.key)
        else:
            inserted_edges.append(ref.edge)

    candidate_edges = []
    dropped_edges: list[str] = []
    for edge in consensus.edges:
        if edge.key in edge_redirect:
            continue
        src = node_redirect.get(edge.source, edge.source)
        tgt = node_redirect.get(edge.target, edge.target)
        repointed = type(edge)(src, edge.label, tgt, edge.attributes, edge.provenance)
        if src not in draft_ids or tgt not in draft_ids:
            dropped_edges.append(edge.key)
            warnings.append(f"edge {edge.key}: endpoint vanished, edge dropped")
        elif src == tgt or draft_actor[src] == draft_actor[tgt]:
            dropped_edges.append(edge.key)
            warnings.append(f"edge {edge.key}: endpoints collapsed, edge dropped")
        else:
            candidate_edges.append(repointed)
    for edge in inserted_edges:
        if edge.source not in draft_ids or edge.target not in draft_ids:
            dropped_edges.append(edge.key)
            warnings.append(f"edge {edge.key}: endpoint not merged, edge dropped")
        else:
            candidate_edges.append(edge)

    # --- questions -----------------------------------------------------
    resolved_now: set[str] = set()
    for question, element in pairs.question_checks:
        if index[(TASK_QR, question.text, element_key(element))] == QR_RESOLVED:
            resolved_now.add(question.text)
    kept_questions = [q for q in consensus.questions if q.text not in resolved_now]
    blocked = (
        resolved_now
        | {q.text for q in kept_questions}
        | set(memory.resolved_question_texts())
    )
    new_questions = [q for q in w.questions if q.text not in blocked]

    merged = build_instance(
        consensus.situation,
        w.segment_index,
        drafts,
        candidate_edges,
        kept_questions + new_questions,
    )
    violations = validate_instance(merged)
    if violations:
        raise MergeError(f"merge produced an invalid consensus: {violations[:3]}")

    entry = HistoryEntry(
        segment_index=w.segment_index,
        decisions=tuple(decisions),
        inserted=tuple(
            sorted([n.node_id for n in inserted_nodes] + [e.key for e in inserted_edges])
        ),
        replaced=tuple(sorted(node_redirect.items()) + sorted(edge_redirect.items())),
        dropped_new=tuple(sorted(dropped_new)),
        dropped_edges=tuple(sorted(dropped_edges)),
        resolved_questions=tuple(sorted(resolved_now)),
        new_questions=tuple(q.text for q in new_questions),
    )
    new_memory = WorkingMemory(merged, memory.alias_table, memory.history + (entry,))
    return MergeOutcome(new_memory, warnings)
