"""Instance validation: total, never raises, returns named violations."""

from __future__ import annotations

from .model import (
    NONE_SENTINEL,
    EmptyMentionError,
    WorkspaceInstance,
    actor_id,
    normalize_label,
    normalize_situation,
    semantic_node_id,
)


def _is_normalized_label(value: str) -> bool:
    if value == NONE_SENTINEL:
        return True
    try:
        return normalize_label(value) == value
    except EmptyMentionError:
        return False


def validate_instance(w: WorkspaceInstance) -> list[str]:
    """Check every type invariant; empty result means the instance is valid.

    Each violation names the offending element and the rule it breaks.
    """
    violations: list[str] = []

    try:
        if normalize_situation(w.situation) != w.situation:
            violations.append(f"situation not snake_case: {w.situation!r}")
    except EmptyMentionError:
        violations.append("situation is empty")

    seen_node_ids: set[str] = set()
    actor_shapes: dict[str, tuple] = {}
    for node in w.nodes:
        if node.node_id in seen_node_ids:
            violations.append(f"duplicate node_id {node.node_id}")
        seen_node_ids.add(node.node_id)
        if not _is_normalized_label(node.role):
            violations.append(f"node {node.node_id}: role not normalized: {node.role!r}")
        if not _is_normalized_label(node.state):
            violations.append(f"node {node.node_id}: state not normalized: {node.state!r}")
        base = semantic_node_id(node.actor.canonical_id, node.role)
        if not (node.node_id == base or node.node_id.startswith(base + "#")):
            violations.append(
                f"node {node.node_id}: id is not derived from (actor, role)"
            )
        actor = node.actor
        if not actor.surface_forms:
            violations.append(f"node {node.node_id}: actor has no surface forms")
        else:
            if actor.canonical_id != actor_id(actor.situation, actor.mention):
                violations.append(
                    f"actor {actor.mention!r}: canonical_id does not match mention"
                )
            for form in actor.surface_forms:
                try:
                    ok = normalize_label(form) == form
                except EmptyMentionError:
                    ok = False
                if not ok:
                    violations.append(
                        f"actor {actor.mention!r}: surface form not normalized: {form!r}"
                    )
        if actor.situation != w.situation:
            violations.append(
                f"actor {actor.mention!r}: situation {actor.situation!r} differs from instance"
            )
        prev = actor_shapes.get(actor.canonical_id)
        if prev is not None and prev != (actor.surface_forms, actor.situation):
            violations.append(
                f"actor {actor.mention!r}: inconsistent surface forms across nodes"
            )
        actor_shapes[actor.canonical_id] = (actor.surface_forms, actor.situation)

    node_by_id = {n.node_id: n for n in w.nodes}
    seen_edge_keys: set[str] = set()
    for edge in w.edges:
        if edge.key in seen_edge_keys:
            violations.append(f"duplicate edge ({edge.source}, {edge.label}, {edge.target})")
        seen_edge_keys.add(edge.key)
        if edge.source == edge.target:
            violations.append(f"edge {edge.key}: source equals target")
        src = node_by_id.get(edge.source)
        tgt = node_by_id.get(edge.target)
        if src is None:
            violations.append(f"dangling edge {edge.key}: unknown source node")
        if tgt is None:
            violations.append(f"dangling edge {edge.key}: unknown target node")
        if src is not None and tgt is not None:
            if src.actor.canonical_id == tgt.actor.canonical_id:
                violations.append(
                    f"edge {edge.key}: endpoints share an actor (predicates are inter-actor)"
                )
        if not _is_normalized_label(edge.label) or not edge.label:
            violations.append(f"edge {edge.key}: label not normalized: {edge.label!r}")

    actor_ids = {n.actor.canonical_id for n in w.nodes}
    for q in w.questions:
        if not q.text.endswith("?") or len(q.text) < 2:
            violations.append(f"question {q.text!r}: does not end with '?'")
        extra = set(q.anchors) - actor_ids
        if extra:
            violations.append(
                f"question {q.text!r}: anchors unknown actors {sorted(extra)}"
            )
    return violations


def instance_warnings(w: WorkspaceInstance) -> list[str]:
    """Non-fatal oddities, currently: questions anchored to no actor."""
    return [
        f"question {q.text!r}: anchors no tracked actor"
        for q in w.questions
        if not q.anchors
    ]
