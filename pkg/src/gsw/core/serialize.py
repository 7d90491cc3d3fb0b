"""Canonical JSON interchange for workspace instances.

The same schema is spoken by fixture files, the remote oracle wire format,
and the CLI outputs:

    {"situation": str, "segment": int,
     "nodes": [{"actor": str, "role": str, "state": str}],
     "edges": [{"label": str, "source": str, "target": str,
                "attributes": str|null}],
     "questions": [str]}

Edge endpoints are actor mentions; on parse they resolve to that actor's
first node in canonical order. serialize -> parse -> serialize is a fixed
point for valid instances.
"""

from __future__ import annotations

import json
from typing import Any, Optional

from .model import (
    EmptyMentionError,
    PredicateEdge,
    QuestionNode,
    SemanticNode,
    WorkspaceInstance,
    build_instance,
    make_actor,
    make_node,
    normalize_label,
    normalize_question,
    normalize_situation,
)


def canonical_json(obj: Any) -> str:
    """Compact, key-sorted JSON; the byte form used for equality and hashing."""
    return json.dumps(obj, ensure_ascii=False, sort_keys=True, separators=(",", ":"))


def pretty_json(obj: Any) -> str:
    return json.dumps(obj, ensure_ascii=False, sort_keys=True, indent=2)


def instance_to_dict(w: WorkspaceInstance) -> dict:
    node_by_id = w.node_map()
    return {
        "situation": w.situation,
        "segment": w.segment_index,
        "nodes": [
            {"actor": n.actor.mention, "role": n.role, "state": n.state}
            for n in w.nodes
        ],
        "edges": [
            {
                "label": e.label,
                "source": node_by_id[e.source].actor.mention,
                "target": node_by_id[e.target].actor.mention,
                "attributes": e.attributes,
            }
            for e in w.edges
        ],
        "questions": [q.text for q in w.questions],
    }


def serialize_instance(w: WorkspaceInstance) -> str:
    return canonical_json(instance_to_dict(w))


class SchemaError(ValueError):
    """The payload is JSON but does not fit the instance schema."""


def _node_rows(data: Any) -> list[dict]:
    if data is None:
        return []
    if not isinstance(data, list):
        raise SchemaError("nodes must be a list")
    rows: list[dict] = []
    for row in data:
        if not isinstance(row, dict):
            raise SchemaError("node row must be an object")
        actor = row.get("actor")
        if not isinstance(actor, str):
            raise SchemaError("node row missing actor")
        role = row.get("role", "none")
        # Printed outputs sometimes carry a plural "states" list; expand it
        # to one row per state.
        states = row.get("states")
        if states is None:
            states = [row.get("state", "none")]
        elif isinstance(states, str):
            states = [states]
        elif not isinstance(states, list):
            raise SchemaError("states must be a string or list")
        for state in states:
            rows.append({"actor": actor, "role": role, "state": state})
    return rows


def _question_texts(data: Any) -> list[str]:
    if data is None:
        return []
    if not isinstance(data, list):
        raise SchemaError("questions must be a list")
    texts: list[str] = []
    for item in data:
        if isinstance(item, str):
            texts.append(item)
        elif isinstance(item, dict) and isinstance(item.get("text"), str):
            texts.append(item["text"])
        else:
            raise SchemaError("question must be a string")
    return texts


def instance_from_dict(
    data: Any,
    situation: Optional[str] = None,
    segment: Optional[int] = None,
) -> WorkspaceInstance:
    """Build an instance from schema-shaped data.

    Missing sections default to empty; malformed structure raises
    SchemaError. Mentions and labels are normalized; empty ones are dropped.
    Edges that cannot be resolved to nodes are dropped (build_instance
    enforces closure).
    """
    if not isinstance(data, dict):
        raise SchemaError("instance payload must be a JSON object")
    sit = data.get("situation", situation)
    if not isinstance(sit, str) or not sit.strip():
        if situation is None:
            raise SchemaError("instance payload missing situation")
        sit = situation
    sit = normalize_situation(sit)
    seg = data.get("segment", segment)
    if not isinstance(seg, int):
        seg = segment if segment is not None else 0

    actors: dict[str, Any] = {}
    drafts: list[SemanticNode] = []
    for row in _node_rows(data.get("nodes")):
        try:
            actor_mention = row["actor"]
            actor = actors.get(normalize_label(actor_mention))
            if actor is None:
                actor = make_actor(actor_mention, sit)
                actors[actor.mention] = actor
            role = row["role"] if row["role"] == "none" else normalize_label(str(row["role"]))
            state_raw = row["state"]
            state = state_raw if state_raw == "none" else normalize_label(str(state_raw))
        except (EmptyMentionError, TypeError):
            continue
        drafts.append(make_node(actor, role, state, seg))

    # Endpoint resolution: mention -> the actor's first node (node_id order).
    first_node: dict[str, str] = {}
    for node in sorted(drafts, key=lambda n: n.node_id):
        first_node.setdefault(node.actor.mention, node.node_id)

    edges: list[PredicateEdge] = []
    edge_rows = data.get("edges") or []
    if not isinstance(edge_rows, list):
        raise SchemaError("edges must be a list")
    for row in edge_rows:
        if not isinstance(row, dict):
            raise SchemaError("edge row must be an object")
        try:
            label_raw = row.get("label")
            label = label_raw if label_raw == "none" else normalize_label(str(label_raw))
            src = first_node.get(normalize_label(str(row.get("source"))))
            tgt = first_node.get(normalize_label(str(row.get("target"))))
        except (EmptyMentionError, TypeError):
            continue
        if src is None or tgt is None:
            continue
        attrs = row.get("attributes")
        if attrs is not None:
            attrs = str(attrs).strip() or None
        edges.append(PredicateEdge(src, label, tgt, attrs, seg))

    questions: list[QuestionNode] = []
    for text in _question_texts(data.get("questions")):
        try:
            questions.append(QuestionNode(normalize_question(text), provenance=seg))
        except EmptyMentionError:
            continue

    return build_instance(sit, seg, drafts, edges, questions)


def parse_instance(
    text: str, situation: Optional[str] = None, segment: Optional[int] = None
) -> WorkspaceInstance:
    """Strict parse of canonical instance JSON."""
    return instance_from_dict(json.loads(text), situation, segment)
