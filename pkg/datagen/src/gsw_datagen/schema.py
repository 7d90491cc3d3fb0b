"""Local handling of the canonical workspace-instance JSON.

The interchange schema (situation/segment/nodes/edges/questions) is the
contract between this package and the workspace runtime; emitted targets
must parse there. Includes the same three repair passes the runtime applies
to model output: strip code fences, drop trailing commas, quote bare keys.
"""

from __future__ import annotations

import json
import re
from typing import Any, Optional

_FENCE_RE = re.compile(r"```(?:[a-zA-Z0-9_-]+)?\s*(.*?)\s*```", re.DOTALL)
_TRAILING_COMMA_RE = re.compile(r",\s*([}\]])")
_BARE_KEY_RE = re.compile(r'([{,]\s*)([A-Za-z_][A-Za-z0-9_]*)(\s*:)')

STAGES = ("actors", "roles", "states", "predicates", "questions")


def repair_passes(text: str):
    yield text
    text = _FENCE_RE.search(text).group(1) if _FENCE_RE.search(text) else text
    yield text
    text = _TRAILING_COMMA_RE.sub(r"\1", text)
    yield text
    yield _BARE_KEY_RE.sub(r'\1"\2"\3', text)


def parse_instance_text(raw: str) -> Optional[dict]:
    """Best-effort parse of an instance payload out of teacher output.
    Returns None when nothing schema-shaped can be extracted."""
    for candidate in repair_passes(raw):
        try:
            data = json.loads(candidate)
        except (json.JSONDecodeError, RecursionError):
            continue
        if isinstance(data, dict) and isinstance(data.get("nodes"), list):
            return normalize_instance(data)
        return None
    return None


def normalize_instance(data: dict) -> dict:
    """Coerce a loosely-shaped payload into the canonical field layout."""
    nodes = []
    for row in data.get("nodes", []):
        if not isinstance(row, dict) or not row.get("actor"):
            continue
        states = row.get("states")
        if states is None:
            states = [row.get("state", "none")]
        elif isinstance(states, str):
            states = [states]
        for state in states:
            nodes.append(
                {
                    "actor": str(row["actor"]).strip().lower(),
                    "role": str(row.get("role", "none")).strip().lower() or "none",
                    "state": str(state).strip().lower() or "none",
                }
            )
    actors = {n["actor"] for n in nodes}
    edges = []
    for row in data.get("edges", []):
        if not isinstance(row, dict):
            continue
        source = str(row.get("source", "")).strip().lower()
        target = str(row.get("target", "")).strip().lower()
        label = str(row.get("label", "")).strip().lower()
        if not (label and source in actors and target in actors and source != target):
            continue
        attributes = row.get("attributes")
        edges.append(
            {
                "label": label,
                "source": source,
                "target": target,
                "attributes": str(attributes) if attributes else None,
            }
        )
    questions = []
    for q in data.get("questions", []):
        text = q.get("text") if isinstance(q, dict) else q
        if isinstance(text, str) and text.strip():
            text = " ".join(text.strip().lower().split())
            questions.append(text if text.endswith("?") else text + "?")
    return {
        "situation": data.get("situation", ""),
        "segment": int(data.get("segment", 0) or 0),
        "nodes": nodes,
        "edges": edges,
        "questions": questions,
    }


def stage_fragment(instance: dict, stage: str) -> dict:
    """Cumulative per-stage view of a full instance (the generation order:
    actors, roles, states, predicates, questions)."""
    doc = {
        "situation": instance["situation"],
        "segment": instance["segment"],
        "nodes": [dict(n) for n in instance["nodes"]],
        "edges": [dict(e) for e in instance["edges"]],
        "questions": list(instance["questions"]),
    }
    if stage == "questions":
        return doc
    doc["questions"] = []
    if stage == "predicates":
        return doc
    doc["edges"] = []
    if stage == "states":
        return doc
    if stage == "roles":
        for n in doc["nodes"]:
            n["state"] = "none"
        return doc
    if stage == "actors":
        seen, rows = set(), []
        for n in doc["nodes"]:
            if n["actor"] in seen:
                continue
            seen.add(n["actor"])
            rows.append({"actor": n["actor"], "role": "none", "state": "none"})
        doc["nodes"] = rows
        return doc
    raise ValueError(f"unknown stage: {stage!r}")


def canonical_json(obj: Any) -> str:
    return json.dumps(obj, ensure_ascii=False, sort_keys=True, separators=(",", ":"))
