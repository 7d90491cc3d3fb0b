"""Pairwise REC/QR classification.

The mock rules are fixed and lexical:

  nodes:   identical (role, state) -> 0, same role -> 1, different role -> 2
  edges:   identical (label, attributes) -> 0, same label -> 1, else -> 2
  qr:      1 iff at least 40% of the question's content tokens (stopwords
           removed) appear in the new element's serialized text

The remote backend posts the pair to {endpoint}/reconcile and returns the
model's label; on failure the conservative default keeps information
(REC 2, QR 0), which is what a high-sensitivity reconciler should do.
"""

from __future__ import annotations

from typing import Optional

from ..core import QuestionNode, SemanticNode, content_tokens
from ..backends import BackendConfig, BackendError, post_with_retries, reconcile_payload
from .decisions import (
    QR_RESOLVED,
    QR_UNANSWERED,
    REC_KEEP_BOTH,
    REC_KEEP_OLD,
    REC_REPLACE,
    TASK_QR,
    TASK_REC_EDGE,
    TASK_REC_NODE,
    EdgeRef,
    ReconcileDecision,
    element_key,
    element_text,
    element_wire,
)

QR_OVERLAP_THRESHOLD = 0.4


def mock_rec_node_label(old: SemanticNode, new: SemanticNode) -> int:
    if old.role == new.role and old.state == new.state:
        return REC_KEEP_OLD
    if old.role == new.role:
        return REC_REPLACE
    return REC_KEEP_BOTH


def mock_rec_edge_label(old: EdgeRef, new: EdgeRef) -> int:
    if old.edge.label == new.edge.label and old.edge.attributes == new.edge.attributes:
        return REC_KEEP_OLD
    if old.edge.label == new.edge.label:
        return REC_REPLACE
    return REC_KEEP_BOTH


def question_overlap(question: QuestionNode, element) -> float:
    tokens = content_tokens(question.text)
    if not tokens:
        return 0.0
    evidence = set(content_tokens(element_text(element)))
    hits = sum(1 for t in tokens if t in evidence)
    return hits / len(tokens)


def mock_qr_label(question: QuestionNode, element) -> int:
    if question_overlap(question, element) >= QR_OVERLAP_THRESHOLD:
        return QR_RESOLVED
    return QR_UNANSWERED


def _mock_label(task: str, old, new) -> int:
    if task == TASK_REC_NODE:
        return mock_rec_node_label(old, new)
    if task == TASK_REC_EDGE:
        return mock_rec_edge_label(old, new)
    return mock_qr_label(old, new)


def _remote_label(cfg: BackendConfig, task: str, old, new, context: str) -> int:
    payload = reconcile_payload(task, element_wire(old), element_wire(new), context)
    body = post_with_retries(cfg, "/reconcile", payload)
    label = body.get("label") if isinstance(body, dict) else None
    if not isinstance(label, int):
        raise BackendError("malformed reconcile response: missing label")
    valid = (0, 1) if task == TASK_QR else (0, 1, 2)
    if label not in valid:
        raise BackendError(f"reconcile label {label} out of range for {task}")
    return label


def classify_pair(
    cfg: Optional[BackendConfig], task: str, old, new, context: str = ""
) -> ReconcileDecision:
    """Classify one pair. `cfg` of kind mock (or None) applies the fixed
    rules; kind remote asks the service and falls back to the conservative
    default when it fails."""
    if cfg is not None and cfg.kind == "remote":
        try:
            label = _remote_label(cfg, task, old, new, context)
        except BackendError:
            label = QR_UNANSWERED if task == TASK_QR else REC_KEEP_BOTH
    else:
        label = _mock_label(task, old, new)
    return ReconcileDecision(task, element_key(old), element_key(new), label)
