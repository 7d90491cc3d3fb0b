"""Reconciler engine: pairwise REC/QR classification and consensus merge."""

from .classify import (
    QR_OVERLAP_THRESHOLD,
    classify_pair,
    mock_qr_label,
    mock_rec_edge_label,
    mock_rec_node_label,
    question_overlap,
)
from .decisions import (
    QR_RESOLVED,
    QR_UNANSWERED,
    REC_KEEP_BOTH,
    REC_KEEP_OLD,
    REC_REPLACE,
    TASK_QR,
    TASK_REC_EDGE,
    TASK_REC_NODE,
    TASKS,
    CandidatePairSet,
    EdgeRef,
    ReconcileDecision,
    element_key,
    element_text,
    element_wire,
)
from .merge import MergeError, MergeOutcome, merge
from .pairs import edge_refs, propose_pairs

__all__ = [
    "QR_OVERLAP_THRESHOLD",
    "QR_RESOLVED",
    "QR_UNANSWERED",
    "REC_KEEP_BOTH",
    "REC_KEEP_OLD",
    "REC_REPLACE",
    "TASK_QR",
    "TASK_REC_EDGE",
    "TASK_REC_NODE",
    "TASKS",
    "CandidatePairSet",
    "EdgeRef",
    "MergeError",
    "MergeOutcome",
    "ReconcileDecision",
    "classify_pair",
    "edge_refs",
    "element_key",
    "element_text",
    "element_wire",
    "merge",
    "mock_qr_label",
    "mock_rec_edge_label",
    "mock_rec_node_label",
    "propose_pairs",
    "question_overlap",
]
