"""Metrics and baseline label mappings for reconciler evaluation."""

from .metrics import (
    NLI_TO_REC,
    TASK_LABELS,
    ClassStats,
    LabeledPair,
    MetricReport,
    format_report,
    load_pairs,
    map_nli,
    map_qa,
    score,
)

__all__ = [
    "NLI_TO_REC",
    "TASK_LABELS",
    "ClassStats",
    "LabeledPair",
    "MetricReport",
    "format_report",
    "load_pairs",
    "map_nli",
    "map_qa",
    "score",
]
