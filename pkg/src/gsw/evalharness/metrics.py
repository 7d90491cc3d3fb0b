"""Classification metrics for reconciler evaluation.

Accuracy, support-weighted F1 (macro offered behind a flag), per-class
precision/recall/F1, the confusion matrix, and Sensitivity: REC accuracy
after merging labels 1 (replace) and 2 (keep both) on both gold and
predictions, which measures whether new information is correctly admitted.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

TASK_LABELS = {"rec_node": (0, 1, 2), "rec_edge": (0, 1, 2), "qr": (0, 1)}

NLI_TO_REC = {"entailment": 0, "contradiction": 1, "neutral": 2}


@dataclass(frozen=True)
class LabeledPair:
    task: str
    gold: int
    pred: int
    meta: Optional[dict] = None

    def __post_init__(self):
        labels = TASK_LABELS.get(self.task)
        if labels is None:
            raise ValueError(f"unknown task: {self.task!r}")
        if self.gold not in labels or self.pred not in labels:
            raise ValueError(
                f"label out of range for {self.task}: gold={self.gold} pred={self.pred}"
            )


@dataclass(frozen=True)
class ClassStats:
    label: int
    precision: float
    recall: float
    f1: float
    support: int


@dataclass
class MetricReport:
    task: str
    total: int
    accuracy: float
    weighted_f1: float
    macro_f1: float
    sensitivity: Optional[float]
    per_class: list[ClassStats] = field(default_factory=list)
    confusion: list[list[int]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "task": self.task,
            "total": self.total,
            "accuracy": self.accuracy,
            "weighted_f1": self.weighted_f1,
            "macro_f1": self.macro_f1,
            "sensitivity": self.sensitivity,
            "per_class": [
                {
                    "label": c.label,
                    "precision": c.precision,
                    "recall": c.recall,
                    "f1": c.f1,
                    "support": c.support,
                }
                for c in self.per_class
            ],
            "confusion": self.confusion,
        }


def score(pairs: Sequence[LabeledPair]) -> MetricReport:
    """Score a single-task list of gold/pred labels."""
    if not pairs:
        raise ValueError("score requires a non-empty pair list")
    tasks = {p.task for p in pairs}
    if len(tasks) > 1:
        raise ValueError(f"mixed tasks in one scoring call: {sorted(tasks)}")
    task = pairs[0].task
    labels = TASK_LABELS[task]
    k = len(labels)

    confusion = [[0] * k for _ in range(k)]
    for p in pairs:
        confusion[p.gold][p.pred] += 1
    total = len(pairs)
    accuracy = sum(confusion[i][i] for i in range(k)) / total

    per_class = []
    weighted_sum = 0.0
    macro_sum = 0.0
    for c in range(k):
        support = sum(confusion[c])
        predicted = sum(confusion[r][c] for r in range(k))
        tp = confusion[c][c]
        precision = tp / predicted if predicted else 0.0
        recall = tp / support if support else 0.0
        f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
        per_class.append(ClassStats(labels[c], precision, recall, f1, support))
        weighted_sum += support * f1
        macro_sum += f1
    weighted_f1 = weighted_sum / total
    macro_f1 = macro_sum / k

    sensitivity = None
    if task in ("rec_node", "rec_edge"):
        hits = sum(
            1 for p in pairs if min(p.gold, 1) == min(p.pred, 1)
        )
        sensitivity = hits / total

    return MetricReport(
        task=task,
        total=total,
        accuracy=accuracy,
        weighted_f1=weighted_f1,
        macro_f1=macro_f1,
        sensitivity=sensitivity,
        per_class=per_class,
        confusion=confusion,
    )


def map_nli(label: str) -> int:
    """NLI verdict -> REC label: entailment keeps the old element,
    contradiction replaces it, neutral keeps both."""
    try:
        return NLI_TO_REC[label]
    except KeyError:
        raise ValueError(f"unknown NLI label: {label!r}") from None


def map_qa(span: Optional[str]) -> int:
    """QA span -> QR label: a question is resolved (1) iff the span is
    non-empty."""
    return 1 if span is not None and span.strip() else 0


def load_pairs(lines: Iterable[str]) -> list[LabeledPair]:
    pairs = []
    for line in lines:
        line = line.strip()
        if not line:
            continue
        row = json.loads(line)
        pairs.append(
            LabeledPair(row["task"], int(row["gold"]), int(row["pred"]), row.get("meta"))
        )
    return pairs


def format_report(report: MetricReport) -> str:
    """Plain-text table in the ACC / F1 / Sensitivity column layout."""
    header = f"{'Task':<12}{'ACC.':>8}{'F1':>8}{'Sensitivity':>14}"
    sens = f"{report.sensitivity:.2f}" if report.sensitivity is not None else "-"
    row = f"{report.task:<12}{report.accuracy:>8.2f}{report.weighted_f1:>8.2f}{sens:>14}"
    lines = [header, row, "", f"{'Class':<8}{'Prec.':>8}{'Recall':>8}{'F1':>8}{'Support':>9}"]
    for c in report.per_class:
        lines.append(
            f"{c.label:<8}{c.precision:>8.2f}{c.recall:>8.2f}{c.f1:>8.2f}{c.support:>9}"
        )
    return "\n".join(lines)
