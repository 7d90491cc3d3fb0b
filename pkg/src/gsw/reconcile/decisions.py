"""Reconciliation decision and candidate-pair types.

REC decisions (nodes, edges) are 3-class: 0 the existing element is
sufficient, 1 the new element overwrites it, 2 both are important and
unrelated. QR decisions (question vs new evidence) are binary: 1 the
question is answered or irrelevant, 0 it remains unanswered and relevant.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from ..core import PredicateEdge, QuestionNode, SemanticNode

TASK_REC_NODE = "rec_node"
TASK_REC_EDGE = "rec_edge"
TASK_QR = "qr"
TASKS = (TASK_REC_NODE, TASK_REC_EDGE, TASK_QR)

REC_KEEP_OLD = 0
REC_REPLACE = 1
REC_KEEP_BOTH = 2
QR_UNANSWERED = 0
QR_RESOLVED = 1


@dataclass(frozen=True)
class ReconcileDecision:
    task: str
    old_ref: Optional[str]
    new_ref: Optional[str]
    label: int

    def __post_init__(self):
        if self.task not in TASKS:
            raise ValueError(f"unknown reconcile task: {self.task!r}")
        valid = (0, 1) if self.task == TASK_QR else (0, 1, 2)
        if self.label not in valid:
            raise ValueError(f"label {self.label} out of range for {self.task}")

    def to_dict(self) -> dict:
        return {
            "task": self.task,
            "old": self.old_ref,
            "new": self.new_ref,
            "label": self.label,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ReconcileDecision":
        return cls(data["task"], data.get("old"), data.get("new"), data["label"])


@dataclass(frozen=True)
class EdgeRef:
    """An edge together with its resolved endpoint nodes, so classification
    and serialization can see the actors involved."""

    edge: PredicateEdge
    source: SemanticNode
    target: SemanticNode

    @property
    def key(self) -> str:
        return self.edge.key

    @property
    def actor_pair(self) -> tuple[str, str]:
        return (self.source.actor.canonical_id, self.target.actor.canonical_id)

    def text(self) -> str:
        parts = [
            self.source.actor.mention,
            self.edge.label,
            self.target.actor.mention,
        ]
        if self.edge.attributes:
            parts.append(self.edge.attributes)
        return " ".join(parts)

    def to_wire(self) -> dict:
        return {
            "label": self.edge.label,
            "source": self.source.actor.mention,
            "target": self.target.actor.mention,
            "attributes": self.edge.attributes,
        }


Element = Union[SemanticNode, EdgeRef]


def element_key(element) -> str:
    if isinstance(element, SemanticNode):
        return element.node_id
    if isinstance(element, EdgeRef):
        return element.key
    if isinstance(element, PredicateEdge):
        return element.key
    if isinstance(element, QuestionNode):
        return element.text
    raise TypeError(f"not a reconcilable element: {type(element)!r}")


def element_wire(element) -> dict:
    if isinstance(element, SemanticNode):
        return {"actor": element.actor.mention, "role": element.role, "state": element.state}
    if isinstance(element, EdgeRef):
        return element.to_wire()
    if isinstance(element, QuestionNode):
        return {"text": element.text}
    raise TypeError(f"not a reconcilable element: {type(element)!r}")


def element_text(element) -> str:
    if isinstance(element, SemanticNode):
        return element.text()
    if isinstance(element, EdgeRef):
        return element.text()
    raise TypeError(f"not a reconcilable element: {type(element)!r}")


@dataclass(frozen=True)
class CandidatePairSet:
    """Everything one reconciliation step must classify. Every node/edge of
    the new instance is either in a pair or listed as unmatched; pairs only
    relate elements sharing a canonical actor (nodes) or sharing both
    endpoint actors (edges)."""

    node_pairs: tuple[tuple[SemanticNode, SemanticNode], ...] = ()
    edge_pairs: tuple[tuple[EdgeRef, EdgeRef], ...] = ()
    question_checks: tuple[tuple[QuestionNode, Element], ...] = ()
    unmatched_new_nodes: tuple[SemanticNode, ...] = ()
    unmatched_new_edges: tuple[EdgeRef, ...] = ()

    def __len__(self) -> int:
        return len(self.node_pairs) + len(self.edge_pairs) + len(self.question_checks)
