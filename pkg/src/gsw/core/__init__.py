"""Workspace graph data model, identity rules, and pure graph operations."""

from .model import (
    NONE_SENTINEL,
    QUESTION_OPEN,
    QUESTION_RESOLVED,
    SITUATIONS,
    STOPWORDS,
    Actor,
    EmptyMentionError,
    HistoryEntry,
    PredicateEdge,
    QuestionNode,
    SemanticNode,
    WorkingMemory,
    WorkspaceInstance,
    actor_id,
    build_instance,
    content_tokens,
    derive_anchors,
    empty_instance,
    empty_memory,
    make_actor,
    make_node,
    normalize_label,
    normalize_mention,
    normalize_question,
    normalize_situation,
    semantic_node_id,
)
from .serialize import (
    SchemaError,
    canonical_json,
    instance_from_dict,
    instance_to_dict,
    parse_instance,
    pretty_json,
    serialize_instance,
)
from .subgraph import subgraph_by_actors
from .validate import instance_warnings, validate_instance

__all__ = [
    "NONE_SENTINEL",
    "QUESTION_OPEN",
    "QUESTION_RESOLVED",
    "SITUATIONS",
    "STOPWORDS",
    "Actor",
    "EmptyMentionError",
    "HistoryEntry",
    "PredicateEdge",
    "QuestionNode",
    "SchemaError",
    "SemanticNode",
    "WorkingMemory",
    "WorkspaceInstance",
    "actor_id",
    "build_instance",
    "canonical_json",
    "content_tokens",
    "derive_anchors",
    "empty_instance",
    "empty_memory",
    "instance_from_dict",
    "instance_to_dict",
    "instance_warnings",
    "make_actor",
    "make_node",
    "normalize_label",
    "normalize_mention",
    "normalize_question",
    "normalize_situation",
    "parse_instance",
    "pretty_json",
    "semantic_node_id",
    "serialize_instance",
    "subgraph_by_actors",
    "validate_instance",
]
