"""Workspace graph data model.

Pure value types shared by every other module: actors, semantic nodes
(actor-role-state triples), predicate edges, question nodes, workspace
instances, and the working memory that aggregates them. All types are
immutable; every derived identifier is a deterministic function of its
inputs so that identical runs produce byte-identical artifacts.
"""

from __future__ import annotations

import hashlib
import re
import unicodedata
from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping, Optional, Sequence

NONE_SENTINEL = "none"

#: Core situation labels used throughout the bundled fixtures. Any other
#: snake_case string is accepted as an open extension.
SITUATIONS = (
    "crime_and_justice",
    "fire_fighting",
    "technology_development",
    "healthcare",
    "economy",
)

#: Function words ignored when comparing question text against evidence and
#: when checking that alias token overlap is meaningful. Fixed list: the
#: question-resolution rule depends on it staying stable across runs.
STOPWORDS = frozenset(
    """
    a an the and or but nor so yet if then else when while where after before
    of to in into on onto at by for with from as is are was were be been being
    am do does did done doing have has had having it its it's this that these
    those there here what which who whom whose why how not no can could should
    would may might must will shall s t d ll m re ve o such than too very just
    about against between through during above below up down out off over
    under again further once all any both each few more most other some own
    same until
    """.split()
)

_PUNCT_STRIP = "\"'`.,;:!?()[]{}<>-–—*_/\\|~"


class EmptyMentionError(ValueError):
    """Raised when a mention normalizes to the empty string."""


def normalize_mention(raw: str) -> str:
    """Normalize a surface mention: NFC, lowercase, collapsed whitespace,
    leading/trailing punctuation stripped. Idempotent.

    Raises EmptyMentionError when nothing survives; the caller decides
    whether to drop the mention.
    """
    text = unicodedata.normalize("NFC", raw).lower()
    text = " ".join(text.split())
    text = text.strip(_PUNCT_STRIP + " ")
    text = " ".join(text.split())
    if not text:
        raise EmptyMentionError(f"mention is empty after normalization: {raw!r}")
    return text


def normalize_label(raw: str) -> str:
    """Normalize a role/state/predicate label (same rules as mentions)."""
    return normalize_mention(raw)


def normalize_question(raw: str) -> str:
    """Normalize question text; guarantees a single trailing '?'."""
    text = unicodedata.normalize("NFC", raw).lower()
    text = " ".join(text.split())
    text = text.rstrip(_PUNCT_STRIP + " ")
    text = " ".join(text.split())
    if not text:
        raise EmptyMentionError(f"question is empty after normalization: {raw!r}")
    return text + "?"


def normalize_situation(raw: str) -> str:
    """Situation labels are snake_case."""
    text = unicodedata.normalize("NFC", raw).strip().lower()
    text = re.sub(r"[\s\-]+", "_", text)
    text = re.sub(r"_+", "_", text).strip("_")
    if not text:
        raise EmptyMentionError(f"situation is empty after normalization: {raw!r}")
    return text


def content_tokens(text: str) -> list[str]:
    """Lowercased word tokens minus stopwords, used by the question
    resolution rule and alias heuristics."""
    tokens = re.findall(r"[a-z0-9]+(?:'[a-z]+)?", text.lower())
    return [t for t in tokens if t not in STOPWORDS]


def _digest(*parts: str) -> str:
    return hashlib.sha1("\x1f".join(parts).encode("utf-8")).hexdigest()[:16]


def actor_id(situation: str, canonical_mention: str) -> str:
    """Stable opaque key for an actor within a situation."""
    return _digest("actor", situation, canonical_mention)


def semantic_node_id(canonical_actor_id: str, role: str) -> str:
    """Stable opaque key for an actor-role node."""
    return _digest("node", canonical_actor_id, role)


@dataclass(frozen=True)
class Actor:
    """A tracked entity. The first surface form is the canonical mention;
    canonical_id is derived from it plus the situation."""

    canonical_id: str
    surface_forms: tuple[str, ...]
    situation: str

    @property
    def mention(self) -> str:
        return self.surface_forms[0]

    def with_forms(self, extra: Iterable[str]) -> "Actor":
        """Return a copy with extra normalized forms appended (dedup, order
        preserved). The canonical mention never changes."""
        forms = list(self.surface_forms)
        for f in extra:
            if f not in forms:
                forms.append(f)
        if len(forms) == len(self.surface_forms):
            return self
        return replace(self, surface_forms=tuple(forms))


def make_actor(mention: str, situation: str, extra_forms: Sequence[str] = ()) -> Actor:
    """Build an actor from a raw mention; all forms are normalized."""
    canon = normalize_mention(mention)
    situation = normalize_situation(situation)
    forms = [canon]
    for raw in extra_forms:
        f = normalize_mention(raw)
        if f not in forms:
            forms.append(f)
    return Actor(actor_id(situation, canon), tuple(forms), situation)


@dataclass(frozen=True)
class SemanticNode:
    """One actor-role-state triple. Identity is (actor, role): a replaced
    state keeps the node_id, a new role mints a new node."""

    node_id: str
    actor: Actor
    role: str
    state: str
    provenance: int = 1

    @property
    def is_negative(self) -> bool:
        """Negative sample ("none" default lexicon); droppable before
        an instance is returned to callers."""
        return self.role == NONE_SENTINEL

    def text(self) -> str:
        """Serialized text used by the lexical question-resolution rule."""
        return f"{self.actor.mention} {self.role} {self.state}"


def make_node(actor: Actor, role: str, state: str, seg: int) -> SemanticNode:
    """Build a node; role/state must be pre-normalized or the sentinel."""
    return SemanticNode(semantic_node_id(actor.canonical_id, role), actor, role, state, seg)


@dataclass(frozen=True)
class PredicateEdge:
    """A labeled interaction between two nodes of distinct actors, with an
    optional opaque qualifier (time/place etc.)."""

    source: str
    label: str
    target: str
    attributes: Optional[str] = None
    provenance: int = 1

    @property
    def key(self) -> str:
        return f"{self.source}|{self.label}|{self.target}"

    @property
    def is_negative(self) -> bool:
        return self.label == NONE_SENTINEL


QUESTION_OPEN = "open"
QUESTION_RESOLVED = "resolved"


@dataclass(frozen=True)
class QuestionNode:
    """An unresolved-question valence node. Anchors are the canonical ids of
    actors mentioned in the text (possibly empty)."""

    text: str
    anchors: frozenset[str] = frozenset()
    status: str = QUESTION_OPEN
    provenance: int = 1


def derive_anchors(text: str, actors: Iterable[Actor]) -> frozenset[str]:
    """Anchor a question to every actor whose surface form occurs in the
    text (word-boundary match)."""
    anchored = set()
    for actor in actors:
        for form in actor.surface_forms:
            if re.search(rf"(?<![a-z0-9]){re.escape(form)}(?![a-z0-9])", text):
                anchored.add(actor.canonical_id)
                break
    return frozenset(anchored)


@dataclass(frozen=True)
class WorkspaceInstance:
    """The semantic graph extracted from one text segment (or the aggregated
    consensus). Nodes/edges/questions are kept in canonical order so that
    equal instances serialize byte-identically."""

    situation: str
    segment_index: int
    nodes: tuple[SemanticNode, ...] = ()
    edges: tuple[PredicateEdge, ...] = ()
    questions: tuple[QuestionNode, ...] = ()

    def actors(self) -> dict[str, Actor]:
        out: dict[str, Actor] = {}
        for node in self.nodes:
            out.setdefault(node.actor.canonical_id, node.actor)
        return out

    def node_map(self) -> dict[str, SemanticNode]:
        return {n.node_id: n for n in self.nodes}

    def nodes_of_actor(self, canonical_id: str) -> list[SemanticNode]:
        return [n for n in self.nodes if n.actor.canonical_id == canonical_id]

    def is_empty(self) -> bool:
        return not (self.nodes or self.edges or self.questions)


def empty_instance(situation: str, segment_index: int = 0) -> WorkspaceInstance:
    return WorkspaceInstance(normalize_situation(situation), segment_index)


def build_instance(
    situation: str,
    segment_index: int,
    nodes: Sequence[SemanticNode],
    edges: Sequence[PredicateEdge] = (),
    questions: Sequence[QuestionNode] = (),
) -> WorkspaceInstance:
    """Assemble an instance in canonical form.

    - one Actor object per canonical_id (surface forms unioned);
    - duplicate (actor, role, state) nodes collapse; same (actor, role) with
      a different state gets a '#k' suffix on node_id (multi-state actors);
    - edges are re-pointed through the node_id mapping, deduplicated by
      (source, label, target), and dropped when dangling or self-looped;
    - question text is deduplicated and anchors recomputed.
    """
    situation = normalize_situation(situation)

    merged_actors: dict[str, Actor] = {}
    for node in nodes:
        prev = merged_actors.get(node.actor.canonical_id)
        merged_actors[node.actor.canonical_id] = (
            node.actor if prev is None else prev.with_forms(node.actor.surface_forms)
        )

    final_nodes: list[SemanticNode] = []
    id_map: dict[str, str] = {}
    by_triple: dict[tuple[str, str, str], str] = {}
    states_per_base: dict[str, int] = {}
    for node in nodes:
        actor = merged_actors[node.actor.canonical_id]
        base = semantic_node_id(actor.canonical_id, node.role)
        triple = (actor.canonical_id, node.role, node.state)
        if triple in by_triple:
            id_map.setdefault(node.node_id, by_triple[triple])
            continue
        count = states_per_base.get(base, 0)
        final_id = base if count == 0 else f"{base}#{count + 1}"
        states_per_base[base] = count + 1
        by_triple[triple] = final_id
        id_map.setdefault(node.node_id, final_id)
        final_nodes.append(
            SemanticNode(final_id, actor, node.role, node.state, node.provenance)
        )
    final_nodes.sort(key=lambda n: n.node_id)
    known_ids = {n.node_id for n in final_nodes}

    final_edges: list[PredicateEdge] = []
    seen_edges: set[str] = set()
    for edge in edges:
        src = id_map.get(edge.source, edge.source)
        tgt = id_map.get(edge.target, edge.target)
        if src not in known_ids or tgt not in known_ids or src == tgt:
            continue
        repointed = PredicateEdge(src, edge.label, tgt, edge.attributes, edge.provenance)
        if repointed.key in seen_edges:
            continue
        seen_edges.add(repointed.key)
        final_edges.append(repointed)
    final_edges.sort(key=lambda e: (e.source, e.label, e.target))

    actor_objs = list(merged_actors.values())
    final_questions: list[QuestionNode] = []
    seen_q: set[str] = set()
    for q in questions:
        if q.text in seen_q:
            continue
        seen_q.add(q.text)
        final_questions.append(
            QuestionNode(q.text, derive_anchors(q.text, actor_objs), q.status, q.provenance)
        )
    final_questions.sort(key=lambda q: (q.provenance, q.text))

    return WorkspaceInstance(
        situation, segment_index, tuple(final_nodes), tuple(final_edges), tuple(final_questions)
    )


@dataclass(frozen=True)
class HistoryEntry:
    """What one reconciliation step did to the consensus. Replaying the
    recorded decisions over an empty memory reproduces the consensus."""

    segment_index: int
    decisions: tuple = ()
    inserted: tuple[str, ...] = ()
    replaced: tuple[tuple[str, str], ...] = ()
    dropped_new: tuple[str, ...] = ()
    dropped_edges: tuple[str, ...] = ()
    resolved_questions: tuple[str, ...] = ()
    new_questions: tuple[str, ...] = ()
    skipped: bool = False


@dataclass(frozen=True)
class WorkingMemory:
    """Consensus instance plus the alias table and the append-only decision
    history that produced it."""

    consensus: WorkspaceInstance
    alias_table: Mapping[str, str] = field(default_factory=dict)
    history: tuple[HistoryEntry, ...] = ()

    @property
    def situation(self) -> str:
        return self.consensus.situation

    def resolved_question_texts(self) -> frozenset[str]:
        """Questions resolved at any earlier step; they may never reappear."""
        out: set[str] = set()
        for entry in self.history:
            out.update(entry.resolved_questions)
        return frozenset(out)

    def actor_registry(self) -> dict[str, Actor]:
        """Actors reconstructed from the alias table (insertion order gives
        the canonical mention) unioned with consensus actors."""
        forms_by_id: dict[str, list[str]] = {}
        for form, cid in self.alias_table.items():
            forms_by_id.setdefault(cid, []).append(form)
        registry = {
            cid: Actor(cid, tuple(forms), self.situation)
            for cid, forms in forms_by_id.items()
        }
        for cid, actor in self.consensus.actors().items():
            if cid in registry:
                registry[cid] = registry[cid].with_forms(actor.surface_forms)
            else:
                registry[cid] = actor
        return registry


def empty_memory(situation: str) -> WorkingMemory:
    return WorkingMemory(empty_instance(situation, 0), {}, ())
