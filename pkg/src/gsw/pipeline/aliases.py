"""Lexical actor alias resolution.

A new actor maps onto an existing canonical id when one of its surface
forms matches an existing form exactly, or when the token sets are in a
subset relation and share a non-stopword ("miller" <-> "johnathan miller").
Anything subtler ("police" vs "law enforcement officers") is semantic
coreference and is deliberately left to the remote reconciler; such misses
are logged as candidates. Once a surface form maps to a canonical id it
never remaps within a run.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..core import (
    STOPWORDS,
    Actor,
    WorkingMemory,
    WorkspaceInstance,
    build_instance,
    make_node,
)


@dataclass
class AliasResolution:
    instance: WorkspaceInstance
    alias_table: dict[str, str]
    log: list[str] = field(default_factory=list)


def _token_subset_match(a: str, b: str) -> bool:
    ta, tb = set(a.split()), set(b.split())
    if not (ta <= tb or tb <= ta):
        return False
    return any(t not in STOPWORDS for t in ta & tb)


def resolve_aliases(memory: WorkingMemory, w: WorkspaceInstance) -> AliasResolution:
    """Rewrite `w` so its actors use the memory's canonical ids, minting
    fresh ids for genuinely new actors, and return the updated alias table.
    """
    table: dict[str, str] = dict(memory.alias_table)
    registry: dict[str, Actor] = memory.actor_registry()
    log: list[str] = []

    # Longer mentions register first so that "sarah thompson" is known
    # before "thompson" is resolved, even within one instance.
    incoming = sorted(
        w.actors().values(),
        key=lambda a: (-len(a.mention.split()), a.mention),
    )
    mapping: dict[str, Actor] = {}
    for actor in incoming:
        resolved_id = None
        for form in actor.surface_forms:
            if form in table:
                resolved_id = table[form]
                break
        if resolved_id is None:
            candidates = set()
            for form in actor.surface_forms:
                for known_form, known_id in table.items():
                    if _token_subset_match(form, known_form):
                        candidates.add(known_id)
            if len(candidates) == 1:
                resolved_id = candidates.pop()
            elif len(candidates) > 1:
                log.append(
                    f"ambiguous alias {actor.mention!r}: "
                    f"{len(candidates)} candidates tie, keeping fresh actor"
                )

        if resolved_id is not None and resolved_id in registry:
            final = registry[resolved_id].with_forms(actor.surface_forms)
        elif resolved_id is not None:
            # Known id whose actor object is gone from the registry; rebuild
            # it from the table's first form for that id.
            forms = [f for f, cid in table.items() if cid == resolved_id]
            final = Actor(resolved_id, tuple(forms), memory.situation).with_forms(
                actor.surface_forms
            )
        else:
            final = actor
            if table:
                log.append(f"coref candidate: fresh actor {actor.mention!r}")
        registry[final.canonical_id] = final
        mapping[actor.canonical_id] = final
        for form in final.surface_forms:
            table.setdefault(form, final.canonical_id)

    node_map: dict[str, str] = {}
    drafts = []
    for node in w.nodes:
        final_actor = mapping[node.actor.canonical_id]
        draft = make_node(final_actor, node.role, node.state, node.provenance)
        node_map[node.node_id] = draft.node_id
        drafts.append(draft)
    edges = [
        type(e)(
            node_map.get(e.source, e.source),
            e.label,
            node_map.get(e.target, e.target),
            e.attributes,
            e.provenance,
        )
        for e in w.edges
    ]
    instance = build_instance(w.situation, w.segment_index, drafts, edges, w.questions)
    return AliasResolution(instance, table, log)
