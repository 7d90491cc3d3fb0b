"""Candidate pair proposal.

Pairing is actor-keyed, never a full cross product: an actor's semantics
can only be influenced by the actors around them, so node pairs require a
shared canonical actor and edge pairs a shared (source-actor,
target-actor). Pruning restricts the old side to the actor neighborhood of
the new instance.
"""

from __future__ import annotations

from ..core import WorkingMemory, WorkspaceInstance, subgraph_by_actors
from .decisions import CandidatePairSet, EdgeRef


def edge_refs(w: WorkspaceInstance) -> list[EdgeRef]:
    node_by_id = w.node_map()
    return [EdgeRef(e, node_by_id[e.source], node_by_id[e.target]) for e in w.edges]


def propose_pairs(
    memory: WorkingMemory,
    w: WorkspaceInstance,
    prune: bool = True,
    hops: int = 1,
) -> CandidatePairSet:
    """Build the pair set for one reconciliation step.

    Expects alias resolution to have been applied: actors in `w` already use
    the memory's canonical ids. Question checks pair every open consensus
    question whose anchors intersect the new instance's actors against every
    new node and edge.
    """
    new_actors = set(w.actors())
    old_side = (
        subgraph_by_actors(memory.consensus, new_actors, hops)
        if prune
        else memory.consensus
    )

    node_pairs = []
    paired_new_nodes: set[str] = set()
    old_nodes_by_actor: dict[str, list] = {}
    for node in old_side.nodes:
        old_nodes_by_actor.setdefault(node.actor.canonical_id, []).append(node)
    for new_node in w.nodes:
        for old_node in old_nodes_by_actor.get(new_node.actor.canonical_id, ()):
            node_pairs.append((old_node, new_node))
            paired_new_nodes.add(new_node.node_id)

    old_edges_by_pair: dict[tuple[str, str], list[EdgeRef]] = {}
    for ref in edge_refs(old_side):
        old_edges_by_pair.setdefault(ref.actor_pair, []).append(ref)
    edge_pairs = []
    paired_new_edges: set[str] = set()
    new_edge_refs = edge_refs(w)
    for new_ref in new_edge_refs:
        for old_ref in old_edges_by_pair.get(new_ref.actor_pair, ()):
            edge_pairs.append((old_ref, new_ref))
            paired_new_edges.add(new_ref.key)

    question_checks = []
    new_elements = list(w.nodes) + new_edge_refs
    for question in memory.consensus.questions:
        if not (set(question.anchors) & new_actors):
            continue
        for element in new_elements:
            question_checks.append((question, element))

    return CandidatePairSet(
        node_pairs=tuple(node_pairs),
        edge_pairs=tuple(edge_pairs),
        question_checks=tuple(question_checks),
        unmatched_new_nodes=tuple(
            n for n in w.nodes if n.node_id not in paired_new_nodes
        ),
        unmatched_new_edges=tuple(
            r for r in new_edge_refs if r.key not in paired_new_edges
        ),
    )
