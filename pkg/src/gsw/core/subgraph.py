"""Actor-neighborhood subgraph extraction used to prune reconciliation."""

from __future__ import annotations

from typing import Iterable

from .model import WorkspaceInstance, build_instance


def subgraph_by_actors(
    w: WorkspaceInstance, actors: Iterable[str], hops: int
) -> WorkspaceInstance:
    """Nodes of the given actors plus everything reachable within `hops`
    undirected edge steps, the induced edges, and the questions anchored to
    any selected actor.

    Monotone in hops; edge closure is preserved by construction.
    """
    if hops < 0:
        raise ValueError("hops must be >= 0")
    wanted = set(actors)
    selected = {n.node_id for n in w.nodes if n.actor.canonical_id in wanted}

    neighbors: dict[str, set[str]] = {}
    for e in w.edges:
        neighbors.setdefault(e.source, set()).add(e.target)
        neighbors.setdefault(e.target, set()).add(e.source)

    frontier = set(selected)
    for _ in range(hops):
        nxt: set[str] = set()
        for node_id in frontier:
            nxt.update(neighbors.get(node_id, ()))
        nxt -= selected
        if not nxt:
            break
        selected |= nxt
        frontier = nxt

    nodes = [n for n in w.nodes if n.node_id in selected]
    edges = [e for e in w.edges if e.source in selected and e.target in selected]
    selected_actors = {n.actor.canonical_id for n in nodes}
    questions = [q for q in w.questions if set(q.anchors) & selected_actors]
    return build_instance(w.situation, w.segment_index, nodes, edges, questions)
