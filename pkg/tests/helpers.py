"""Shared test utilities: fixture texts and random-instance generators."""

from __future__ import annotations

import random

from gsw.core import (
    PredicateEdge,
    QuestionNode,
    WorkingMemory,
    WorkspaceInstance,
    build_instance,
    make_actor,
    make_node,
    normalize_question,
)

S1_TEXT = (
    "Yesterday, in a swift response to a reported robbery, law enforcement "
    "officers apprehended Johnathan Miller, a 32-year-old resident of "
    "Greenview Avenue, in the downtown area."
)
S2_TEXT = (
    "Police swiftly acted on the provided descriptions, locating and "
    "arresting Miller within the hour."
)
FIRE_TEXT = (
    "After a gender reveal party gone wrong, 10 units of the LAFD were sent "
    "to handle the fire at the scene. The gender reveal party caused over a "
    "million acres to the engulfed in flames in South Savannah, causing "
    "billions of dollars in damages and loss of property."
)
# Full five-sentence story (segments 1-3 and 4-5 under the default window).
CJ0_TEXT = (
    f"{S1_TEXT} According to eyewitnesses, Miller allegedly brandished a "
    "weapon at a convenience store on Elm Street, demanding cash before "
    f"fleeing the scene. {S2_TEXT} He is currently detained at the city's "
    "central precinct, awaiting arraignment on charges of armed robbery. "
    "Authorities are commending the public for their quick reporting, "
    "emphasizing the importance of community involvement in maintaining "
    "public safety."
)

ACTOR_POOL = [
    "rivera", "jordan ellis", "acme corp", "north bridge", "harbor patrol",
    "clara jensen", "union depot", "red canyon", "city council", "marcus lee",
    "pine street", "delta crew", "old mill", "kite factory", "silver lake",
    "tom baker", "iron works", "quarry road", "vista point", "noor rahman",
]
ROLE_POOL = [
    "organizer", "witness", "responder", "target", "sponsor", "carrier",
    "venue", "inspector", "supplier", "guardian",
]
STATE_POOL = [
    "active", "pending", "confirmed", "damaged", "recovered", "expanding",
    "stalled", "verified", "dispatched", "closed",
]
LABEL_POOL = [
    "reported to", "supplied by", "linked to", "blocked by", "escorted to",
    "funded by", "observed near",
]
ATTR_POOL = [None, "last week", "near the bridge", "at dawn", None]
# Question vocabulary is deliberately disjoint from the pools above so that
# the lexical QR rule never fires against a memory's own elements.
QUESTION_POOL = [
    "when will the final outcome become public?",
    "why was the earlier announcement postponed?",
    "which agency signs the paperwork next?",
    "how long does the review usually take?",
    "who authorized the original filing?",
    "where does the appeal go afterwards?",
    "what happens if the deadline lapses?",
]


def random_instance(
    rng: random.Random,
    situation: str = "crime_and_justice",
    seg: int = 1,
    max_actors: int = 8,
    max_questions: int = 3,
    multi_role: bool = True,
) -> WorkspaceInstance:
    """A small valid instance (<= 20 nodes). Edges connect distinct actors
    and always attach to each actor's first node, so instances survive the
    wire format exactly."""
    n_actors = rng.randint(1, max_actors)
    mentions = rng.sample(ACTOR_POOL, n_actors)
    nodes = []
    nodes_of_actor: dict[str, list] = {}
    for mention in mentions:
        actor = make_actor(mention, situation)
        n_roles = rng.randint(1, 2) if multi_role else 1
        for role in rng.sample(ROLE_POOL, n_roles):
            node = make_node(actor, role, rng.choice(STATE_POOL), seg)
            nodes.append(node)
            nodes_of_actor.setdefault(actor.canonical_id, []).append(node)
    # Wire-format edges name actors, and parse resolves them to the actor's
    # first node in node_id order; attach edges there so instances survive
    # the interchange format exactly.
    firsts = sorted(
        (min(group, key=lambda n: n.node_id) for group in nodes_of_actor.values()),
        key=lambda n: n.node_id,
    )

    edges = []
    if len(firsts) >= 2:
        for _ in range(rng.randint(0, min(4, len(firsts)))):
            src, tgt = rng.sample(firsts, 2)
            edges.append(
                PredicateEdge(
                    src.node_id,
                    rng.choice(LABEL_POOL),
                    tgt.node_id,
                    rng.choice(ATTR_POOL),
                    seg,
                )
            )
    questions = [
        QuestionNode(normalize_question(q), provenance=seg)
        for q in rng.sample(QUESTION_POOL, rng.randint(0, max_questions))
    ]
    return build_instance(situation, seg, nodes, edges, questions)


def random_memory(
    rng: random.Random, situation: str = "crime_and_justice"
) -> WorkingMemory:
    consensus = random_instance(rng, situation)
    table = {}
    for actor in consensus.actors().values():
        for form in actor.surface_forms:
            table.setdefault(form, actor.canonical_id)
    return WorkingMemory(consensus, table, ())
