"""Regenerate the bundled fixture files under src/gsw/fixtures/.

The instance payloads are declared literally here; the golden consensus is
hand-derived (not produced by running the pipeline) so the end-to-end test
stays non-circular.
"""

from __future__ import annotations

import json
import os

from gsw.backends import context_hash

HERE = os.path.dirname(os.path.abspath(__file__))
FIXTURES = os.path.join(HERE, "..", "src", "gsw", "fixtures")

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

S1_INSTANCE = {
    "situation": "crime_and_justice",
    "segment": 1,
    "nodes": [
        {"actor": "law enforcement officer", "role": "apprehenders", "state": "successful"},
        {"actor": "johnathan miller", "role": "suspect", "state": "apprehended"},
        {"actor": "greenview avenue", "role": "suspect residence", "state": "inhabited"},
        {"actor": "robbery", "role": "crime event", "state": "reported"},
    ],
    "edges": [
        {
            "label": "responded to",
            "source": "law enforcement officer",
            "target": "robbery",
            "attributes": "yesterday",
        },
        {
            "label": "apprehended by",
            "source": "johnathan miller",
            "target": "law enforcement officer",
            "attributes": "in downtown area",
        },
    ],
    "questions": [
        "what led to the apprehension of johnathan miller by the law enforcement officers?",
        "how did the law enforcement officers apprehend johnathan miller?",
    ],
}

S2_INSTANCE = {
    "situation": "crime_and_justice",
    "segment": 2,
    "nodes": [
        {"actor": "law enforcement officer", "role": "apprehenders", "state": "successful"},
        {"actor": "miller", "role": "suspect", "state": "arrested"},
        {"actor": "provided descriptions", "role": "evidence", "state": "provided"},
    ],
    "edges": [
        {
            "label": "acted on",
            "source": "law enforcement officer",
            "target": "provided descriptions",
            "attributes": "which led to the arrest",
        },
    ],
    "questions": ["what charges does miller face?"],
}

FIRE_INSTANCE = {
    "situation": "fire_fighting",
    "segment": 1,
    "nodes": [
        {"actor": "10 units", "role": "firefighting force", "state": "deployed"},
        {"actor": "flames", "role": "cause of destruction", "state": "engulfing"},
        {"actor": "party", "role": "damage causer", "state": "caused damage"},
        {"actor": "property", "role": "loss victim", "state": "damaged"},
        {"actor": "south savannah", "role": "affected area", "state": "engulfed"},
    ],
    "edges": [
        {"label": "caused loss of", "source": "flames", "target": "property", "attributes": "in south savannah"},
        {"label": "engulfed in", "source": "flames", "target": "south savannah", "attributes": "in south savannah"},
        {"label": "caused loss of", "source": "party", "target": "property", "attributes": "in south savannah"},
        {"label": "caused fire in", "source": "party", "target": "south savannah", "attributes": "south savannah"},
    ],
    "questions": [
        "who was responsible for causing the fire at the gender reveal party in south savannah?",
        "how did the gender reveal party lead to the destruction of over a million acres in south savannah?",
        "when and where did the gender reveal party take place?",
        "where did the 10 units of the lafd go after responding to the fire?",
        "what measures are being taken to prevent such incidents in the future?",
        "why did the 10 units of the lafd respond to the fire at the scene?",
    ],
}

# Expected end state of the two-segment crime story: S2 updates the
# suspect's state, adds the evidence actor and edge, answers the "what
# led..." question, and leaves "how did..." open.
GOLDEN_CONSENSUS = {
    "situation": "crime_and_justice",
    "segment": 2,
    "nodes": [
        {"actor": "law enforcement officer", "role": "apprehenders", "state": "successful"},
        {"actor": "johnathan miller", "role": "suspect", "state": "arrested"},
        {"actor": "greenview avenue", "role": "suspect residence", "state": "inhabited"},
        {"actor": "robbery", "role": "crime event", "state": "reported"},
        {"actor": "provided descriptions", "role": "evidence", "state": "provided"},
    ],
    "edges": [
        {
            "label": "responded to",
            "source": "law enforcement officer",
            "target": "robbery",
            "attributes": "yesterday",
        },
        {
            "label": "apprehended by",
            "source": "johnathan miller",
            "target": "law enforcement officer",
            "attributes": "in downtown area",
        },
        {
            "label": "acted on",
            "source": "law enforcement officer",
            "target": "provided descriptions",
            "attributes": "which led to the arrest",
        },
    ],
    "questions": [
        "how did the law enforcement officers apprehend johnathan miller?",
        "what charges does miller face?",
    ],
}


def main() -> None:
    os.makedirs(FIXTURES, exist_ok=True)
    with open(os.path.join(FIXTURES, "oracle_fixtures.jsonl"), "w", encoding="utf-8") as fh:
        for text, instance in (
            (S1_TEXT, S1_INSTANCE),
            (S2_TEXT, S2_INSTANCE),
            (FIRE_TEXT, FIRE_INSTANCE),
        ):
            fh.write(
                json.dumps(
                    {"context_hash": context_hash(text), "instance": instance},
                    ensure_ascii=False,
                )
            )
            fh.write("\n")
    with open(os.path.join(FIXTURES, "crime_story.jsonl"), "w", encoding="utf-8") as fh:
        fh.write(
            json.dumps(
                {
                    "doc_id": "cj-s1s2",
                    "situation": "crime_and_justice",
                    "text": f"{S1_TEXT} {S2_TEXT}",
                },
                ensure_ascii=False,
            )
        )
        fh.write("\n")
    with open(os.path.join(FIXTURES, "golden_consensus.json"), "w", encoding="utf-8") as fh:
        json.dump(GOLDEN_CONSENSUS, fh, ensure_ascii=False, indent=2)
        fh.write("\n")
    print(f"fixtures written to {os.path.normpath(FIXTURES)}")


if __name__ == "__main__":
    main()
