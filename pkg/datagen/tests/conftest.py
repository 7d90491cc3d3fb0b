import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

S1_TEXT = (
    "Yesterday, in a swift response to a reported robbery, law enforcement "
    "officers apprehended Johnathan Miller, a 32-year-old resident of "
    "Greenview Avenue, in the downtown area."
)
S2_TEXT = (
    "Police swiftly acted on the provided descriptions, locating and "
    "arresting Miller within the hour."
)

FIRST_NAMES = (
    "Alder", "Briar", "Cedar", "Dunes", "Embers", "Fjord", "Garnet", "Hollow",
    "Iris", "Juniper", "Kestrel", "Larkspur", "Maple", "Nimbus", "Onyx",
    "Pebble", "Quill", "Rowan", "Sable", "Thistle",
)
LAST_NAMES = ("Works", "Group", "Council", "Depot", "Harbor", "Collective")
VERBS = ("inspected", "escorted", "funded", "observed", "contacted")


@pytest.fixture(scope="session")
def crime_corpus():
    return [
        {
            "doc_id": "cj-s1s2",
            "situation": "crime_and_justice",
            "text": f"{S1_TEXT} {S2_TEXT}",
        }
    ]


def synthetic_corpus(n_docs: int, sentences_per_doc: int = 3) -> list[dict]:
    """Deterministic corpus with recurring capitalized actors per doc."""
    rows = []
    for d in range(n_docs):
        a = FIRST_NAMES[d % len(FIRST_NAMES)] + " " + LAST_NAMES[d % len(LAST_NAMES)]
        b = FIRST_NAMES[(d + 7) % len(FIRST_NAMES)]
        c = FIRST_NAMES[(d + 13) % len(FIRST_NAMES)] + " Point"
        sentences = []
        for s in range(sentences_per_doc):
            verb = VERBS[(d + s) % len(VERBS)]
            sentences.append(f"{a} {verb} {b} near {c} on day {s + 1}.")
        rows.append(
            {
                "doc_id": f"synth-{d:04d}",
                "situation": "economy",
                "text": " ".join(sentences),
            }
        )
    return rows
