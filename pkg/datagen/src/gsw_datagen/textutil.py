"""Small text utilities: sentence splitting, windowing, tokens.

Kept local on purpose: this package talks to the workspace runtime only
through its file formats, so it carries its own (deliberately simple)
segmentation matching the 3-sentence-context convention.
"""

from __future__ import annotations

import re

ABBREVIATIONS = frozenset(
    "mr mrs ms dr prof st no etc e.g i.e vs jr sr inc ltd co u.s u.k a.m p.m".split()
)

STOPWORDS = frozenset(
    """
    a an the and or but if then of to in on at by for with from as is are was
    were be been am do does did have has had it its this that these those
    there here what which who whom whose why how not no so such than too very
    about over under after before during
    """.split()
)

_BOUNDARY_RE = re.compile(r"([.?!]+)(\s+)(?=[\"'“‘A-Z])")
_LAST_TOKEN_RE = re.compile(r"([\w.&-]+)$")


def split_sentences(text: str) -> list[str]:
    cuts = []
    for match in _BOUNDARY_RE.finditer(text):
        if set(match.group(1)) == {"."}:
            token = _LAST_TOKEN_RE.search(text[: match.start(1)])
            if token and token.group(1).lower().rstrip(".") in ABBREVIATIONS:
                continue
        cuts.append(match.end(1))
    out, start = [], 0
    for cut in cuts:
        chunk = text[start:cut].strip()
        if chunk:
            out.append(chunk)
        start = cut
    tail = text[start:].strip()
    if tail:
        out.append(tail)
    return out


def windows(sentences: list[str], window: int = 3) -> list[str]:
    if not sentences:
        return []
    segments = []
    i = 0
    while True:
        segments.append(" ".join(sentences[i : i + window]))
        if i + window >= len(sentences):
            break
        i += window
    return segments


def tokens(text: str) -> list[str]:
    return re.findall(r"[a-z0-9]+(?:'[a-z]+)?", text.lower())


def content_tokens(text: str) -> list[str]:
    return [t for t in tokens(text) if t not in STOPWORDS]


def word_count(text: str) -> int:
    return len(text.split())


def actor_key(mention: str) -> str:
    """Cross-segment identity for silver pairing: the last non-stopword
    token ("johnathan miller" and "miller" share "miller")."""
    parts = [t for t in mention.split() if t not in STOPWORDS]
    return parts[-1] if parts else mention
