"""Rule-based sentence segmentation into short contexts."""

from __future__ import annotations

import logging
import re

log = logging.getLogger(__name__)

#: Tokens (lowercased, trailing period removed) that do not end a sentence.
ABBREVIATIONS = frozenset(
    """
    mr mrs ms dr prof st ave blvd rd no etc e.g i.e vs al jr sr inc ltd co
    corp u.s u.k u.n a.m p.m
    """.split()
)

_BOUNDARY_RE = re.compile(r"([.?!]+)(\s+)(?=[\"'“‘A-Z])")
_LAST_TOKEN_RE = re.compile(r"([\w.&-]+)$")


def split_sentences(text: str) -> list[str]:
    """Split on ./?/! followed by whitespace and an uppercase letter or
    quote, unless the period terminates a known abbreviation."""
    boundaries = []
    for match in _BOUNDARY_RE.finditer(text):
        terminator = match.group(1)
        if set(terminator) == {"."}:
            before = text[: match.start(1)]
            token_match = _LAST_TOKEN_RE.search(before)
            if token_match:
                token = token_match.group(1).lower().rstrip(".")
                if token in ABBREVIATIONS:
                    continue
        boundaries.append(match.end(1))
    sentences = []
    start = 0
    for cut in boundaries:
        chunk = text[start:cut].strip()
        if chunk:
            sentences.append(chunk)
        start = cut
    tail = text[start:].strip()
    if tail:
        sentences.append(tail)
    return sentences


def segment(text: str, window: int = 3, overlap: int = 0) -> list[str]:
    """Windows of `window` sentences stepping by window - overlap; the final
    short window is kept."""
    if not text:
        raise ValueError("text must be non-empty")
    if not 1 <= window <= 10:
        raise ValueError("window must be in 1..10")
    if not 0 <= overlap < window:
        raise ValueError("overlap must satisfy 0 <= overlap < window")
    sentences = split_sentences(text)
    if not sentences:
        log.warning("no sentences detected; using the whole text as one segment")
        return [text]
    step = window - overlap
    segments = []
    i = 0
    while True:
        segments.append(" ".join(sentences[i : i + window]))
        if i + window >= len(sentences):
            break
        i += step
    return segments
