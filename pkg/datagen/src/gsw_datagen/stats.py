"""Corpus statistics in the situation/documents/sentences/tokens layout."""

from __future__ import annotations

from .textutil import split_sentences, word_count


def corpus_stats(corpus_rows: list[dict]) -> list[dict]:
    by_situation: dict[str, dict] = {}
    for row in corpus_rows:
        situation = str(row.get("situation", "unknown"))
        text = row.get("text", "")
        entry = by_situation.setdefault(
            situation, {"situation": situation, "documents": 0, "sentences": 0, "tokens": 0}
        )
        entry["documents"] += 1
        entry["sentences"] += len(split_sentences(text))
        entry["tokens"] += word_count(text)
    return [by_situation[s] for s in sorted(by_situation)]


def format_stats_table(rows: list[dict]) -> str:
    header = f"{'Situation Label':<26}{'Documents':>11}{'Sentences':>11}{'Tokens':>10}"
    lines = [header, "-" * len(header)]
    for row in rows:
        lines.append(
            f"{row['situation']:<26}{row['documents']:>11}{row['sentences']:>11}"
            f"{row['tokens']:>10,}"
        )
    return "\n".join(lines)
