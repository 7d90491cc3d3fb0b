"""Robust parsing of structured oracle output.

Strict JSON first, then a fixed, ordered list of repair passes:

  1. strip markdown code fences,
  2. remove trailing commas before '}' / ']',
  3. quote bare object keys.

Passes apply cumulatively and deterministically; there is no model-based
self-repair. Key-variant tolerance ("state" vs "states") lives in the
schema mapper, not here.
"""

from __future__ import annotations

import json
import re
from typing import Optional, Tuple

from ..core import SchemaError, WorkspaceInstance, instance_from_dict
from .config import PARSE_CLEAN, PARSE_FAILED, PARSE_REPAIRED

_FENCE_RE = re.compile(r"```(?:[a-zA-Z0-9_-]+)?\s*(.*?)\s*```", re.DOTALL)
_TRAILING_COMMA_RE = re.compile(r",\s*([}\]])")
_BARE_KEY_RE = re.compile(r'([{,]\s*)([A-Za-z_][A-Za-z0-9_]*)(\s*:)')


def strip_code_fences(text: str) -> str:
    match = _FENCE_RE.search(text)
    return match.group(1) if match else text


def remove_trailing_commas(text: str) -> str:
    return _TRAILING_COMMA_RE.sub(r"\1", text)


def quote_bare_keys(text: str) -> str:
    return _BARE_KEY_RE.sub(r'\1"\2"\3', text)


REPAIR_PASSES = (strip_code_fences, remove_trailing_commas, quote_bare_keys)


def parse_oracle_output(
    raw,
    situation: Optional[str] = None,
    segment: Optional[int] = None,
) -> Tuple[Optional[WorkspaceInstance], str]:
    """Extract an instance fragment from oracle text.

    Returns (fragment, status) where status is clean/repaired/failed and a
    failed status always carries a None fragment. Never raises, whatever
    the input bytes.
    """
    if isinstance(raw, bytes):
        raw = raw.decode("utf-8", errors="replace")
    if not isinstance(raw, str):
        return None, PARSE_FAILED

    candidates = [(raw, PARSE_CLEAN)]
    text = raw
    for repair in REPAIR_PASSES:
        text = repair(text)
        candidates.append((text, PARSE_REPAIRED))

    for candidate, status in candidates:
        try:
            data = json.loads(candidate)
        except (json.JSONDecodeError, RecursionError):
            continue
        try:
            return instance_from_dict(data, situation, segment), status
        except (SchemaError, RecursionError):
            return None, PARSE_FAILED
    return None, PARSE_FAILED
