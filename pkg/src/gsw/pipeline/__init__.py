"""Document ingestion, segmentation, alias resolution, and the
autoregressive operator -> reconciler loop."""

from .aliases import AliasResolution, resolve_aliases
from .replay import ReplayDivergenceError, replay
from .runner import (
    Document,
    PipelineConfig,
    RunRecord,
    SegmentSnapshot,
    classify_all,
    load_document,
    record_from_dict,
    run_document,
    write_outputs,
)
from .segment import ABBREVIATIONS, segment, split_sentences

__all__ = [
    "ABBREVIATIONS",
    "AliasResolution",
    "Document",
    "PipelineConfig",
    "ReplayDivergenceError",
    "RunRecord",
    "SegmentSnapshot",
    "classify_all",
    "load_document",
    "record_from_dict",
    "replay",
    "resolve_aliases",
    "run_document",
    "segment",
    "split_sentences",
    "write_outputs",
]
