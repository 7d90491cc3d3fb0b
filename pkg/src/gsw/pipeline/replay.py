"""Record replay: fold recorded decisions over an empty memory and verify
byte-equality with the stored consensus at every step."""

from __future__ import annotations

from ..core import WorkspaceInstance, empty_memory, serialize_instance
from ..reconcile import MergeError, merge, propose_pairs
from .runner import RunRecord


class ReplayDivergenceError(RuntimeError):
    def __init__(self, segment: int, message: str):
        super().__init__(f"replay diverged at segment {segment}: {message}")
        self.segment = segment


def replay(record: RunRecord) -> WorkspaceInstance:
    memory = empty_memory(record.situation)
    prune = bool(record.config.get("prune", True))
    hops = int(record.config.get("hops", 1))

    for snapshot in record.snapshots:
        n = snapshot.segment_index
        if snapshot.skipped or snapshot.instance is None:
            if serialize_instance(snapshot.consensus) != serialize_instance(
                memory.consensus
            ):
                raise ReplayDivergenceError(n, "skipped segment changed the consensus")
            continue
        pairs = propose_pairs(memory, snapshot.instance, prune, hops)
        try:
            outcome = merge(memory, snapshot.instance, list(snapshot.decisions), pairs)
        except MergeError as exc:
            raise ReplayDivergenceError(n, str(exc))
        memory = outcome.memory
        got = serialize_instance(memory.consensus)
        want = serialize_instance(snapshot.consensus)
        if got != want:
            raise ReplayDivergenceError(n, "merged consensus differs from snapshot")

    if serialize_instance(memory.consensus) != serialize_instance(
        record.final_consensus
    ):
        last = record.snapshots[-1].segment_index if record.snapshots else 0
        raise ReplayDivergenceError(last, "final consensus differs from record")
    return memory.consensus
