"""Silver-standard example assembly.

For each segment the teacher instance is sliced into the five generation
stages (one operator example per stage); consecutive-segment instances are
paired element-wise (same-actor nodes, same-endpoint edges) with
teacher-assigned REC labels; open questions are paired against the next
segment's evidence for QR labels. Negative predicate examples (a "none"
rejection for a spurious actor pair) are injected to a target fraction of
all operator predicate examples.

Everything is deterministic given the corpus and the response cache, which
is what makes byte-exact replay possible.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional

from .schema import STAGES, stage_fragment
from .teacher import TeacherError, TeacherSession
from .textutil import actor_key, split_sentences, windows

log = logging.getLogger(__name__)

KIND_OPERATOR = "operator_stage"
KIND_REC = "rec_pair"
KIND_QR = "qr_pair"


@dataclass
class SilverDatasets:
    operator: list[dict] = field(default_factory=list)
    rec: list[dict] = field(default_factory=list)
    qr: list[dict] = field(default_factory=list)
    documents: int = 0
    segments: int = 0
    skipped: list[str] = field(default_factory=list)

    def counts(self) -> dict:
        negatives = sum(
            1
            for row in self.operator
            if row["stage"] == "predicates" and row.get("negative")
        )
        predicates = sum(1 for row in self.operator if row["stage"] == "predicates")
        return {
            "documents": self.documents,
            "segments": self.segments,
            "operator_examples": len(self.operator),
            "rec_examples": len(self.rec),
            "qr_examples": len(self.qr),
            "predicate_examples": predicates,
            "negative_predicate_examples": negatives,
            "skipped": len(self.skipped),
        }


def negative_quota(positives: int, neg_rate: float) -> int:
    """Negatives to inject so they form neg_rate of all predicate examples:
    round(p * r / (1 - r)) — e.g. 60 positives at 0.40 -> 40 negatives."""
    if positives <= 0 or neg_rate <= 0:
        return 0
    return round(positives * neg_rate / (1.0 - neg_rate))


def _node_wire(node: dict) -> dict:
    return {"actor": node["actor"], "role": node["role"], "state": node["state"]}


def _edge_wire(edge: dict) -> dict:
    return {
        "label": edge["label"],
        "source": edge["source"],
        "target": edge["target"],
        "attributes": edge.get("attributes"),
    }


def _edge_text(edge: dict) -> str:
    parts = [edge["source"], edge["label"], edge["target"]]
    if edge.get("attributes"):
        parts.append(edge["attributes"])
    return " ".join(parts)


def _node_text(node: dict) -> str:
    return f"{node['actor']} {node['role']} {node['state']}"


def _spurious_pairs(instance: dict) -> list[tuple[str, str]]:
    """Ordered actor pairs with no recorded predicate, in canonical order."""
    actors = sorted({n["actor"] for n in instance["nodes"]})
    edged = {(e["source"], e["target"]) for e in instance["edges"]}
    return [
        (a, b)
        for a in actors
        for b in actors
        if a != b and (a, b) not in edged
    ]


def generate_silver(
    corpus_rows: list[dict],
    session: TeacherSession,
    neg_rate: float = 0.40,
    window: int = 3,
) -> SilverDatasets:
    if not 0 <= neg_rate < 1:
        raise ValueError("neg_rate must be in [0, 1)")
    datasets = SilverDatasets()
    negative_pools: list[tuple[dict, dict, str]] = []  # (provenance, instance, context)

    for row in corpus_rows:
        doc_id = str(row["doc_id"])
        situation = str(row["situation"])
        segments = windows(split_sentences(row.get("text", "")), window)
        datasets.documents += 1
        instances: list[Optional[dict]] = []
        response_ids: list[Optional[str]] = []
        for n, context in enumerate(segments, 1):
            datasets.segments += 1
            try:
                instance, response_id = session.instance_for(situation, context, n)
            except TeacherError as exc:
                log.warning("doc %s segment %d skipped: %s", doc_id, n, exc)
                datasets.skipped.append(f"{doc_id}:{n}: {exc}")
                instances.append(None)
                response_ids.append(None)
                continue
            instances.append(instance)
            response_ids.append(response_id)
            provenance = {"doc_id": doc_id, "segment": n, "response_id": response_id}

            previous = {
                "situation": situation,
                "segment": n,
                "nodes": [],
                "edges": [],
                "questions": [],
            }
            for stage in STAGES:
                target = stage_fragment(instance, stage)
                datasets.operator.append(
                    {
                        "kind": KIND_OPERATOR,
                        "stage": stage,
                        "situation": situation,
                        "provenance": provenance,
                        "input": {"context": context, "partial": previous},
                        "target": target,
                    }
                )
                previous = target
            negative_pools.append((provenance, instance, context))

        # consecutive-segment pairs
        for n in range(1, len(segments)):
            old, new = instances[n - 1], instances[n]
            if old is None or new is None:
                continue
            context = segments[n]
            provenance = {
                "doc_id": doc_id,
                "segment": n + 1,
                "response_id": response_ids[n],
            }
            old_nodes: dict[str, list[dict]] = {}
            for node in old["nodes"]:
                old_nodes.setdefault(actor_key(node["actor"]), []).append(node)
            for node in new["nodes"]:
                for old_node in old_nodes.get(actor_key(node["actor"]), ()):
                    try:
                        label, rid = session.rec_label(
                            "rec_node", _node_wire(old_node), _node_wire(node), context
                        )
                    except TeacherError as exc:
                        datasets.skipped.append(f"{doc_id}:{n + 1}:rec: {exc}")
                        continue
                    datasets.rec.append(
                        {
                            "kind": KIND_REC,
                            "task": "rec_node",
                            "situation": situation,
                            "provenance": {**provenance, "label_response_id": rid},
                            "input": {
                                "old": _node_wire(old_node),
                                "new": _node_wire(node),
                                "context": context,
                            },
                            "target": label,
                        }
                    )
            old_edges: dict[tuple[str, str], list[dict]] = {}
            for edge in old["edges"]:
                key = (actor_key(edge["source"]), actor_key(edge["target"]))
                old_edges.setdefault(key, []).append(edge)
            for edge in new["edges"]:
                key = (actor_key(edge["source"]), actor_key(edge["target"]))
                for old_edge in old_edges.get(key, ()):
                    try:
                        label, rid = session.rec_label(
                            "rec_edge", _edge_wire(old_edge), _edge_wire(edge), context
                        )
                    except TeacherError as exc:
                        datasets.skipped.append(f"{doc_id}:{n + 1}:rec: {exc}")
                        continue
                    datasets.rec.append(
                        {
                            "kind": KIND_REC,
                            "task": "rec_edge",
                            "situation": situation,
                            "provenance": {**provenance, "label_response_id": rid},
                            "input": {
                                "old": _edge_wire(old_edge),
                                "new": _edge_wire(edge),
                                "context": context,
                            },
                            "target": label,
                        }
                    )
            evidence = [("node", _node_wire(x), _node_text(x)) for x in new["nodes"]]
            evidence += [("edge", _edge_wire(x), _edge_text(x)) for x in new["edges"]]
            for question in old["questions"]:
                for kind, wire, text in evidence:
                    try:
                        label, rid = session.qr_label(question, text)
                    except TeacherError as exc:
                        datasets.skipped.append(f"{doc_id}:{n + 1}:qr: {exc}")
                        continue
                    datasets.qr.append(
                        {
                            "kind": KIND_QR,
                            "situation": situation,
                            "provenance": {**provenance, "label_response_id": rid},
                            "input": {
                                "question": question,
                                "evidence_kind": kind,
                                "evidence": wire,
                            },
                            "target": label,
                        }
                    )

    # negative predicate injection, round-robin over segments
    positives = sum(1 for r in datasets.operator if r["stage"] == "predicates")
    quota = negative_quota(positives, neg_rate)
    pools = [
        (provenance, instance, context, _spurious_pairs(instance))
        for provenance, instance, context in negative_pools
    ]
    pools = [entry for entry in pools if entry[3]]
    made, cursor, round_no = 0, 0, 0
    while made < quota and pools:
        provenance, instance, context, pairs = pools[cursor % len(pools)]
        if round_no < len(pairs):
            source, target_actor = pairs[round_no]
            partial = stage_fragment(instance, "states")
            target = dict(partial)
            target["edges"] = [
                {
                    "label": "none",
                    "source": source,
                    "target": target_actor,
                    "attributes": None,
                }
            ]
            datasets.operator.append(
                {
                    "kind": KIND_OPERATOR,
                    "stage": "predicates",
                    "negative": True,
                    "situation": instance["situation"],
                    "provenance": provenance,
                    "input": {
                        "context": context,
                        "partial": partial,
                        "candidate": {"source": source, "target": target_actor},
                    },
                    "target": target,
                }
            )
            made += 1
        cursor += 1
        if cursor % len(pools) == 0:
            round_no += 1
            if round_no >= max(len(p[3]) for p in pools):
                break
    if made < quota:
        log.warning("negative pool exhausted: %d of %d injected", made, quota)
    return datasets
