"""Acceptance criteria, one test per criterion, each printing a PASS line.

Run with `pytest tests/test_acceptance.py -s` to see the per-criterion
lines; any assertion failure is the corresponding FAIL.
"""

import json
import random
import time

import pytest

from gsw.backends import (
    BackendConfig,
    BackendConfigError,
    MockBackend,
    OracleRequest,
    TransportError,
    call_remote,
    generate_payload,
    parse_oracle_output,
    stage_slice,
)
from gsw.backends.parse import quote_bare_keys, remove_trailing_commas, strip_code_fences
from gsw.core import (
    WorkingMemory,
    build_instance,
    empty_instance,
    empty_memory,
    make_actor,
    make_node,
    serialize_instance,
)
from gsw.evalharness import LabeledPair, map_nli, map_qa, score
from gsw.pipeline import Document, PipelineConfig, replay, run_document
from gsw.reconcile import ReconcileDecision, classify_pair, merge, propose_pairs

from helpers import (
    ACTOR_POOL,
    ROLE_POOL,
    S1_TEXT,
    S2_TEXT,
    STATE_POOL,
    random_instance,
    random_memory,
)
from stubserver import RecordingOracle, StubServer, payload_key, recording_classifier
from test_metrics import oracle_metrics, oracle_sensitivity
from test_parse import (
    corrupt_with_bare_keys,
    corrupt_with_fences,
    corrupt_with_trailing_commas,
)
from test_reconcile import forced_decisions


def report(name: str, started: float) -> None:
    print(f"ACCEPTANCE PASS: {name} ({time.perf_counter() - started:.2f}s)")


def mock_classify_all(pairs):
    out = []
    for o, n in pairs.node_pairs:
        out.append(classify_pair(None, "rec_node", o, n))
    for o, n in pairs.edge_pairs:
        out.append(classify_pair(None, "rec_edge", o, n))
    for q, e in pairs.question_checks:
        out.append(classify_pair(None, "qr", q, e))
    return out


def test_golden_fixture_end_to_end(golden):
    """S1/S2 corpus through mock backends reproduces the committed fixture,
    including removal of the answered question, in under a second."""
    started = time.perf_counter()
    cfg = BackendConfig(kind="mock", situation="crime_and_justice")
    doc = Document("cj-s1s2", "crime_and_justice", f"{S1_TEXT} {S2_TEXT}")
    record = run_document(doc, PipelineConfig(operator=cfg, reconciler=cfg, window=1))
    elapsed = time.perf_counter() - started
    final = record.final_consensus

    got_nodes = {(n.actor.mention, n.role, n.state) for n in final.nodes}
    want_nodes = {(n.actor.mention, n.role, n.state) for n in golden.nodes}
    assert got_nodes == want_nodes

    def edge_set(w):
        nm = w.node_map()
        return {
            (nm[e.source].actor.mention, e.label, nm[e.target].actor.mention, e.attributes)
            for e in w.edges
        }

    assert edge_set(final) == edge_set(golden)
    assert {q.text for q in final.questions} == {q.text for q in golden.questions}
    assert not any(q.text.startswith("what led") for q in final.questions)
    assert elapsed < 1.0, f"golden run took {elapsed:.2f}s"
    report("golden fixture end-to-end (exact sets, < 1 s)", started)


def test_merge_property_suite():
    """>= 1000 randomized merge cases: label-0 preservation, actor-disjoint
    label-2 disjoint union, replace precedence, and replay byte-equality."""
    started = time.perf_counter()
    rng = random.Random(101)
    cases = 0

    # label-0 everywhere preserves the consensus (300 cases)
    for _ in range(300):
        memory = random_memory(rng)
        w = random_instance(rng, seg=2)
        pairs = propose_pairs(memory, w)
        paired_nodes = [n for _, n in pairs.node_pairs]
        paired_edges = [r.edge for _, r in pairs.edge_pairs]
        w2 = build_instance(w.situation, 2, paired_nodes, paired_edges, [])
        pairs2 = propose_pairs(memory, w2)
        merged = merge(memory, w2, forced_decisions(pairs2), pairs2).memory.consensus
        assert set(merged.nodes) == set(memory.consensus.nodes)
        assert set(merged.edges) == set(memory.consensus.edges)
        assert {q.text for q in merged.questions} == {
            q.text for q in memory.consensus.questions
        }
        cases += 1

    # label-2 on actor-disjoint instances yields the disjoint union (250)
    half = len(ACTOR_POOL) // 2
    for _ in range(250):
        old_pool, new_pool = ACTOR_POOL[:half], ACTOR_POOL[half:]
        old_nodes = [
            make_node(make_actor(m, "economy"), rng.choice(ROLE_POOL), rng.choice(STATE_POOL), 1)
            for m in rng.sample(old_pool, rng.randint(1, 5))
        ]
        new_nodes = [
            make_node(make_actor(m, "economy"), rng.choice(ROLE_POOL), rng.choice(STATE_POOL), 2)
            for m in rng.sample(new_pool, rng.randint(1, 5))
        ]
        memory = WorkingMemory(build_instance("economy", 1, old_nodes), {}, ())
        w = build_instance("economy", 2, new_nodes)
        pairs = propose_pairs(memory, w)
        merged = merge(memory, w, forced_decisions(pairs, node=2), pairs).memory.consensus
        assert {n.node_id for n in merged.nodes} == {
            n.node_id for n in memory.consensus.nodes
        } | {n.node_id for n in w.nodes}
        cases += 1

    # replace precedence against an independent resolution oracle (250)
    for _ in range(250):
        mentions = rng.sample(ACTOR_POOL, rng.randint(1, 4))
        old_nodes = [
            make_node(make_actor(m, "economy"), role, rng.choice(STATE_POOL), 1)
            for m in mentions
            for role in rng.sample(ROLE_POOL, rng.randint(1, 2))
        ]
        new_nodes = [
            make_node(make_actor(m, "economy"), role, rng.choice(STATE_POOL), 2)
            for m in mentions
            for role in rng.sample(ROLE_POOL, rng.randint(1, 2))
        ]
        memory = WorkingMemory(build_instance("economy", 1, old_nodes), {}, ())
        w = build_instance("economy", 2, new_nodes)
        pairs = propose_pairs(memory, w)
        decisions = [
            ReconcileDecision("rec_node", o.node_id, n.node_id, rng.choice((0, 1, 2)))
            for o, n in pairs.node_pairs
        ]
        merged = merge(memory, w, decisions, pairs).memory.consensus

        by_old: dict[str, list[int]] = {}
        by_new: dict[str, list[int]] = {}
        for d in decisions:
            by_old.setdefault(d.old_ref, []).append(d.label)
            by_new.setdefault(d.new_ref, []).append(d.label)
        expected = {
            (n.actor.canonical_id, n.role, n.state)
            for n in memory.consensus.nodes
            if 1 not in by_old.get(n.node_id, [])
        }
        for n in w.nodes:
            labels = by_new.get(n.node_id, [])
            if (1 in labels or 2 in labels) or not labels:
                expected.add((n.actor.canonical_id, n.role, n.state))
        got = {(n.actor.canonical_id, n.role, n.state) for n in merged.nodes}
        assert got == expected
        cases += 1

    # replay(RunRecord) byte-equals the stored consensus (250 documents)
    cfg = BackendConfig(kind="mock", situation="economy")

    class ScriptedBackend:
        def __init__(self, by_context):
            self.by_context = by_context

        def stage_output(self, req):
            from gsw.backends import RawOracleOutput

            full = self.by_context[req.context]
            frag = stage_slice(full, req.stage, req.situation, req.conditioning.segment_index)
            return RawOracleOutput(json.dumps(frag, sort_keys=True))

    for trial in range(250):
        contexts = {}
        segments = []
        for n in (1, 2, 3):
            ctx = f"synthetic economy update {trial}-{n}."
            contexts[ctx] = random_instance(rng, "economy", n, max_actors=5)
            segments.append(ctx)
        doc = Document(f"synth-{trial}", "economy", " ".join(segments), segments=segments)
        record = run_document(
            doc,
            PipelineConfig(operator=cfg, reconciler=cfg),
            operator=ScriptedBackend(contexts),
        )
        final = replay(record)
        assert serialize_instance(final) == serialize_instance(record.final_consensus)
        cases += 1

    assert cases >= 1000
    report(f"merge property suite ({cases} randomized cases, zero failures)", started)


def test_mock_rule_self_merge():
    """Reconciling 100 random memories with their own consensus changes
    nothing."""
    started = time.perf_counter()
    rng = random.Random(103)
    for _ in range(100):
        memory = random_memory(rng)
        w = memory.consensus
        pairs = propose_pairs(memory, w)
        merged = merge(memory, w, mock_classify_all(pairs), pairs).memory.consensus
        assert set(merged.nodes) == set(w.nodes)
        assert set(merged.edges) == set(w.edges)
        assert [q.text for q in merged.questions] == [q.text for q in w.questions]
    report("mock-rule self-merge (100 memories, exact)", started)


def test_pruning_soundness():
    """50 synthetic 3-segment stories with fully recurring actors: prune
    on/off produce identical final consensuses."""
    started = time.perf_counter()
    rng = random.Random(107)
    cfg = BackendConfig(kind="mock", situation="healthcare")

    class ScriptedBackend:
        def __init__(self, by_context):
            self.by_context = by_context

        def stage_output(self, req):
            from gsw.backends import RawOracleOutput

            full = self.by_context[req.context]
            frag = stage_slice(full, req.stage, req.situation, req.conditioning.segment_index)
            return RawOracleOutput(json.dumps(frag, sort_keys=True))

    for trial in range(50):
        base = random_instance(rng, "healthcare", 1, max_actors=5, multi_role=False)
        contexts = {}
        segments = []
        for n in (1, 2, 3):
            nodes = [
                make_node(p.actor, p.role, rng.choice(STATE_POOL), n) for p in base.nodes
            ]
            contexts[f"story {trial} part {n}."] = build_instance(
                "healthcare", n, nodes, (), base.questions
            )
            segments.append(f"story {trial} part {n}.")
        doc = Document(f"prune-{trial}", "healthcare", " ".join(segments), segments=segments)
        backend = ScriptedBackend(contexts)
        on = run_document(
            doc, PipelineConfig(operator=cfg, reconciler=cfg, prune=True, hops=1), operator=backend
        )
        off = run_document(
            doc, PipelineConfig(operator=cfg, reconciler=cfg, prune=False), operator=backend
        )
        assert serialize_instance(on.final_consensus) == serialize_instance(
            off.final_consensus
        )
    report("pruning soundness (50 stories, exact)", started)


def test_parser_fuzz(s1_instance, s2_instance, fire_instance):
    """10,000 fixed-point round trips; each repair pass fixes its targeted
    corruption on 100 mutated fixtures; arbitrary bytes never panic."""
    started = time.perf_counter()
    rng = random.Random(109)
    for _ in range(10_000):
        w = random_instance(rng, rng.choice(("economy", "healthcare")))
        s = serialize_instance(w)
        fragment, status = parse_oracle_output(s)
        assert status == "clean"
        assert serialize_instance(fragment) == s

    fixtures = [s1_instance, s2_instance, fire_instance]
    passes = {
        strip_code_fences: corrupt_with_fences,
        remove_trailing_commas: corrupt_with_trailing_commas,
        quote_bare_keys: corrupt_with_bare_keys,
    }
    for corrupt in passes.values():
        for i in range(100):
            w = fixtures[i % 3] if i < 30 else random_instance(rng)
            fragment, status = parse_oracle_output(corrupt(serialize_instance(w)))
            assert fragment == w

    for _ in range(500):
        blob = bytes(rng.randrange(256) for _ in range(rng.randrange(0, 300)))
        fragment, status = parse_oracle_output(blob)
        assert status in ("clean", "repaired", "failed")
    report("parser fuzz (10k round trips + 300 repairs + byte fuzz)", started)


def test_metrics_oracle():
    """score() matches the brute-force oracle on 1000 random vectors to
    1e-9; Sensitivity >= accuracy; NLI/QA mappings exact."""
    started = time.perf_counter()
    rng = random.Random(113)
    for _ in range(1000):
        task, labels = rng.choice(
            [("rec_node", (0, 1, 2)), ("rec_edge", (0, 1, 2)), ("qr", (0, 1))]
        )
        n = rng.randint(1, 60)
        golds = [rng.choice(labels) for _ in range(n)]
        preds = [rng.choice(labels) for _ in range(n)]
        got = score([LabeledPair(task, g, p) for g, p in zip(golds, preds)])
        acc, wf1 = oracle_metrics(golds, preds, labels)
        assert abs(got.accuracy - acc) < 1e-9
        assert abs(got.weighted_f1 - wf1) < 1e-9
        if task != "qr":
            assert abs(got.sensitivity - oracle_sensitivity(golds, preds)) < 1e-9
            assert got.sensitivity >= got.accuracy - 1e-12

    assert map_nli("entailment") == 0
    assert map_nli("contradiction") == 1
    assert map_nli("neutral") == 2
    assert map_qa("acted on the provided descriptions") == 1
    assert map_qa(None) == 0
    report("metrics oracle (1000 vectors @ 1e-9, mappings exact)", started)


def test_remote_backend_contract(store, golden):
    """Stub server: retry on 5xx, no retry on 4xx, timeout is retriable;
    a stub replaying recorded responses drives the pipeline to the mock
    consensus."""
    started = time.perf_counter()
    situation = "crime_and_justice"
    doc = Document("cj-s1s2", situation, f"{S1_TEXT} {S2_TEXT}")

    # behavior: 500,500,200 succeeds; 401 does not retry; timeout retries
    with StubServer(status_script=[500, 500, 200]) as stub:
        cfg = BackendConfig(
            kind="remote", situation=situation, endpoint=stub.url, backoff_base=0.01
        )
        req = OracleRequest(S1_TEXT, situation, "actors", empty_instance(situation, 1))
        raw = MockBackend(store).stage_output(req)
        stub.recordings[payload_key(generate_payload(cfg, req))] = {"text": raw.text}
        assert "nodes" in call_remote(cfg, req).text
        assert len(stub.requests_seen) == 3
    with StubServer() as stub:
        cfg = BackendConfig(
            kind="remote", situation=situation, endpoint=stub.url, backoff_base=0.01
        )
        stub.status_script.extend([401])
        with pytest.raises(BackendConfigError):
            call_remote(cfg, OracleRequest(S1_TEXT, situation, "actors", empty_instance(situation, 1)))
        assert len(stub.requests_seen) == 1
    with StubServer(delay=0.3) as stub:
        cfg = BackendConfig(
            kind="remote",
            situation=situation,
            endpoint=stub.url,
            retries=1,
            timeout=0.05,
            backoff_base=0.01,
        )
        with pytest.raises(TransportError):
            call_remote(cfg, OracleRequest(S1_TEXT, situation, "actors", empty_instance(situation, 1)))

    # record the mock run, then drive the whole pipeline through the stub
    recordings: dict[str, dict] = {}
    remote_shape = BackendConfig(
        kind="remote",
        situation=situation,
        endpoint="http://placeholder.test",
        backoff_base=0.01,
    )
    mock_cfg = BackendConfig(kind="mock", situation=situation)
    recorded_run = run_document(
        doc,
        PipelineConfig(operator=mock_cfg, reconciler=mock_cfg, window=1),
        operator=RecordingOracle(MockBackend(store), remote_shape, recordings),
        classifier=recording_classifier(recordings),
    )
    with StubServer(recordings) as stub:
        remote_cfg = BackendConfig(
            kind="remote",
            situation=situation,
            endpoint=stub.url,
            backoff_base=0.01,
        )
        remote_run = run_document(
            doc, PipelineConfig(operator=remote_cfg, reconciler=remote_cfg, window=1)
        )
    assert serialize_instance(remote_run.final_consensus) == serialize_instance(
        recorded_run.final_consensus
    )
    got = {(n.actor.mention, n.role, n.state) for n in remote_run.final_consensus.nodes}
    assert got == {(n.actor.mention, n.role, n.state) for n in golden.nodes}
    report("remote-backend contract (retry/auth/timeout + replayed pipeline)", started)
