"""Teacher session: determinism, caching, repair, and the remote wire."""

import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

import pytest

from gsw_datagen.schema import parse_instance_text
from gsw_datagen.teacher import (
    MockTransport,
    TeacherError,
    make_session,
)


class TestMockTeacher:
    def test_instance_deterministic(self, tmp_path):
        session = make_session("mock", str(tmp_path / "cache"))
        a, id_a = session.instance_for("economy", "Acme Corp met Beta Group.", 1)
        b, id_b = session.instance_for("economy", "Acme Corp met Beta Group.", 1)
        assert a == b and id_a == id_b

    def test_situation_anchor_recurs(self, tmp_path):
        session = make_session("mock", None)
        one, _ = session.instance_for("economy", "Acme Corp expanded.", 1)
        two, _ = session.instance_for("economy", "Acme Corp shrank.", 2)
        assert one["nodes"][0]["actor"] == "economy"
        assert two["nodes"][0]["actor"] == "economy"
        assert one["nodes"][0]["role"] == two["nodes"][0]["role"]

    def test_fenced_responses_are_repaired(self):
        transport = MockTransport()
        fenced = 0
        for i in range(40):
            payload = transport.payload(
                __import__("gsw_datagen.teacher", fromlist=["INSTANCE_PROMPT"]).INSTANCE_PROMPT,
                f"situation: economy\nsegment: 1\ncontext: Acme Corp case {i}.",
            )
            text = transport.complete(payload)
            if text.startswith("```"):
                fenced += 1
            assert parse_instance_text(text) is not None
        assert fenced > 0  # the repair path is actually exercised

    def test_rec_and_qr_labels(self, tmp_path):
        session = make_session("mock", None)
        old = {"actor": "acme corp", "role": "sponsor", "state": "active"}
        same = dict(old)
        restated = {"actor": "acme corp", "role": "sponsor", "state": "stalled"}
        other = {"actor": "acme corp", "role": "venue", "state": "active"}
        assert session.rec_label("rec_node", old, same, "ctx")[0] == 0
        assert session.rec_label("rec_node", old, restated, "ctx")[0] == 1
        assert session.rec_label("rec_node", old, other, "ctx")[0] == 2
        label, _ = session.qr_label(
            "what happens to acme corp next?", "acme corp sponsor stalled"
        )
        assert label == 1
        label, _ = session.qr_label("why was the filing postponed?", "acme corp sponsor")
        assert label == 0

    def test_cache_only_replays_without_transport(self, tmp_path):
        cache = str(tmp_path / "cache")
        live = make_session("mock", cache)
        instance, rid = live.instance_for("economy", "Acme Corp met Beta Group.", 1)

        class DeadTransport(MockTransport):
            def complete(self, payload):
                raise AssertionError("cache-only replay must not call the transport")

        from gsw_datagen.teacher import ResponseCache, TeacherSession

        replay = TeacherSession(DeadTransport(), ResponseCache(cache), cache_only=True)
        again, rid2 = replay.instance_for("economy", "Acme Corp met Beta Group.", 1)
        assert again == instance and rid2 == rid

    def test_cache_only_miss_raises(self, tmp_path):
        session = make_session("mock", str(tmp_path / "cache"), cache_only=True)
        with pytest.raises(TeacherError):
            session.instance_for("economy", "Never seen before.", 1)


class ChatStub:
    """Chat-completions stub that answers with the mock transport's logic."""

    def __init__(self, fail_first: int = 0):
        self.fail_first = fail_first
        self.hits = 0
        stub = self

        class Handler(BaseHTTPRequestHandler):
            def log_message(self, *args):
                pass

            def do_POST(self):
                length = int(self.headers.get("Content-Length", 0))
                payload = json.loads(self.rfile.read(length))
                stub.hits += 1
                if stub.hits <= stub.fail_first:
                    self.send_response(503)
                    self.end_headers()
                    return
                content = MockTransport().complete(payload)
                body = json.dumps(
                    {"choices": [{"message": {"content": content}}]}
                ).encode("utf-8")
                self.send_response(200)
                self.send_header("Content-Type", "application/json")
                self.send_header("Content-Length", str(len(body)))
                self.end_headers()
                self.wfile.write(body)

        self.server = ThreadingHTTPServer(("127.0.0.1", 0), Handler)
        self.thread = threading.Thread(target=self.server.serve_forever, daemon=True)

    @property
    def url(self):
        host, port = self.server.server_address
        return f"http://{host}:{port}"

    def __enter__(self):
        self.thread.start()
        return self

    def __exit__(self, *exc):
        self.server.shutdown()
        self.server.server_close()


class TestRemoteTeacher:
    def test_remote_instance_and_cache_replay(self, tmp_path):
        cache = str(tmp_path / "cache")
        with ChatStub() as stub:
            session = make_session("remote", cache, endpoint=stub.url, model="mock-teacher")
            live, rid = session.instance_for("economy", "Acme Corp met Beta Group.", 1)
            assert live["nodes"]
            hits = stub.hits
            # same request again: served from cache, no extra hit
            cached, rid2 = session.instance_for("economy", "Acme Corp met Beta Group.", 1)
            assert cached == live and rid2 == rid
            assert stub.hits == hits
        # server gone: cache-only replay still works
        replay = make_session("remote", cache, cache_only=True, model="mock-teacher")
        again, _ = replay.instance_for("economy", "Acme Corp met Beta Group.", 1)
        assert again == live

    def test_remote_failure_raises_teacher_error(self, tmp_path):
        with ChatStub(fail_first=99) as stub:
            session = make_session(
                "remote", str(tmp_path / "c"), endpoint=stub.url, model="mock-teacher"
            )
            with pytest.raises(TeacherError):
                session.instance_for("economy", "Acme Corp met Beta Group.", 1)

    def test_remote_requires_endpoint_unless_cache_only(self, tmp_path):
        with pytest.raises(TeacherError):
            make_session("remote", str(tmp_path / "c"))
