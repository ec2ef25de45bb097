"""Wire protocol and server: translation, error replies, broadcast, ordering."""

import json
import socket
import time

import pytest

from gridsite.events import (
    CommandText,
    MediaSelected,
    Placed,
    Removed,
    Reshaped,
    TouchDown,
    TouchUp,
)
from gridsite.content import MediaKind
from gridsite.grid import BracketType, Footprint, GridConfig
from gridsite.protocol import EventTranslator, ProtocolError, encode_line, parse_line
from gridsite.replay import run_script
from gridsite.server import EngineServer
from gridsite.session import Session
from gridsite.ws import WebSocketConnection


PLACE_U1 = {
    "msg": "place", "unit": "u1", "type": "text",
    "row": 1, "col": 3, "row_span": 2, "col_span": 8,
}


class TestTranslator:
    def test_place(self):
        events = EventTranslator().translate(PLACE_U1)
        assert events == [Placed("u1", BracketType.TEXT, Footprint(1, 3, 2, 8))]

    def test_remove_reshape_command(self):
        t = EventTranslator()
        assert t.translate({"msg": "remove", "unit": "u1"}) == [Removed("u1")]
        assert t.translate(
            {"msg": "reshape", "unit": "u1", "row": 2, "col": 2, "row_span": 2, "col_span": 2}
        ) == [Reshaped("u1", Footprint(2, 2, 2, 2))]
        assert t.translate({"msg": "command", "text": "hey grid check"}) == [
            CommandText("hey grid check")
        ]

    def test_touch_becomes_a_down_up_pair_with_monotonic_times(self):
        t = EventTranslator()
        first = t.translate({"msg": "touch", "unit": "u1", "duration_ms": 500})
        second = t.translate({"msg": "touch", "unit": "u2", "duration_ms": 3200})
        assert first == [TouchDown("u1", 0), TouchUp("u1", 500)]
        assert second[0].t_ms > first[1].t_ms
        assert second[1].t_ms - second[0].t_ms == 3200

    def test_touch_translation_is_deterministic_per_translator(self):
        msgs = [{"msg": "touch", "unit": "u", "duration_ms": d} for d in (100, 3200, 50)]
        runs = []
        for _ in range(2):
            t = EventTranslator()
            runs.append([t.translate(m) for m in msgs])
        assert runs[0] == runs[1]

    def test_media_selected(self):
        msg = {
            "msg": "media_selected", "unit": "pic", "kind": "image",
            "uri": "a.png", "width": 600, "height": 900, "alt": "pier",
        }
        assert EventTranslator().translate(msg) == [
            MediaSelected("pic", MediaKind.IMAGE, "a.png", 600, 900, "pier")
        ]

    def test_unknown_message_type(self):
        with pytest.raises(ProtocolError) as exc_info:
            EventTranslator().translate({"msg": "reboot"})
        assert exc_info.value.code == "unknown_message"

    def test_missing_and_mistyped_fields(self):
        t = EventTranslator()
        with pytest.raises(ProtocolError):
            t.translate({"msg": "place", "unit": "u1", "type": "text", "row": 1, "col": 3, "row_span": 2})
        with pytest.raises(ProtocolError):
            t.translate({"msg": "remove", "unit": 7})
        with pytest.raises(ProtocolError):
            t.translate({"msg": "touch", "unit": "u1", "duration_ms": True})
        with pytest.raises(ProtocolError):
            t.translate({"msg": "touch", "unit": "u1", "duration_ms": -4})
        with pytest.raises(ProtocolError):
            t.translate({"msg": "place", "unit": "u1", "type": "poster",
                         "row": 1, "col": 1, "row_span": 2, "col_span": 2})

    def test_unknown_fields_are_ignored(self):
        msg = dict(PLACE_U1, firmware="9.1", checksum=12)
        assert EventTranslator().translate(msg) == [
            Placed("u1", BracketType.TEXT, Footprint(1, 3, 2, 8))
        ]

    def test_parse_line_rejects_non_objects(self):
        with pytest.raises(ProtocolError):
            parse_line("[1, 2]")
        with pytest.raises(ProtocolError):
            parse_line("{broken")

    def test_encode_line_is_one_line(self):
        line = encode_line({"msg": "utter", "text": "two\nlines"})
        assert "\n" not in line
        assert json.loads(line)["text"] == "two\nlines"


class NdjsonClient:
    def __init__(self, host, port, timeout=5.0):
        self.sock = socket.create_connection((host, port), timeout=timeout)
        self.reader = self.sock.makefile("r", encoding="utf-8")

    def send(self, obj):
        self.sock.sendall((encode_line(obj) + "\n").encode("utf-8"))

    def send_raw(self, line):
        self.sock.sendall((line + "\n").encode("utf-8"))

    def recv(self):
        line = self.reader.readline()
        if not line:
            raise AssertionError("server closed the connection")
        return json.loads(line)

    def recv_until(self, kind):
        for _ in range(50):
            msg = self.recv()
            if msg["msg"] == kind:
                return msg
        raise AssertionError(f"no {kind} message received")

    def drain(self, count):
        return [self.recv() for _ in range(count)]

    def close(self):
        self.sock.close()


@pytest.fixture
def server():
    srv = EngineServer(Session(GridConfig()), host="127.0.0.1", port=0)
    srv.start()
    yield srv
    srv.stop()


def connect(server) -> NdjsonClient:
    host, port = server.address
    client = NdjsonClient(host, port)
    first = client.recv()
    assert first["msg"] == "render"  # joining snapshot
    return client


class TestServer:
    def test_place_broadcasts_utter_then_render(self, server):
        client = connect(server)
        client.send(PLACE_U1)
        utter = client.recv()
        render = client.recv()
        assert utter["msg"] == "utter"
        assert utter["text"].startswith("Text bracket detected")
        assert render["msg"] == "render"
        assert render["revision"] == 1
        assert 'data-unit="u1"' in render["html"]
        client.close()

    def test_malformed_line_answers_error_and_leaves_state_unchanged(self, server):
        client = connect(server)
        before = server.session.state
        client.send_raw("{this is not json")
        reply = client.recv()
        assert reply["msg"] == "error"
        assert reply["code"] == "bad_message"
        client.send({"msg": "warp", "unit": "u1"})
        reply = client.recv()
        assert reply["msg"] == "error"
        assert reply["code"] == "unknown_message"
        assert server.session.state == before
        assert server.message_log == []
        client.close()

    def test_error_goes_only_to_the_sender(self, server):
        a = connect(server)
        b = connect(server)
        a.send_raw("not json at all")
        assert a.recv()["msg"] == "error"
        b.send(PLACE_U1)  # b still sees normal traffic, no stray error first
        assert b.recv()["msg"] == "utter"
        a.close()
        b.close()

    def test_late_joiner_immediately_receives_current_render(self, server):
        first = connect(server)
        first.send(PLACE_U1)
        first.drain(2)
        host, port = server.address
        late = NdjsonClient(host, port)
        snapshot = late.recv()
        assert snapshot["msg"] == "render"
        assert snapshot["revision"] == 1
        assert 'data-unit="u1"' in snapshot["html"]
        first.close()
        late.close()

    def test_every_valid_message_produces_a_reply_to_its_sender(self, server):
        client = connect(server)
        probes = [
            PLACE_U1,
            {"msg": "touch", "unit": "u1", "duration_ms": 400},
            {"msg": "command", "text": "hey grid check"},
            {"msg": "command", "text": "mumbling to myself"},
            {"msg": "reshape", "unit": "u1", "row": 1, "col": 3, "row_span": 2, "col_span": 9},
            {"msg": "remove", "unit": "u1"},
            {"msg": "remove", "unit": "u1"},
            {"msg": "media_selected", "unit": "u1", "kind": "image",
             "uri": "x.png", "width": 10, "height": 10},
        ]
        for probe in probes:
            client.send(probe)
            client.recv()  # raises on silence
        client.close()

    def test_interleaved_clients_replay_to_identical_state(self, server):
        a = connect(server)
        b = connect(server)
        a.send(PLACE_U1)
        b.send({"msg": "place", "unit": "u2", "type": "image",
                "row": 5, "col": 1, "row_span": 2, "col_span": 2})
        a.send({"msg": "touch", "unit": "u1", "duration_ms": 3100})
        b.send({"msg": "command", "text": "hey grid check"})
        a.send({"msg": "remove", "unit": "u2"})
        b.recv_until("render")
        a.recv_until("utter")
        # Wait for the final removal to land in the engine.
        deadline = time.time() + 5
        while server.session.state.board.has("u2") and time.time() < deadline:
            time.sleep(0.01)
        assert not server.session.state.board.has("u2")
        logged = "\n".join(server.message_log)
        replayed = run_script(logged, config=GridConfig())
        assert replayed.session.state.board == server.session.state.board
        assert replayed.session.state.content_memory == server.session.state.content_memory
        assert replayed.session.state.transcript == server.session.state.transcript
        a.close()
        b.close()

    def test_websocket_client_speaks_the_same_protocol(self, server):
        host, port = server.address
        sock = socket.create_connection((host, port), timeout=5)
        ws = WebSocketConnection(sock, client_side=True)
        ws.client_handshake(f"{host}:{port}")
        snapshot = json.loads(ws.recv_text())
        assert snapshot["msg"] == "render"
        ws.send_text(encode_line(PLACE_U1))
        utter = json.loads(ws.recv_text())
        render = json.loads(ws.recv_text())
        assert utter["msg"] == "utter"
        assert render["revision"] == 1
        ws.close()

    def test_websocket_and_ndjson_clients_share_broadcasts(self, server):
        plain = connect(server)
        host, port = server.address
        sock = socket.create_connection((host, port), timeout=5)
        ws = WebSocketConnection(sock, client_side=True)
        ws.client_handshake(f"{host}:{port}")
        json.loads(ws.recv_text())
        plain.send(PLACE_U1)
        assert json.loads(ws.recv_text())["msg"] == "utter"
        assert plain.recv()["msg"] == "utter"
        ws.close()
        plain.close()


class TestServerProject(object):
    def test_project_file_is_kept_as_a_loadable_snapshot(self, tmp_path):
        from gridsite.project import read_project

        target = tmp_path / "live.gridsite.json"
        srv = EngineServer(Session(GridConfig()), host="127.0.0.1", port=0, project_path=target)
        srv.start()
        try:
            client = connect(srv)
            client.send(PLACE_U1)
            client.drain(2)
            deadline = time.time() + 5
            while not target.exists() and time.time() < deadline:
                time.sleep(0.01)
            state = read_project(target)
            assert state.board.has("u1")
            client.close()
        finally:
            srv.stop()

    def test_bind_failure_raises_at_startup(self):
        taken = socket.socket()
        taken.bind(("127.0.0.1", 0))
        taken.listen(1)
        port = taken.getsockname()[1]
        with pytest.raises(OSError):
            EngineServer(Session(), host="127.0.0.1", port=port)
        taken.close()
