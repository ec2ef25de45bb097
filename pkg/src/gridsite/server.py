"""The network boundary: serves one engine to any number of clients.

Connections speak either newline-delimited JSON over a plain stream or the
same messages as WebSocket text frames (sniffed from the first bytes, so both
share one port). Connection handlers only enqueue; a single engine thread
applies events in arrival order, which is what makes the logged order
authoritative and replayable.
"""

from __future__ import annotations

import queue
import socket
import threading

from . import protocol
from .render import render_html
from .project import write_project
from .session import Session
from .ws import WebSocketClosed, WebSocketConnection


class _Client:
    _ids = iter(range(1, 1 << 62))

    def __init__(self, transport: str, sock, wsconn: WebSocketConnection | None = None):
        self.id = next(self._ids)
        self.transport = transport
        self.sock = sock
        self.wsconn = wsconn
        self.lock = threading.Lock()
        self.dead = False

    def send_json(self, obj: dict) -> None:
        line = protocol.encode_line(obj)
        with self.lock:
            if self.dead:
                return
            try:
                if self.transport == "ws":
                    self.wsconn.send_text(line)
                else:
                    self.sock.sendall(line.encode("utf-8") + b"\n")
            except OSError:
                self.dead = True

    def close(self) -> None:
        self.dead = True
        try:
            self.sock.close()
        except OSError:
            pass


class EngineServer:
    """Bind, accept, and fan engine effects out to every connected client."""

    def __init__(self, session: Session, host: str = "127.0.0.1", port: int = 0,
                 project_path=None):
        self.session = session
        self.project_path = project_path
        self.message_log: list[str] = []
        self._translator = protocol.EventTranslator()
        self._queue: "queue.Queue[tuple]" = queue.Queue()
        self._clients: dict[int, _Client] = {}
        self._clients_lock = threading.Lock()
        self._threads: list[threading.Thread] = []
        self._stopping = threading.Event()
        # Bind failures surface here, at startup, not in a background thread.
        self._listener = socket.create_server((host, port))
        self._listener.listen(16)
        # A finite accept timeout lets the accept loop notice shutdown.
        self._listener.settimeout(0.25)

    @property
    def address(self) -> tuple[str, int]:
        return self._listener.getsockname()[:2]

    # ------------------------------------------------------------ lifecycle

    def start(self) -> None:
        for target in (self._accept_loop, self._engine_loop):
            t = threading.Thread(target=target, daemon=True)
            t.start()
            self._threads.append(t)

    def serve_forever(self) -> None:
        self.start()
        try:
            self._stopping.wait()
        except KeyboardInterrupt:
            pass
        finally:
            self.stop()

    def stop(self) -> None:
        if self._stopping.is_set():
            return
        self._stopping.set()
        try:
            self._listener.close()
        except OSError:
            pass
        self._queue.put(("stop",))
        with self._clients_lock:
            clients = list(self._clients.values())
        for client in clients:
            client.close()
        for t in self._threads:
            t.join(timeout=5)

    # ------------------------------------------------------------ accepting

    def _accept_loop(self) -> None:
        while not self._stopping.is_set():
            try:
                sock, _addr = self._listener.accept()
            except TimeoutError:
                continue
            except OSError:
                return
            sock.settimeout(None)
            threading.Thread(target=self._open_client, args=(sock,), daemon=True).start()

    def _sniff(self, sock) -> bytes:
        """Peek the first bytes to pick the transport. WebSocket clients send
        their handshake immediately; a connection that stays quiet is a plain
        stream client waiting for the joining snapshot."""
        head = b""
        sock.settimeout(0.35)
        try:
            while len(head) < 4 and head == b"GET "[: len(head)]:
                more = sock.recv(4, socket.MSG_PEEK)
                if not more:
                    break
                head = more
        except TimeoutError:
            pass
        finally:
            sock.settimeout(None)
        return head

    def _open_client(self, sock) -> None:
        try:
            head = self._sniff(sock)
        except OSError:
            sock.close()
            return
        if head.startswith(b"GET "):
            wsconn = WebSocketConnection(sock)
            try:
                wsconn.server_handshake()
            except (WebSocketClosed, OSError):
                sock.close()
                return
            client = _Client("ws", sock, wsconn)
        else:
            client = _Client("ndjson", sock)
        with self._clients_lock:
            self._clients[client.id] = client
        self._queue.put(("join", client))
        self._read_loop(client)

    def _read_loop(self, client: _Client) -> None:
        try:
            if client.transport == "ws":
                while True:
                    text = client.wsconn.recv_text()
                    if text is None:
                        break
                    self._queue.put(("line", client, text))
            else:
                reader = client.sock.makefile("r", encoding="utf-8", errors="replace")
                for raw in reader:
                    line = raw.rstrip("\r\n")
                    if line:
                        self._queue.put(("line", client, line))
        except OSError:
            pass
        finally:
            self._queue.put(("leave", client))

    # --------------------------------------------------------------- engine

    def _current_render_message(self) -> dict:
        page = self.session.render_page()
        return protocol.render_message(page.revision, page.html)

    def _engine_loop(self) -> None:
        while True:
            item = self._queue.get()
            kind = item[0]
            if kind == "stop":
                return
            if kind == "join":
                # Late joiners immediately see the current page.
                item[1].send_json(self._current_render_message())
                continue
            if kind == "leave":
                client = item[1]
                client.close()
                with self._clients_lock:
                    self._clients.pop(client.id, None)
                continue
            _, client, line = item
            self._handle_line(client, line)

    def _handle_line(self, client: _Client, line: str) -> None:
        try:
            obj = protocol.parse_line(line)
            events = self._translator.translate(obj)
        except protocol.ProtocolError as exc:
            client.send_json(protocol.error_message(exc.code, exc.reason))
            return
        self.message_log.append(line)
        before = self.session.state.revision
        for event in events:
            effects = self.session.dispatch(event)
            state = self.session.state
            messages = protocol.effect_messages(
                effects, lambda: render_html(state.board, state.content_memory)
            )
            for message in messages:
                self._broadcast(message)
        if self.project_path is not None and self.session.state.revision != before:
            write_project(self.session.state, self.project_path)

    def _broadcast(self, message: dict) -> None:
        with self._clients_lock:
            clients = list(self._clients.values())
        for client in clients:
            client.send_json(message)


def serve(session: Session, host: str, port: int, project_path=None) -> EngineServer:
    """Start a server and return it; callers own the blocking/stop policy."""
    server = EngineServer(session, host, port, project_path)
    server.start()
    return server
