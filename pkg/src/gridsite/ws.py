"""Minimal RFC 6455 WebSocket transport, enough for message-per-frame JSON.

Covers the server side of the handshake plus text frames, fragmentation,
ping/pong, and close. A client mode (masked frames, client handshake) exists
for tests and simple tooling.
"""

from __future__ import annotations

import base64
import hashlib
import os
import struct

_GUID = "258EAFA5-E914-47DA-95CA-C5AB0DC85B11"


class WebSocketClosed(Exception):
    pass


def accept_key(client_key: str) -> str:
    digest = hashlib.sha1((client_key + _GUID).encode("ascii")).digest()
    return base64.b64encode(digest).decode("ascii")


class WebSocketConnection:
    """Blocking WebSocket over an accepted (or connected) socket."""

    def __init__(self, sock, initial: bytes = b"", client_side: bool = False):
        self._sock = sock
        self._buf = bytearray(initial)
        self._client_side = client_side

    # -- raw buffer helpers

    def _fill(self) -> None:
        chunk = self._sock.recv(65536)
        if not chunk:
            raise WebSocketClosed("socket closed")
        self._buf.extend(chunk)

    def _read_exact(self, n: int) -> bytes:
        while len(self._buf) < n:
            self._fill()
        out = bytes(self._buf[:n])
        del self._buf[:n]
        return out

    def _read_until(self, marker: bytes) -> bytes:
        while marker not in self._buf:
            if len(self._buf) > 65536:
                raise WebSocketClosed("handshake header too large")
            self._fill()
        idx = self._buf.index(marker) + len(marker)
        out = bytes(self._buf[:idx])
        del self._buf[:idx]
        return out

    # -- handshake

    def server_handshake(self) -> None:
        request = self._read_until(b"\r\n\r\n").decode("latin-1")
        headers = {}
        for line in request.split("\r\n")[1:]:
            if ":" in line:
                name, _, value = line.partition(":")
                headers[name.strip().lower()] = value.strip()
        key = headers.get("sec-websocket-key")
        if key is None or "websocket" not in headers.get("upgrade", "").lower():
            self._sock.sendall(b"HTTP/1.1 400 Bad Request\r\n\r\n")
            raise WebSocketClosed("not a websocket handshake")
        response = (
            "HTTP/1.1 101 Switching Protocols\r\n"
            "Upgrade: websocket\r\n"
            "Connection: Upgrade\r\n"
            f"Sec-WebSocket-Accept: {accept_key(key)}\r\n"
            "\r\n"
        )
        self._sock.sendall(response.encode("ascii"))

    def client_handshake(self, host: str, path: str = "/") -> None:
        key = base64.b64encode(os.urandom(16)).decode("ascii")
        request = (
            f"GET {path} HTTP/1.1\r\n"
            f"Host: {host}\r\n"
            "Upgrade: websocket\r\n"
            "Connection: Upgrade\r\n"
            f"Sec-WebSocket-Key: {key}\r\n"
            "Sec-WebSocket-Version: 13\r\n"
            "\r\n"
        )
        self._sock.sendall(request.encode("ascii"))
        response = self._read_until(b"\r\n\r\n").decode("latin-1")
        if "101" not in response.split("\r\n")[0]:
            raise WebSocketClosed(f"handshake refused: {response.splitlines()[0]}")

    # -- frames

    def _send_frame(self, opcode: int, payload: bytes) -> None:
        header = bytearray([0x80 | opcode])
        mask_bit = 0x80 if self._client_side else 0
        n = len(payload)
        if n < 126:
            header.append(mask_bit | n)
        elif n < 65536:
            header.append(mask_bit | 126)
            header += struct.pack(">H", n)
        else:
            header.append(mask_bit | 127)
            header += struct.pack(">Q", n)
        if self._client_side:
            mask = os.urandom(4)
            header += mask
            payload = bytes(b ^ mask[i % 4] for i, b in enumerate(payload))
        self._sock.sendall(bytes(header) + payload)

    def send_text(self, text: str) -> None:
        self._send_frame(0x1, text.encode("utf-8"))

    def _recv_frame(self):
        b1, b2 = self._read_exact(2)
        fin = bool(b1 & 0x80)
        opcode = b1 & 0x0F
        masked = bool(b2 & 0x80)
        length = b2 & 0x7F
        if length == 126:
            (length,) = struct.unpack(">H", self._read_exact(2))
        elif length == 127:
            (length,) = struct.unpack(">Q", self._read_exact(8))
        mask = self._read_exact(4) if masked else None
        payload = self._read_exact(length)
        if mask:
            payload = bytes(b ^ mask[i % 4] for i, b in enumerate(payload))
        return fin, opcode, payload

    def recv_text(self) -> str | None:
        """Next complete text message, or None once the peer has closed."""
        message = bytearray()
        while True:
            try:
                fin, opcode, payload = self._recv_frame()
            except (WebSocketClosed, ConnectionError, OSError):
                return None
            if opcode == 0x8:
                try:
                    self._send_frame(0x8, b"")
                except OSError:
                    pass
                return None
            if opcode == 0x9:
                self._send_frame(0xA, payload)
                continue
            if opcode == 0xA:
                continue
            if opcode in (0x0, 0x1, 0x2):
                message.extend(payload)
                if fin:
                    return message.decode("utf-8")

    def close(self) -> None:
        try:
            self._send_frame(0x8, b"")
        except OSError:
            pass
        try:
            self._sock.close()
        except OSError:
            pass
