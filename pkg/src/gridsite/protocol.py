"""Line-delimited JSON wire protocol.

Every message is one JSON object on one line with a "msg" discriminator.
Unknown fields are ignored; unknown message types and malformed lines are
answered with an error message, never dropped silently.
"""

from __future__ import annotations

import json

from . import events as ev
from .content import MediaKind
from .feedback import Utterance
from .grid import BracketType, Footprint


class ProtocolError(Exception):
    def __init__(self, code: str, message: str):
        self.code = code
        self.reason = message
        super().__init__(f"{code}: {message}")


def encode_line(obj: dict) -> str:
    """Compact, key-sorted single line; JSON escaping keeps newlines out."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def parse_line(line: str) -> dict:
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise ProtocolError("bad_message", f"not valid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise ProtocolError("bad_message", "expected a JSON object")
    return obj


def _field(obj: dict, key: str, types, what: str):
    if key not in obj:
        raise ProtocolError("bad_message", f"missing field {key!r}")
    value = obj[key]
    if isinstance(value, bool) and bool not in (types if isinstance(types, tuple) else (types,)):
        raise ProtocolError("bad_message", f"field {key!r} must be {what}")
    if not isinstance(value, types):
        raise ProtocolError("bad_message", f"field {key!r} must be {what}")
    return value


def _footprint(obj: dict) -> Footprint:
    try:
        return Footprint(
            row=_field(obj, "row", int, "an integer"),
            col=_field(obj, "col", int, "an integer"),
            row_span=_field(obj, "row_span", int, "an integer"),
            col_span=_field(obj, "col_span", int, "an integer"),
        )
    except ValueError as exc:
        raise ProtocolError("bad_message", str(exc)) from exc


def _bracket_type(obj: dict) -> BracketType:
    raw = _field(obj, "type", str, "a string")
    try:
        return BracketType(raw)
    except ValueError as exc:
        raise ProtocolError("bad_message", f"unknown bracket type {raw!r}") from exc


def _media_kind(obj: dict) -> MediaKind:
    raw = _field(obj, "kind", str, "a string")
    try:
        return MediaKind(raw)
    except ValueError as exc:
        raise ProtocolError("bad_message", f"unknown media kind {raw!r}") from exc


class EventTranslator:
    """Turns inbound wire messages into engine events.

    Owns the logical touch clock: a touch message becomes a touch-down and a
    touch-up whose timestamps are synthesized deterministically, so replaying
    the same message sequence always yields the same events.
    """

    def __init__(self):
        self._clock = 0

    def translate(self, obj: dict) -> list[ev.EngineEvent]:
        kind = obj.get("msg")
        if not isinstance(kind, str):
            raise ProtocolError("bad_message", "missing or non-string 'msg' field")
        if kind == "place":
            return [
                ev.Placed(
                    unit_id=_field(obj, "unit", str, "a string"),
                    bracket_type=_bracket_type(obj),
                    footprint=_footprint(obj),
                )
            ]
        if kind == "remove":
            return [ev.Removed(unit_id=_field(obj, "unit", str, "a string"))]
        if kind == "reshape":
            return [
                ev.Reshaped(
                    unit_id=_field(obj, "unit", str, "a string"),
                    footprint=_footprint(obj),
                )
            ]
        if kind == "touch":
            unit = _field(obj, "unit", str, "a string")
            duration = _field(obj, "duration_ms", int, "an integer")
            if duration < 0:
                raise ProtocolError("bad_message", "duration_ms must be non-negative")
            start = self._clock
            end = start + duration
            self._clock = end + 1
            return [ev.TouchDown(unit_id=unit, t_ms=start), ev.TouchUp(unit_id=unit, t_ms=end)]
        if kind == "command":
            return [ev.CommandText(text=_field(obj, "text", str, "a string"))]
        if kind == "media_selected":
            alt = obj.get("alt")
            if alt is not None and not isinstance(alt, str):
                raise ProtocolError("bad_message", "field 'alt' must be a string or null")
            return [
                ev.MediaSelected(
                    unit_id=_field(obj, "unit", str, "a string"),
                    kind=_media_kind(obj),
                    uri=_field(obj, "uri", str, "a string"),
                    width=_field(obj, "width", int, "an integer"),
                    height=_field(obj, "height", int, "an integer"),
                    alt_text=alt,
                )
            ]
        raise ProtocolError("unknown_message", f"unknown message type {kind!r}")


def utter_message(utt: Utterance) -> dict:
    return {
        "msg": "utter",
        "text": utt.text,
        "severity": utt.severity.value,
        "template_id": utt.template_id,
    }


def render_message(revision: int, html: str) -> dict:
    return {"msg": "render", "revision": revision, "html": html}


def error_message(code: str, message: str) -> dict:
    return {"msg": "error", "code": code, "message": message}


def effect_messages(effects, html_for_revision) -> list[dict]:
    """Wire form of engine effects. html_for_revision supplies the full page
    for render effects so late receivers can treat it as state replacement."""
    out = []
    for effect in effects:
        if isinstance(effect, ev.Vibrate):
            out.append({"msg": "vibrate", "unit": effect.unit_id, "pattern": effect.pattern})
        elif isinstance(effect, ev.Utter):
            out.append(utter_message(effect.utterance))
        elif isinstance(effect, ev.RenderUpdated):
            out.append(render_message(effect.revision, html_for_revision()))
        elif isinstance(effect, ev.OpenMediaPicker):
            out.append({"msg": "open_media_picker", "unit": effect.unit_id})
        else:
            raise TypeError(f"unknown effect: {effect!r}")
    return out
