"""Project-file persistence: canonical JSON for whole sessions.

Saves are byte-stable (sorted keys, fixed indentation) so identical states
produce identical files. Loading validates the document shape and reports
violations with a JSON-pointer-style path; board reconstruction goes through
the normal placement checks, so an overlapping or out-of-bounds file can
never produce an invalid in-memory board.
"""

from __future__ import annotations

import json
import os
import tempfile

from . import events as ev
from .content import ElementContent, EmptyContent, MediaContent, MediaKind, TextContent
from .feedback import Severity, Utterance
from .grid import Board, BracketType, Footprint, GridConfig, GridError, place_bracket
from .session import AwaitingMedia, Dictating, Idle, Mode, SessionState

FORMAT_VERSION = 1
PROJECT_SUFFIX = ".gridsite.json"


class UnknownVersion(Exception):
    pass


class SchemaViolation(Exception):
    def __init__(self, path: str, message: str):
        self.path = path
        self.reason = message
        super().__init__(f"{path}: {message}")


def _expect(value, types, path, what):
    if isinstance(value, bool) and bool not in (types if isinstance(types, tuple) else (types,)):
        raise SchemaViolation(path, f"expected {what}, got a boolean")
    if not isinstance(value, types):
        raise SchemaViolation(path, f"expected {what}, got {type(value).__name__}")
    return value


def _get(obj: dict, key: str, types, path: str, what: str):
    if key not in obj:
        raise SchemaViolation(f"{path}/{key}", f"missing required {what}")
    return _expect(obj[key], types, f"{path}/{key}", what)


# ---------------------------------------------------------------- to JSON


def config_to_json(cfg: GridConfig) -> dict:
    return {
        "rows": cfg.rows,
        "cols": cfg.cols,
        "cell_pitch_mm": cfg.cell_pitch_mm,
        "min_span": cfg.min_span,
        "long_press_ms": cfg.long_press_ms,
        "text_density": cfg.text_density,
        "recommended_ratio": cfg.recommended_ratio,
        "underflow_ratio": cfg.underflow_ratio,
        "wake_word": cfg.wake_word,
        "cell_px": cfg.cell_px,
    }


def footprint_to_json(fp: Footprint) -> dict:
    return {"row": fp.row, "col": fp.col, "row_span": fp.row_span, "col_span": fp.col_span}


def content_to_json(content: ElementContent) -> dict:
    if isinstance(content, TextContent):
        return {"kind": "text", "is_title": content.is_title, "lines": list(content.lines)}
    if isinstance(content, MediaContent):
        return {
            "kind": content.kind.value,
            "uri": content.uri,
            "width": content.intrinsic_width,
            "height": content.intrinsic_height,
            "alt": content.alt_text,
        }
    return {"kind": "empty"}


def utterance_to_json(utt: Utterance) -> dict:
    return {"text": utt.text, "severity": utt.severity.value, "template_id": utt.template_id}


def event_to_json(event: ev.EngineEvent) -> dict:
    if isinstance(event, ev.Placed):
        return {
            "kind": "placed",
            "unit": event.unit_id,
            "type": event.bracket_type.value,
            "footprint": footprint_to_json(event.footprint),
        }
    if isinstance(event, ev.Removed):
        return {"kind": "removed", "unit": event.unit_id}
    if isinstance(event, ev.Reshaped):
        return {
            "kind": "reshaped",
            "unit": event.unit_id,
            "footprint": footprint_to_json(event.footprint),
        }
    if isinstance(event, ev.TouchDown):
        return {"kind": "touch_down", "unit": event.unit_id, "t_ms": event.t_ms}
    if isinstance(event, ev.TouchUp):
        return {"kind": "touch_up", "unit": event.unit_id, "t_ms": event.t_ms}
    if isinstance(event, ev.CommandText):
        return {"kind": "command", "text": event.text}
    if isinstance(event, ev.MediaSelected):
        return {
            "kind": "media_selected",
            "unit": event.unit_id,
            "media": {
                "kind": event.kind.value,
                "uri": event.uri,
                "width": event.width,
                "height": event.height,
                "alt": event.alt_text,
            },
        }
    raise TypeError(f"unknown event: {event!r}")


def mode_to_json(mode: Mode) -> dict:
    if isinstance(mode, Dictating):
        return {
            "state": "dictating",
            "target": mode.target,
            "as_title": mode.as_title,
            "lines": list(mode.lines),
        }
    if isinstance(mode, AwaitingMedia):
        return {"state": "awaiting_media", "target": mode.target}
    return {"state": "idle"}


def project_document(state: SessionState) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "grid": config_to_json(state.config),
        "brackets": [
            {
                "unit_id": b.unit_id,
                "type": b.bracket_type.value,
                "footprint": footprint_to_json(b.footprint),
            }
            for b in state.board.brackets
        ],
        "content_memory": {
            unit: content_to_json(content)
            for unit, content in sorted(state.content_memory.items())
        },
        "transcript": [
            {
                "event": event_to_json(event),
                "utterances": [utterance_to_json(u) for u in utterances],
            }
            for event, utterances in state.log
        ],
        "session": {
            "selected": state.selected,
            "mode": mode_to_json(state.mode),
            "revision": state.revision,
            "pending_touch": list(state.pending_touch) if state.pending_touch else None,
        },
    }


def save_project(state: SessionState) -> bytes:
    doc = project_document(state)
    text = json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    return text.encode("utf-8")


def write_project(state: SessionState, path) -> None:
    """Atomic write: the file on disk is always a complete, loadable snapshot."""
    path = os.fspath(path)
    directory = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".gridsite-", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(save_project(state))
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# -------------------------------------------------------------- from JSON


def config_from_json(obj, path="/grid") -> GridConfig:
    _expect(obj, dict, path, "an object")
    kwargs = {
        "rows": _get(obj, "rows", int, path, "an integer"),
        "cols": _get(obj, "cols", int, path, "an integer"),
        "cell_pitch_mm": float(_get(obj, "cell_pitch_mm", (int, float), path, "a number")),
        "min_span": _get(obj, "min_span", int, path, "an integer"),
        "long_press_ms": _get(obj, "long_press_ms", int, path, "an integer"),
        "text_density": float(_get(obj, "text_density", (int, float), path, "a number")),
        "recommended_ratio": float(_get(obj, "recommended_ratio", (int, float), path, "a number")),
        "underflow_ratio": float(_get(obj, "underflow_ratio", (int, float), path, "a number")),
        "wake_word": _get(obj, "wake_word", str, path, "a string"),
        "cell_px": _get(obj, "cell_px", int, path, "an integer"),
    }
    try:
        return GridConfig(**kwargs)
    except ValueError as exc:
        raise SchemaViolation(path, str(exc)) from exc


def footprint_from_json(obj, path) -> Footprint:
    _expect(obj, dict, path, "an object")
    try:
        return Footprint(
            row=_get(obj, "row", int, path, "an integer"),
            col=_get(obj, "col", int, path, "an integer"),
            row_span=_get(obj, "row_span", int, path, "an integer"),
            col_span=_get(obj, "col_span", int, path, "an integer"),
        )
    except ValueError as exc:
        raise SchemaViolation(path, str(exc)) from exc


def _bracket_type(value, path) -> BracketType:
    try:
        return BracketType(_expect(value, str, path, "a bracket type"))
    except ValueError as exc:
        raise SchemaViolation(path, f"unknown bracket type {value!r}") from exc


def _media_kind(value, path) -> MediaKind:
    try:
        return MediaKind(_expect(value, str, path, "a media kind"))
    except ValueError as exc:
        raise SchemaViolation(path, f"unknown media kind {value!r}") from exc


def content_from_json(obj, path) -> ElementContent:
    _expect(obj, dict, path, "an object")
    kind = _get(obj, "kind", str, path, "a content kind")
    if kind == "empty":
        return EmptyContent()
    if kind == "text":
        lines = _get(obj, "lines", list, path, "a list of strings")
        for i, line in enumerate(lines):
            _expect(line, str, f"{path}/lines/{i}", "a string")
        try:
            return TextContent(
                lines=tuple(lines),
                is_title=_get(obj, "is_title", bool, path, "a boolean"),
            )
        except ValueError as exc:
            raise SchemaViolation(path, str(exc)) from exc
    if kind in ("image", "video"):
        alt = obj.get("alt")
        if alt is not None:
            _expect(alt, str, f"{path}/alt", "a string or null")
        try:
            return MediaContent(
                kind=MediaKind(kind),
                uri=_get(obj, "uri", str, path, "a string"),
                intrinsic_width=_get(obj, "width", int, path, "an integer"),
                intrinsic_height=_get(obj, "height", int, path, "an integer"),
                alt_text=alt,
            )
        except ValueError as exc:
            raise SchemaViolation(path, str(exc)) from exc
    raise SchemaViolation(f"{path}/kind", f"unknown content kind {kind!r}")


def utterance_from_json(obj, path) -> Utterance:
    _expect(obj, dict, path, "an object")
    severity = _get(obj, "severity", str, path, "a severity")
    try:
        sev = Severity(severity)
    except ValueError as exc:
        raise SchemaViolation(f"{path}/severity", f"unknown severity {severity!r}") from exc
    return Utterance(
        text=_get(obj, "text", str, path, "a string"),
        severity=sev,
        template_id=_get(obj, "template_id", str, path, "a string"),
    )


def event_from_json(obj, path) -> ev.EngineEvent:
    _expect(obj, dict, path, "an object")
    kind = _get(obj, "kind", str, path, "an event kind")
    if kind == "placed":
        return ev.Placed(
            unit_id=_get(obj, "unit", str, path, "a string"),
            bracket_type=_bracket_type(obj.get("type"), f"{path}/type"),
            footprint=footprint_from_json(_get(obj, "footprint", dict, path, "an object"), f"{path}/footprint"),
        )
    if kind == "removed":
        return ev.Removed(unit_id=_get(obj, "unit", str, path, "a string"))
    if kind == "reshaped":
        return ev.Reshaped(
            unit_id=_get(obj, "unit", str, path, "a string"),
            footprint=footprint_from_json(_get(obj, "footprint", dict, path, "an object"), f"{path}/footprint"),
        )
    if kind == "touch_down":
        return ev.TouchDown(
            unit_id=_get(obj, "unit", str, path, "a string"),
            t_ms=_get(obj, "t_ms", int, path, "an integer"),
        )
    if kind == "touch_up":
        return ev.TouchUp(
            unit_id=_get(obj, "unit", str, path, "a string"),
            t_ms=_get(obj, "t_ms", int, path, "an integer"),
        )
    if kind == "command":
        return ev.CommandText(text=_get(obj, "text", str, path, "a string"))
    if kind == "media_selected":
        media = _get(obj, "media", dict, path, "an object")
        mpath = f"{path}/media"
        alt = media.get("alt")
        if alt is not None:
            _expect(alt, str, f"{mpath}/alt", "a string or null")
        return ev.MediaSelected(
            unit_id=_get(obj, "unit", str, path, "a string"),
            kind=_media_kind(media.get("kind"), f"{mpath}/kind"),
            uri=_get(media, "uri", str, mpath, "a string"),
            width=_get(media, "width", int, mpath, "an integer"),
            height=_get(media, "height", int, mpath, "an integer"),
            alt_text=alt,
        )
    raise SchemaViolation(f"{path}/kind", f"unknown event kind {kind!r}")


def mode_from_json(obj, path) -> Mode:
    _expect(obj, dict, path, "an object")
    state = _get(obj, "state", str, path, "a mode name")
    if state == "idle":
        return Idle()
    if state == "dictating":
        lines = _get(obj, "lines", list, path, "a list of strings")
        for i, line in enumerate(lines):
            _expect(line, str, f"{path}/lines/{i}", "a string")
        return Dictating(
            target=_get(obj, "target", str, path, "a string"),
            as_title=_get(obj, "as_title", bool, path, "a boolean"),
            lines=tuple(lines),
        )
    if state == "awaiting_media":
        return AwaitingMedia(target=_get(obj, "target", str, path, "a string"))
    raise SchemaViolation(f"{path}/state", f"unknown mode {state!r}")


def load_project(data) -> SessionState:
    """Parse and validate project bytes back into an equal SessionState."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise SchemaViolation("/", f"not valid JSON: {exc}") from exc
    _expect(doc, dict, "/", "an object")
    version = _get(doc, "format_version", int, "", "an integer")
    if version != FORMAT_VERSION:
        raise UnknownVersion(f"format_version {version} is not supported (expected {FORMAT_VERSION})")

    config = config_from_json(_get(doc, "grid", dict, "", "an object"))
    board = Board.empty(config)
    bracket_list = _get(doc, "brackets", list, "", "a list")
    for i, entry in enumerate(bracket_list):
        path = f"/brackets/{i}"
        _expect(entry, dict, path, "an object")
        unit = _get(entry, "unit_id", str, path, "a string")
        btype = _bracket_type(entry.get("type"), f"{path}/type")
        fp = footprint_from_json(_get(entry, "footprint", dict, path, "an object"), f"{path}/footprint")
        try:
            board = place_bracket(board, unit, btype, fp)
        except GridError as exc:
            raise SchemaViolation(path, f"bracket {unit!r}: {exc}") from exc

    memory_obj = _get(doc, "content_memory", dict, "", "an object")
    memory: dict[str, ElementContent] = {}
    for unit, value in memory_obj.items():
        memory[unit] = content_from_json(value, f"/content_memory/{unit}")

    log_entries = []
    transcript = _get(doc, "transcript", list, "", "a list")
    for i, entry in enumerate(transcript):
        path = f"/transcript/{i}"
        _expect(entry, dict, path, "an object")
        event = event_from_json(_get(entry, "event", dict, path, "an object"), f"{path}/event")
        utt_list = _get(entry, "utterances", list, path, "a list")
        utterances = tuple(
            utterance_from_json(u, f"{path}/utterances/{j}") for j, u in enumerate(utt_list)
        )
        log_entries.append((event, utterances))

    session_obj = _get(doc, "session", dict, "", "an object")
    selected = session_obj.get("selected")
    if selected is not None:
        _expect(selected, str, "/session/selected", "a string or null")
        if not board.has(selected):
            raise SchemaViolation("/session/selected", f"selected unit {selected!r} is not on the board")
    mode = mode_from_json(_get(session_obj, "mode", dict, "/session", "an object"), "/session/mode")
    if isinstance(mode, (Dictating, AwaitingMedia)) and not board.has(mode.target):
        raise SchemaViolation("/session/mode", f"mode target {mode.target!r} is not on the board")
    revision = _get(session_obj, "revision", int, "/session", "an integer")
    pending = session_obj.get("pending_touch")
    pending_touch = None
    if pending is not None:
        _expect(pending, list, "/session/pending_touch", "a pair or null")
        if len(pending) != 2:
            raise SchemaViolation("/session/pending_touch", "expected a [unit, t_ms] pair")
        pending_touch = (
            _expect(pending[0], str, "/session/pending_touch/0", "a string"),
            _expect(pending[1], int, "/session/pending_touch/1", "an integer"),
        )

    return SessionState(
        board=board,
        content_memory=memory,
        selected=selected,
        mode=mode,
        log=tuple(log_entries),
        revision=revision,
        pending_touch=pending_touch,
    )


def read_project(path) -> SessionState:
    with open(path, "rb") as fh:
        return load_project(fh.read())
