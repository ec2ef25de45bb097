"""The deterministic interaction state machine.

handle_event is a pure reducer: equal (state, event) pairs always produce
equal (state, effects) pairs, so any recorded event sequence replays to an
identical session. Errors never raise out of the reducer; they surface as
error utterances so a nonvisual user always hears what went wrong.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import TYPE_CHECKING

from . import commands, feedback, fit, grid
from .content import ElementContent, EmptyContent, MediaContent, MediaKind, TextContent
from .events import (
    CommandText,
    Effect,
    EngineEvent,
    MediaSelected,
    OpenMediaPicker,
    Placed,
    Removed,
    RenderUpdated,
    Reshaped,
    TouchDown,
    TouchUp,
    Utter,
    Vibrate,
)
from .feedback import Utterance, error_utterance, render
from .grid import Board, BracketType, Footprint, GridConfig, GridError

if TYPE_CHECKING:
    from .render import RenderedPage


@dataclass(frozen=True)
class Idle:
    pass


@dataclass(frozen=True)
class Dictating:
    target: str
    as_title: bool
    lines: tuple[str, ...] = ("",)


@dataclass(frozen=True)
class AwaitingMedia:
    target: str


Mode = Idle | Dictating | AwaitingMedia

LogEntry = tuple[EngineEvent, tuple[Utterance, ...]]


@dataclass(frozen=True)
class SessionState:
    """Full session snapshot: board, per-unit content memory, interaction mode,
    the append-only log of (event, utterances), and the render revision."""

    board: Board
    content_memory: dict[str, ElementContent] = field(default_factory=dict)
    selected: str | None = None
    mode: Mode = field(default_factory=Idle)
    log: tuple[LogEntry, ...] = ()
    revision: int = 0
    pending_touch: tuple[str, int] | None = None

    @classmethod
    def initial(cls, config: GridConfig | None = None, revision: int = 0) -> "SessionState":
        return cls(board=Board.empty(config), revision=revision)

    @property
    def config(self) -> GridConfig:
        return self.board.config

    @property
    def transcript(self) -> tuple[Utterance, ...]:
        return tuple(u for _, utterances in self.log for u in utterances)


def _bump(state: SessionState) -> tuple[SessionState, RenderUpdated]:
    bumped = replace(state, revision=state.revision + 1)
    return bumped, RenderUpdated(bumped.revision)


def _say(utterance: Utterance) -> tuple[Effect, ...]:
    return (Utter(utterance),)


def handle_event(state: SessionState, event: EngineEvent) -> tuple[SessionState, tuple[Effect, ...]]:
    """Apply one event; returns the new state and the effects it produced.

    The returned state's log gains exactly one entry pairing the event with
    the utterances it caused.
    """
    new_state, effects = _apply(state, event)
    utterances = tuple(e.utterance for e in effects if isinstance(e, Utter))
    logged = replace(new_state, log=state.log + ((event, utterances),))
    return logged, tuple(effects)


def _apply(state: SessionState, event: EngineEvent) -> tuple[SessionState, tuple[Effect, ...]]:
    if isinstance(event, Placed):
        return _on_placed(state, event)
    if isinstance(event, Removed):
        return on_removed(state, event.unit_id)
    if isinstance(event, Reshaped):
        return _on_reshaped(state, event)
    if isinstance(event, TouchDown):
        return _on_touch_down(state, event)
    if isinstance(event, TouchUp):
        return _on_touch_up(state, event)
    if isinstance(event, CommandText):
        return _on_command_text(state, event.text)
    if isinstance(event, MediaSelected):
        return on_media_selected(state, event)
    return state, _say(render("unknown_command", verb=type(event).__name__))


def _on_placed(state: SessionState, event: Placed) -> tuple[SessionState, tuple[Effect, ...]]:
    try:
        board = grid.place_bracket(state.board, event.unit_id, event.bracket_type, event.footprint)
    except GridError as exc:
        return state, _say(error_utterance(exc, state.config))
    memory = dict(state.content_memory)
    memory.setdefault(event.unit_id, EmptyContent())
    next_state, rendered = _bump(replace(state, board=board, content_memory=memory))
    announce = feedback.compose_placement(event.bracket_type, event.footprint)
    return next_state, (Utter(announce), rendered)


def on_removed(state: SessionState, unit_id: str) -> tuple[SessionState, tuple[Effect, ...]]:
    """Lift a bracket: content memory is kept, selection and modes are cleaned up.

    Removing the active dictation target commits the buffer first so nothing
    dictated is ever lost.
    """
    bracket = state.board.get(unit_id)
    if bracket is None:
        return state, _say(render("err_unknown_unit", unit=unit_id))
    effects: list[Effect] = []
    memory = state.content_memory
    mode: Mode = state.mode
    if isinstance(mode, Dictating) and mode.target == unit_id:
        memory = dict(memory)
        memory[unit_id] = TextContent(lines=mode.lines, is_title=mode.as_title)
        mode = Idle()
        effects.append(Utter(render("dictation_aborted")))
    if isinstance(mode, AwaitingMedia) and mode.target == unit_id:
        mode = Idle()
        effects.append(Utter(render("media_cancelled")))
    board = grid.remove_bracket(state.board, unit_id)
    pending = state.pending_touch
    if pending is not None and pending[0] == unit_id:
        pending = None
    next_state = replace(
        state,
        board=board,
        content_memory=memory,
        mode=mode,
        selected=None if state.selected == unit_id else state.selected,
        pending_touch=pending,
    )
    next_state, rendered = _bump(next_state)
    effects.append(Utter(feedback.compose_removed(bracket.bracket_type, bracket.footprint)))
    effects.append(rendered)
    return next_state, tuple(effects)


def _text_fit_utterance(
    board: Board, unit_id: str, fp: Footprint, content: TextContent, config: GridConfig
) -> Utterance:
    """Fit feedback for committed text. When the text overflows and no single
    direction can supply the missing cells, the advice switches from "expand"
    to naming the walls, so the suggestion is always actionable."""
    cap = fit.text_capacity(fp, config)
    diag = fit.analyze_text(content.char_count, cap, config)
    if isinstance(diag, fit.TextOverflow):
        needed = fit.cells_needed_for(content.char_count, config) - fp.area
        expansion = fit.analyze_expansion(board, unit_id, needed)
        if isinstance(expansion, fit.ExpansionBlocked):
            return feedback.compose_blocked_overflow(diag, expansion)
    return feedback.compose_text_fit(diag)


def _on_reshaped(state: SessionState, event: Reshaped) -> tuple[SessionState, tuple[Effect, ...]]:
    bracket = state.board.get(event.unit_id)
    if bracket is None:
        return state, _say(render("err_unknown_unit", unit=event.unit_id))
    try:
        board = grid.reshape_bracket(state.board, event.unit_id, event.footprint)
    except GridError as exc:
        return state, _say(error_utterance(exc, state.config))
    effects: list[Effect] = [Utter(feedback.compose_resized(bracket.bracket_type, event.footprint))]
    stored = state.content_memory.get(event.unit_id)
    if isinstance(stored, TextContent):
        effects.append(
            Utter(_text_fit_utterance(board, event.unit_id, event.footprint, stored, state.config))
        )
    elif isinstance(stored, MediaContent):
        diag = fit.analyze_image(stored.intrinsic_width, stored.intrinsic_height, event.footprint)
        effects.append(Utter(feedback.compose_image_fit(diag, stored.kind.value, just_inserted=False)))
    if board != state.board:
        next_state, rendered = _bump(replace(state, board=board))
        effects.append(rendered)
    else:
        next_state = state
    return next_state, tuple(effects)


def _on_touch_down(state: SessionState, event: TouchDown) -> tuple[SessionState, tuple[Effect, ...]]:
    if not state.board.has(event.unit_id):
        return state, _say(render("err_unknown_unit", unit=event.unit_id))
    return replace(state, pending_touch=(event.unit_id, event.t_ms)), ()


def _on_touch_up(state: SessionState, event: TouchUp) -> tuple[SessionState, tuple[Effect, ...]]:
    pending = state.pending_touch
    if pending is None or pending[0] != event.unit_id:
        return (
            replace(state, pending_touch=None),
            _say(render("err_unmatched_touch", unit=event.unit_id)),
        )
    duration = max(0, event.t_ms - pending[1])
    return on_touch(replace(state, pending_touch=None), event.unit_id, duration)


def on_touch(state: SessionState, unit_id: str, duration_ms: int) -> tuple[SessionState, tuple[Effect, ...]]:
    """Select on any touch; at or past the long-press threshold, also read the
    element back (type, size, location, content status)."""
    bracket = state.board.get(unit_id)
    if bracket is None:
        return state, _say(render("err_unknown_unit", unit=unit_id))
    next_state = replace(state, selected=unit_id)
    effects: list[Effect] = [Vibrate(unit_id)]
    if duration_ms >= state.config.long_press_ms:
        stored = state.content_memory.get(unit_id, EmptyContent())
        effects.append(Utter(feedback.compose_readback(bracket, stored)))
    return next_state, tuple(effects)


def _on_command_text(state: SessionState, text: str) -> tuple[SessionState, tuple[Effect, ...]]:
    dictating = isinstance(state.mode, Dictating)
    cmd = commands.parse_command(text, dictating=dictating, wake_word=state.config.wake_word)
    if cmd is None:
        rest = commands.wake_rest(text, state.config.wake_word)
        if rest is None:
            return state, _say(render("not_a_command", wake_word=state.config.wake_word))
        return state, _say(render("unknown_command", verb=rest))
    if isinstance(cmd, (commands.Title, commands.Text)):
        return begin_dictation(state, as_title=isinstance(cmd, commands.Title))
    if isinstance(cmd, commands.NextLine):
        return new_line(state)
    if isinstance(cmd, commands.Stop):
        if isinstance(state.mode, Dictating):
            return end_dictation(state)
        if isinstance(state.mode, AwaitingMedia):
            return replace(state, mode=Idle()), _say(render("media_cancelled"))
        return state, _say(render("nothing_to_stop"))
    if isinstance(cmd, commands.Media):
        return request_media(state)
    if isinstance(cmd, commands.Check):
        return run_check(state)
    if isinstance(cmd, commands.DictationChunk):
        return append_dictation(state, cmd.text)
    return state, _say(render("unknown_command", verb=str(cmd)))


def begin_dictation(state: SessionState, as_title: bool) -> tuple[SessionState, tuple[Effect, ...]]:
    if isinstance(state.mode, AwaitingMedia):
        return state, _say(render("busy_awaiting_media"))
    if isinstance(state.mode, Dictating):
        return state, _say(render("busy_dictating"))
    if state.selected is None:
        return state, _say(render("no_selection"))
    bracket = state.board.get(state.selected)
    if bracket is None:
        return state, _say(render("no_selection"))
    if bracket.bracket_type is not BracketType.TEXT:
        return state, _say(render("wrong_type_for_dictation", type=bracket.bracket_type.value))
    mode = Dictating(target=state.selected, as_title=as_title)
    prompt = render(
        "dictation_started",
        what="the title" if as_title else "text",
        row=bracket.footprint.row,
        col=bracket.footprint.col,
    )
    return replace(state, mode=mode), _say(prompt)


def append_dictation(state: SessionState, chunk: str) -> tuple[SessionState, tuple[Effect, ...]]:
    """Append a chunk to the current line (joined with a single space).

    Chunks arrive over a line-based transport; stray line breaks are flattened
    to spaces so the structural-break invariant cannot be violated.
    """
    if not isinstance(state.mode, Dictating):
        return state, _say(render("not_dictating"))
    chunk = chunk.replace("\r", " ").replace("\n", " ")
    lines = state.mode.lines
    last = lines[-1]
    joined = chunk if last == "" else f"{last} {chunk}"
    new_lines = lines[:-1] + (joined,)
    total = sum(len(line) for line in new_lines)
    mode = replace(state.mode, lines=new_lines)
    progress = render(
        "dictation_progress", total=total, char_noun=feedback.plural(total, "character")
    )
    return replace(state, mode=mode), _say(progress)


def new_line(state: SessionState) -> tuple[SessionState, tuple[Effect, ...]]:
    if not isinstance(state.mode, Dictating):
        return state, _say(render("not_dictating"))
    mode = replace(state.mode, lines=state.mode.lines + ("",))
    return replace(state, mode=mode), _say(render("line_started"))


def end_dictation(state: SessionState) -> tuple[SessionState, tuple[Effect, ...]]:
    """Commit the buffer to content memory, return to idle, and speak fit feedback."""
    if not isinstance(state.mode, Dictating):
        return state, _say(render("nothing_to_stop"))
    mode = state.mode
    content = TextContent(lines=mode.lines, is_title=mode.as_title)
    bracket = state.board.get(mode.target)
    memory = dict(state.content_memory)
    changed = memory.get(mode.target) != content
    memory[mode.target] = content
    next_state = replace(state, mode=Idle(), content_memory=memory)
    effects: list[Effect] = [
        Utter(_text_fit_utterance(next_state.board, mode.target, bracket.footprint, content, state.config))
    ]
    if changed:
        next_state, rendered = _bump(next_state)
        effects.append(rendered)
    return next_state, tuple(effects)


def request_media(state: SessionState) -> tuple[SessionState, tuple[Effect, ...]]:
    if isinstance(state.mode, AwaitingMedia):
        return state, _say(render("busy_awaiting_media"))
    if isinstance(state.mode, Dictating):
        return state, _say(render("busy_dictating"))
    if state.selected is None:
        return state, _say(render("no_selection"))
    bracket = state.board.get(state.selected)
    if bracket is None:
        return state, _say(render("no_selection"))
    if bracket.bracket_type is BracketType.TEXT:
        return state, _say(render("wrong_type_for_media", type=bracket.bracket_type.value))
    prompt = render(
        "media_picker_opened",
        media=bracket.bracket_type.value,
        row=bracket.footprint.row,
        col=bracket.footprint.col,
    )
    next_state = replace(state, mode=AwaitingMedia(target=state.selected))
    return next_state, (Utter(prompt), OpenMediaPicker(state.selected))


def on_media_selected(state: SessionState, event: MediaSelected) -> tuple[SessionState, tuple[Effect, ...]]:
    """Bind a picked file to the awaiting bracket and speak the fit verdict."""
    if not isinstance(state.mode, AwaitingMedia) or state.mode.target != event.unit_id:
        return state, _say(render("not_awaiting_media"))
    bracket = state.board.get(event.unit_id)
    expected = MediaKind.IMAGE if bracket.bracket_type is BracketType.IMAGE else MediaKind.VIDEO
    if event.kind is not expected:
        return state, _say(
            render(
                "err_media_kind_mismatch",
                media_kind=event.kind.value,
                bracket_kind=expected.value,
            )
        )
    if event.width <= 0 or event.height <= 0:
        return state, _say(render("err_bad_media"))
    content = MediaContent(
        kind=event.kind,
        uri=event.uri,
        intrinsic_width=event.width,
        intrinsic_height=event.height,
        alt_text=event.alt_text,
    )
    memory = dict(state.content_memory)
    memory[event.unit_id] = content
    diag = fit.analyze_image(event.width, event.height, bracket.footprint)
    verdict = feedback.compose_image_fit(diag, event.kind.value, just_inserted=True)
    next_state, rendered = _bump(replace(state, mode=Idle(), content_memory=memory))
    return next_state, (Utter(verdict), rendered)


def run_check(state: SessionState) -> tuple[SessionState, tuple[Effect, ...]]:
    """Page-level summary; changes nothing but the transcript."""
    summary = fit.page_check(state.board, state.content_memory, state.config)
    return state, _say(feedback.compose_check(summary))


class Session:
    """Owns the authoritative state and applies events one at a time.

    Producers may run concurrently, but they must funnel through a single
    dispatch order; the server does this with one queue and one engine thread.
    """

    def __init__(
        self,
        config: GridConfig | None = None,
        state: SessionState | None = None,
        revision: int = 0,
    ):
        self.state = state if state is not None else SessionState.initial(config, revision)

    @property
    def config(self) -> GridConfig:
        return self.state.config

    def dispatch(self, event: EngineEvent) -> tuple[Effect, ...]:
        self.state, effects = handle_event(self.state, event)
        return effects

    def render_page(self) -> "RenderedPage":
        from .render import RenderedPage, render_html

        return RenderedPage(
            html=render_html(self.state.board, self.state.content_memory),
            revision=self.state.revision,
        )
