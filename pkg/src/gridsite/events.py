"""Inbound engine events and outbound effects.

Events describe what happened on the board or command channel; effects are the
engine's only outputs (vibration, speech, render notifications). Applying an
effect never feeds back into session state.
"""

from __future__ import annotations

from dataclasses import dataclass

from .content import MediaKind
from .feedback import Utterance
from .grid import BracketType, Footprint


@dataclass(frozen=True)
class Placed:
    unit_id: str
    bracket_type: BracketType
    footprint: Footprint


@dataclass(frozen=True)
class Removed:
    unit_id: str


@dataclass(frozen=True)
class Reshaped:
    unit_id: str
    footprint: Footprint


@dataclass(frozen=True)
class TouchDown:
    unit_id: str
    t_ms: int


@dataclass(frozen=True)
class TouchUp:
    unit_id: str
    t_ms: int


@dataclass(frozen=True)
class CommandText:
    """One raw line from the command channel; parsed against the session mode."""

    text: str


@dataclass(frozen=True)
class MediaSelected:
    """A picked media file. Dimensions are validated by the session, not here,
    so a bad pick becomes a spoken error instead of a crash."""

    unit_id: str
    kind: MediaKind
    uri: str
    width: int
    height: int
    alt_text: str | None = None


EngineEvent = Placed | Removed | Reshaped | TouchDown | TouchUp | CommandText | MediaSelected


@dataclass(frozen=True)
class Vibrate:
    unit_id: str
    pattern: str = "select"


@dataclass(frozen=True)
class Utter:
    utterance: Utterance


@dataclass(frozen=True)
class RenderUpdated:
    revision: int


@dataclass(frozen=True)
class OpenMediaPicker:
    unit_id: str


Effect = Vibrate | Utter | RenderUpdated | OpenMediaPicker
