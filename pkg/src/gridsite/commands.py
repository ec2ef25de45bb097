"""Text command grammar: wake-word commands and dictation control phrases.

Matching is strict keyword matching after case folding and whitespace
normalization; no fuzzy matching, so transcripts stay reproducible. While
dictating, only the bare control phrases are commands and every other line is
a verbatim dictation chunk.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Title:
    pass


@dataclass(frozen=True)
class Text:
    pass


@dataclass(frozen=True)
class NextLine:
    pass


@dataclass(frozen=True)
class Stop:
    pass


@dataclass(frozen=True)
class Media:
    pass


@dataclass(frozen=True)
class Check:
    pass


@dataclass(frozen=True)
class DictationChunk:
    text: str


Command = Title | Text | NextLine | Stop | Media | Check | DictationChunk

_VERBS: dict[str, type] = {
    "title": Title,
    "text": Text,
    "next line": NextLine,
    "stop": Stop,
    "media": Media,
    "check": Check,
}

_CONTROL_PHRASES: dict[str, type] = {"next line": NextLine, "stop": Stop}


def normalize(raw: str) -> str:
    """Case-fold and collapse runs of whitespace; the matching form of a line."""
    return " ".join(raw.split()).casefold()


def wake_rest(raw: str, wake_word: str) -> str | None:
    """The normalized text after the wake word, or None when not addressed to us."""
    norm = normalize(raw)
    wake = normalize(wake_word)
    if norm == wake:
        return ""
    if norm.startswith(wake + " "):
        return norm[len(wake) + 1 :]
    return None


def parse_command(raw: str, *, dictating: bool, wake_word: str) -> Command | None:
    """Parse one utterance line under the current session mode.

    Returns None when the line is not a command: in idle modes that means the
    wake word is missing or the verb is unknown; while dictating there is no
    such case, since non-control lines become DictationChunk verbatim.
    """
    if dictating:
        control = _CONTROL_PHRASES.get(normalize(raw))
        if control is not None:
            return control()
        return DictationChunk(raw)
    rest = wake_rest(raw, wake_word)
    if rest is None:
        return None
    verb = _VERBS.get(rest)
    if verb is None:
        return None
    return verb()


def render_canonical(cmd: Command, wake_word: str) -> str:
    """A raw line that parses back to the command (idle form for verbs)."""
    if isinstance(cmd, DictationChunk):
        return cmd.text
    for phrase, cls in _VERBS.items():
        if isinstance(cmd, cls):
            return f"{normalize(wake_word)} {phrase}"
    raise TypeError(f"not a command: {cmd!r}")
