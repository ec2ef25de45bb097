"""Headless script replay with transcript assertions.

A session script is the wire format, one JSON object per line (blank lines
and # comments allowed), plus two assertion forms:

    {"expect_utterance": {"contains": ..., "template_id": ..., "severity": ...}}
    {"expect_absent":    {same matcher keys}}

expect_utterance checks the utterances produced by the closest preceding wire
line; expect_absent checks the whole transcript once the script has finished.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .feedback import Utterance
from .grid import GridConfig
from .protocol import EventTranslator, ProtocolError, parse_line
from .session import Session

_MATCHER_KEYS = {"contains", "template_id", "severity"}


class ScriptParseError(Exception):
    def __init__(self, line_no: int, message: str):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {message}")


@dataclass(frozen=True)
class WireLine:
    obj: dict
    line_no: int


@dataclass(frozen=True)
class ExpectUtterance:
    matcher: dict
    line_no: int


@dataclass(frozen=True)
class ExpectAbsent:
    matcher: dict
    line_no: int


ScriptLine = WireLine | ExpectUtterance | ExpectAbsent


def _check_matcher(matcher, line_no: int) -> dict:
    if not isinstance(matcher, dict) or not matcher:
        raise ScriptParseError(line_no, "assertion needs a non-empty matcher object")
    unknown = set(matcher) - _MATCHER_KEYS
    if unknown:
        raise ScriptParseError(line_no, f"unknown matcher keys: {sorted(unknown)}")
    for key, value in matcher.items():
        if not isinstance(value, str):
            raise ScriptParseError(line_no, f"matcher {key!r} must be a string")
    return matcher


def parse_script(text: str) -> list[ScriptLine]:
    lines: list[ScriptLine] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            obj = parse_line(stripped)
        except ProtocolError as exc:
            raise ScriptParseError(line_no, exc.reason) from exc
        if "expect_utterance" in obj:
            lines.append(ExpectUtterance(_check_matcher(obj["expect_utterance"], line_no), line_no))
        elif "expect_absent" in obj:
            lines.append(ExpectAbsent(_check_matcher(obj["expect_absent"], line_no), line_no))
        else:
            lines.append(WireLine(obj, line_no))
    return lines


def matches(utterance: Utterance, matcher: dict) -> bool:
    if "contains" in matcher and matcher["contains"] not in utterance.text:
        return False
    if "template_id" in matcher and matcher["template_id"] != utterance.template_id:
        return False
    if "severity" in matcher and matcher["severity"] != utterance.severity.value:
        return False
    return True


@dataclass
class ReplayResult:
    session: Session
    failures: list[str] = field(default_factory=list)

    @property
    def transcript(self) -> tuple[Utterance, ...]:
        return self.session.state.transcript

    @property
    def exit_code(self) -> int:
        return 1 if self.failures else 0


def run_script(
    text: str,
    config: GridConfig | None = None,
    revision: int = 0,
) -> ReplayResult:
    """Replay a script from the initial state. Assertions are always evaluated;
    failures are reported, not raised."""
    script = parse_script(text)
    session = Session(config=config, revision=revision)
    translator = EventTranslator()
    result = ReplayResult(session=session)
    absents: list[ExpectAbsent] = []
    recent: list[Utterance] = []
    for item in script:
        if isinstance(item, WireLine):
            try:
                events = translator.translate(item.obj)
            except ProtocolError as exc:
                raise ScriptParseError(item.line_no, exc.reason) from exc
            recent = []
            for event in events:
                for effect in session.dispatch(event):
                    utterance = getattr(effect, "utterance", None)
                    if utterance is not None:
                        recent.append(utterance)
        elif isinstance(item, ExpectUtterance):
            if not any(matches(u, item.matcher) for u in recent):
                result.failures.append(
                    f"line {item.line_no}: expected an utterance matching {item.matcher}"
                )
        else:
            absents.append(item)
    transcript = session.state.transcript
    for item in absents:
        hits = [u for u in transcript if matches(u, item.matcher)]
        if hits:
            result.failures.append(
                f"line {item.line_no}: expected no utterance matching {item.matcher}, "
                f"found {len(hits)}"
            )
    return result
