"""Spoken-feedback composition.

Every utterance the engine can produce is rendered from the fixed catalog in
templates.json; nothing is assembled ad hoc. The catalog is versioned data so
goldens, the transcript log, and any UI share one source of truth.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from importlib import resources

from . import fit
from .content import ElementContent, MediaContent, TextContent, is_empty
from .grid import (
    BelowMinimumSize,
    Bracket,
    BracketType,
    DuplicateUnit,
    Footprint,
    GridConfig,
    GridError,
    OutOfBounds,
    Overlap,
    UnknownUnit,
)

READBACK_PREVIEW_CHARS = 40


class Severity(Enum):
    INFO = "info"
    WARNING = "warning"
    ERROR = "error"


@dataclass(frozen=True)
class Utterance:
    """A fully rendered feedback line destined for speech output."""

    text: str
    severity: Severity
    template_id: str


_catalog_cache: dict | None = None


def catalog() -> dict:
    global _catalog_cache
    if _catalog_cache is None:
        raw = resources.files(__package__).joinpath("templates.json").read_text("utf-8")
        _catalog_cache = json.loads(raw)
    return _catalog_cache


def catalog_version() -> int:
    return catalog()["version"]


def render(template_id: str, **params) -> Utterance:
    entry = catalog()["templates"][template_id]
    return Utterance(
        text=entry["pattern"].format(**params),
        severity=Severity(entry["severity"]),
        template_id=template_id,
    )


_NUM_WORDS = {
    1: "one", 2: "two", 3: "three", 4: "four", 5: "five", 6: "six",
    7: "seven", 8: "eight", 9: "nine", 10: "ten", 11: "eleven", 12: "twelve",
}


def num_word(n: int) -> str:
    """Small counts read better as words; 13 and up stay digits."""
    return _NUM_WORDS.get(n, str(n))


def plural(n: int, singular: str, plural_form: str | None = None) -> str:
    if n == 1:
        return singular
    return plural_form or singular + "s"


def join_with_and(items) -> str:
    items = list(items)
    if not items:
        return ""
    if len(items) == 1:
        return items[0]
    return ", ".join(items[:-1]) + " and " + items[-1]


def compose_placement(bracket_type: BracketType, fp: Footprint) -> Utterance:
    return render(
        "placement_detected",
        type=bracket_type.label,
        row_span=fp.row_span,
        col_span=fp.col_span,
        row=fp.row,
        col=fp.col,
    )


def compose_removed(bracket_type: BracketType, fp: Footprint) -> Utterance:
    return render("bracket_removed", type=bracket_type.label, row=fp.row, col=fp.col)


def compose_resized(bracket_type: BracketType, fp: Footprint) -> Utterance:
    return render(
        "bracket_resized",
        type=bracket_type.label,
        row_span=fp.row_span,
        col_span=fp.col_span,
        row=fp.row,
        col=fp.col,
    )


def compose_text_fit(diag) -> Utterance:
    if isinstance(diag, fit.TextOverflow):
        return render(
            "text_overflow",
            current=diag.current,
            max=diag.max_chars,
            recommended=diag.recommended_chars,
        )
    if isinstance(diag, fit.TextUnderflow):
        return render(
            "text_underflow",
            fill_percent=round(100 * diag.fill_fraction),
            current=diag.current,
            max=diag.max_chars,
        )
    if isinstance(diag, fit.TextFits):
        return render("text_fits", current=diag.current, max=diag.max_chars)
    raise TypeError(f"not a text diagnostic: {diag!r}")


def compose_blocked_overflow(overflow: "fit.TextOverflow", blocked: "fit.ExpansionBlocked") -> Utterance:
    return render(
        "text_overflow_blocked",
        current=overflow.current,
        max=overflow.max_chars,
        directions=join_with_and(blocked.blocked_directions),
    )


def _band_phrases(count: int, unit_noun: str) -> tuple[str, str]:
    noun = plural(count, unit_noun)
    verb = "remains" if count == 1 else "remain"
    return f"{num_word(count)} {noun} {verb}", f"{num_word(count)} {noun}"


def compose_image_fit(diag, media_kind: str = "image", just_inserted: bool = True) -> Utterance:
    """Letterbox advice or a fit confirmation for image and video content."""
    if isinstance(diag, fit.ImageFits):
        return render("media_fits", media=media_kind)
    if isinstance(diag, fit.ImageLetterbox):
        if diag.empty_cols_left > 0:
            bands, amount = _band_phrases(diag.empty_cols_left, "column")
            sides, action = "left and right", "narrowing"
        else:
            bands, amount = _band_phrases(diag.empty_rows_top, "row")
            sides, action = "top and bottom", "shortening"
        if just_inserted:
            return render(
                "media_letterbox",
                media=media_kind.capitalize(),
                bands=bands,
                sides=sides,
                action=action,
                amount=amount,
            )
        return render(
            "media_letterbox_after_reshape",
            media=media_kind,
            bands=bands,
            sides=sides,
            action=action,
            amount=amount,
        )
    raise TypeError(f"not an image diagnostic: {diag!r}")


def _check_note(diag) -> str:
    if isinstance(diag, fit.TextOverflow):
        return render(
            "check_note_overflow", unit=diag.subject, current=diag.current, max=diag.max_chars
        ).text
    if isinstance(diag, fit.TextUnderflow):
        return render(
            "check_note_underflow", unit=diag.subject, current=diag.current, max=diag.max_chars
        ).text
    if isinstance(diag, fit.ImageLetterbox):
        sides = "left and right" if diag.empty_cols_left > 0 else "top and bottom"
        return render("check_note_letterbox", unit=diag.subject, sides=sides).text
    if isinstance(diag, fit.EmptyBracket):
        return render("check_note_empty", unit=diag.subject).text
    raise TypeError(f"no check note for {diag!r}")


def compose_check(summary: "fit.PageSummary") -> Utterance:
    notes = "".join(" " + _check_note(d) for d in summary.open_diagnostics)
    counts = summary.counts
    n_text = counts.get(BracketType.TEXT, 0)
    n_image = counts.get(BracketType.IMAGE, 0)
    n_video = counts.get(BracketType.VIDEO, 0)
    return render(
        "check_summary",
        text_count=n_text,
        text_noun=plural(n_text, "bracket"),
        image_count=n_image,
        image_noun=plural(n_image, "bracket"),
        video_count=n_video,
        video_noun=plural(n_video, "bracket"),
        whitespace_percent=summary.whitespace_percent,
        notes=notes,
    )


def _readback_status(bracket: Bracket, content: ElementContent | None) -> str:
    if is_empty(content):
        if bracket.bracket_type is BracketType.TEXT:
            return render("readback_status_empty_text").text
        return render("readback_status_empty_media").text
    if isinstance(content, TextContent):
        preview = content.flattened()[:READBACK_PREVIEW_CHARS]
        return render(
            "readback_status_text",
            chars=content.char_count,
            char_noun=plural(content.char_count, "character"),
            words=content.word_count,
            word_noun=plural(content.word_count, "word"),
            preview=preview,
        ).text
    if isinstance(content, MediaContent):
        return render(
            "readback_status_media",
            kind=content.kind.value,
            width=content.intrinsic_width,
            height=content.intrinsic_height,
        ).text
    raise TypeError(f"unknown content: {content!r}")


def compose_readback(bracket: Bracket, content: ElementContent | None) -> Utterance:
    fp = bracket.footprint
    return render(
        "readback",
        type=bracket.bracket_type.label,
        row_span=fp.row_span,
        col_span=fp.col_span,
        row=fp.row,
        col=fp.col,
        status=_readback_status(bracket, content),
    )


def error_utterance(exc: GridError, config: GridConfig) -> Utterance:
    """Board mutation failures become spoken errors, never raised exceptions."""
    if isinstance(exc, OutOfBounds):
        return render("err_out_of_bounds", rows=config.rows, cols=config.cols)
    if isinstance(exc, BelowMinimumSize):
        return render("err_below_min", min_span=config.min_span)
    if isinstance(exc, Overlap):
        return render("err_overlap", units=join_with_and(exc.conflicts))
    if isinstance(exc, DuplicateUnit):
        return render("err_duplicate_unit", unit=exc.unit_id)
    if isinstance(exc, UnknownUnit):
        return render("err_unknown_unit", unit=exc.unit_id)
    raise TypeError(f"unhandled grid error: {exc!r}")
