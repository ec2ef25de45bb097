"""Content-to-layout fit analysis: text capacity, media letterboxing,
expansion room, and page-level summaries.

All functions are pure. Ratios are evaluated with exact decimal arithmetic
(via Fraction of the config value's decimal form) so results never depend on
binary float noise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction

from .content import EmptyContent, MediaContent, TextContent, is_empty
from .grid import Board, BracketType, Footprint, GridConfig, expansion_room


class NonPositiveDimensions(ValueError):
    pass


@dataclass(frozen=True)
class TextCapacity:
    max_chars: int
    recommended_chars: int


@dataclass(frozen=True)
class TextOverflow:
    current: int
    max_chars: int
    recommended_chars: int
    subject: str | None = None


@dataclass(frozen=True)
class TextUnderflow:
    current: int
    max_chars: int
    fill_fraction: float
    subject: str | None = None


@dataclass(frozen=True)
class TextFits:
    current: int
    max_chars: int
    subject: str | None = None


@dataclass(frozen=True)
class ImageLetterbox:
    """Empty whole-cell bands left by contain-fitting mismatched media."""

    empty_cols_left: int
    empty_cols_right: int
    empty_rows_top: int
    empty_rows_bottom: int
    subject: str | None = None


@dataclass(frozen=True)
class ImageFits:
    subject: str | None = None


@dataclass(frozen=True)
class ExpansionBlocked:
    """No single direction can supply the needed cells; lists the walls."""

    blocked_directions: tuple[str, ...]
    needed_cells: int
    subject: str | None = None


@dataclass(frozen=True)
class ExpansionPossible:
    """Directions that can supply the needed cells, with the growth steps."""

    options: tuple[tuple[str, int], ...]
    needed_cells: int
    subject: str | None = None


@dataclass(frozen=True)
class EmptyBracket:
    bracket_type: BracketType
    subject: str | None = None


FitDiagnostic = (
    TextOverflow
    | TextUnderflow
    | TextFits
    | ImageLetterbox
    | ImageFits
    | ExpansionBlocked
    | ExpansionPossible
    | EmptyBracket
)


def _exact(value: float) -> Fraction:
    # str() gives the shortest decimal that round-trips, so 0.4 means 4/10.
    return Fraction(str(value))


def text_capacity(fp: Footprint, config: GridConfig) -> TextCapacity:
    """Linear chars-per-cell capacity model, floored to whole characters.

    Degenerate configurations (density so low the floor hits zero) are clamped
    to a capacity of one character so the capacity invariant holds.
    """
    density = _exact(config.text_density)
    if density <= 0:
        raise ValueError("text_density must be positive")
    max_chars = max(1, math.floor(density * fp.area))
    recommended = round(_exact(config.recommended_ratio) * max_chars)
    recommended = min(max_chars, max(1, recommended))
    return TextCapacity(max_chars=max_chars, recommended_chars=recommended)


def cells_needed_for(chars: int, config: GridConfig) -> int:
    """Smallest cell area whose capacity holds the given character count."""
    if chars <= 0:
        return 0
    density = _exact(config.text_density)
    return math.ceil(chars / density)


def analyze_text(current_chars: int, cap: TextCapacity, config: GridConfig) -> FitDiagnostic:
    """Classify a character count against a capacity: overflow, underflow, or fits."""
    if current_chars < 0:
        raise ValueError("character count cannot be negative")
    if current_chars > cap.max_chars:
        return TextOverflow(current_chars, cap.max_chars, cap.recommended_chars)
    if current_chars == 0:
        return TextUnderflow(0, cap.max_chars, 0.0)
    fill = current_chars / cap.max_chars
    if fill < config.underflow_ratio:
        return TextUnderflow(current_chars, cap.max_chars, fill)
    return TextFits(current_chars, cap.max_chars)


def analyze_image(intrinsic_w: int, intrinsic_h: int, fp: Footprint) -> FitDiagnostic:
    """Contain-fit the media into the footprint and report whole-cell bands.

    Cells are square, so the bracket aspect is col_span / row_span. Bands are
    floored to whole cells because brackets resize only in grid steps; when
    every floored band is zero the media counts as fitting.
    """
    if intrinsic_w <= 0 or intrinsic_h <= 0:
        raise NonPositiveDimensions("media dimensions must be positive")
    image_aspect = Fraction(intrinsic_w, intrinsic_h)
    box_aspect = Fraction(fp.col_span, fp.row_span)
    cols_side = rows_side = 0
    if image_aspect < box_aspect:
        shown_cols = fp.row_span * image_aspect
        cols_side = math.floor((fp.col_span - shown_cols) / 2)
    elif image_aspect > box_aspect:
        shown_rows = fp.col_span / image_aspect
        rows_side = math.floor((fp.row_span - shown_rows) / 2)
    if cols_side == 0 and rows_side == 0:
        return ImageFits()
    return ImageLetterbox(
        empty_cols_left=cols_side,
        empty_cols_right=cols_side,
        empty_rows_top=rows_side,
        empty_rows_bottom=rows_side,
    )


_DIRECTIONS = ("up", "down", "left", "right")


def analyze_expansion(board: Board, unit_id: str, needed_extra_cells: int) -> FitDiagnostic:
    """Can the bracket grow in one direction to gain the needed cells?

    Growing by one row adds col_span cells; by one column, row_span cells.
    """
    room = expansion_room(board, unit_id)
    fp = board.get(unit_id).footprint
    per_step = {
        "up": fp.col_span,
        "down": fp.col_span,
        "left": fp.row_span,
        "right": fp.row_span,
    }
    if needed_extra_cells <= 0:
        return ExpansionPossible(options=(), needed_cells=needed_extra_cells, subject=unit_id)
    options = []
    for direction in _DIRECTIONS:
        available = getattr(room, direction)
        if available * per_step[direction] >= needed_extra_cells:
            steps = -(-needed_extra_cells // per_step[direction])
            options.append((direction, steps))
    if options:
        return ExpansionPossible(
            options=tuple(options), needed_cells=needed_extra_cells, subject=unit_id
        )
    blocked = tuple(d for d in _DIRECTIONS if getattr(room, d) == 0)
    return ExpansionBlocked(
        blocked_directions=blocked, needed_cells=needed_extra_cells, subject=unit_id
    )


@dataclass(frozen=True)
class PageSummary:
    counts: dict[BracketType, int]
    whitespace_percent: int
    open_diagnostics: tuple[FitDiagnostic, ...]


def whitespace_percent(board: Board) -> int:
    """Whitespace as a whole percent, rounded exactly (no float in the middle)."""
    total = board.config.cell_count
    free = total - sum(
        b.footprint.area for b in board.brackets
    )
    return round(Fraction(100 * free, total))


def page_check(board: Board, content_memory, config: GridConfig) -> PageSummary:
    """Counts by type, whitespace percent, and every unresolved per-element issue."""
    counts = {t: 0 for t in BracketType}
    diagnostics: list[FitDiagnostic] = []
    for bracket in board.brackets:
        counts[bracket.bracket_type] += 1
        stored = content_memory.get(bracket.unit_id, EmptyContent())
        if is_empty(stored):
            diagnostics.append(EmptyBracket(bracket.bracket_type, subject=bracket.unit_id))
            continue
        if isinstance(stored, TextContent):
            cap = text_capacity(bracket.footprint, config)
            diag = analyze_text(stored.char_count, cap, config)
            if not isinstance(diag, TextFits):
                diagnostics.append(replace(diag, subject=bracket.unit_id))
        elif isinstance(stored, MediaContent):
            diag = analyze_image(
                stored.intrinsic_width, stored.intrinsic_height, bracket.footprint
            )
            if not isinstance(diag, ImageFits):
                diagnostics.append(replace(diag, subject=bracket.unit_id))
    return PageSummary(
        counts=counts,
        whitespace_percent=whitespace_percent(board),
        open_diagnostics=tuple(diagnostics),
    )
