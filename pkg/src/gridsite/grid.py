"""Geometry and occupancy model of the baseboard grid and its brackets.

Everything here is a plain value: boards are immutable, and every mutation
returns a new board or raises. Coordinates are 1-based with row 1 at the top.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum


class GridError(Exception):
    """Base class for rejected board mutations."""


class OutOfBounds(GridError):
    pass


class BelowMinimumSize(GridError):
    pass


class DuplicateUnit(GridError):
    def __init__(self, unit_id: str):
        self.unit_id = unit_id
        super().__init__(f"unit {unit_id!r} is already on the board")


class UnknownUnit(GridError):
    def __init__(self, unit_id: str):
        self.unit_id = unit_id
        super().__init__(f"unit {unit_id!r} is not on the board")


class Overlap(GridError):
    """The requested footprint covers cells owned by other brackets."""

    def __init__(self, conflicts):
        self.conflicts = tuple(sorted(conflicts))
        super().__init__("footprint overlaps " + ", ".join(self.conflicts))


@dataclass(frozen=True)
class GridConfig:
    """Board geometry and the tunable feedback parameters shared by all modules."""

    rows: int = 16
    cols: int = 12
    cell_pitch_mm: float = 25.4
    min_span: int = 2
    long_press_ms: int = 3000
    text_density: float = 8.0
    recommended_ratio: float = 2 / 3
    underflow_ratio: float = 0.4
    wake_word: str = "hey grid"
    cell_px: int = 60

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError("grid needs at least one row and one column")
        if self.min_span < 1:
            raise ValueError("min_span must be at least 1")
        if self.cell_pitch_mm <= 0:
            raise ValueError("cell_pitch_mm must be positive")
        if self.long_press_ms < 0:
            raise ValueError("long_press_ms must be non-negative")
        if self.text_density <= 0:
            raise ValueError("text_density must be positive")
        if not 0 < self.recommended_ratio <= 1:
            raise ValueError("recommended_ratio must be in (0, 1]")
        if not 0 <= self.underflow_ratio < self.recommended_ratio:
            raise ValueError("underflow_ratio must be in [0, recommended_ratio)")
        if not self.wake_word.strip():
            raise ValueError("wake_word must not be blank")
        if self.cell_px < 1:
            raise ValueError("cell_px must be at least 1")

    @property
    def cell_count(self) -> int:
        return self.rows * self.cols


@dataclass(frozen=True)
class Footprint:
    """Whole-cell rectangle a bracket occupies: top-left corner plus spans."""

    row: int
    col: int
    row_span: int
    col_span: int

    def __post_init__(self):
        if min(self.row, self.col, self.row_span, self.col_span) < 1:
            raise ValueError("footprint fields are positive, 1-based")

    @property
    def row_end(self) -> int:
        """Last row covered, inclusive."""
        return self.row + self.row_span - 1

    @property
    def col_end(self) -> int:
        return self.col + self.col_span - 1

    @property
    def area(self) -> int:
        return self.row_span * self.col_span

    def cells(self) -> set[tuple[int, int]]:
        return {
            (r, c)
            for r in range(self.row, self.row_end + 1)
            for c in range(self.col, self.col_end + 1)
        }

    def overlaps(self, other: "Footprint") -> bool:
        return not (
            self.row_end < other.row
            or other.row_end < self.row
            or self.col_end < other.col
            or other.col_end < self.col
        )


class BracketType(Enum):
    TEXT = "text"
    IMAGE = "image"
    VIDEO = "video"

    @property
    def label(self) -> str:
        """Capitalized form used in spoken feedback."""
        return self.value.capitalize()


@dataclass(frozen=True)
class Bracket:
    """A placed element. Identity lives in unit_id, never in the footprint."""

    unit_id: str
    bracket_type: BracketType
    footprint: Footprint


@dataclass(frozen=True)
class Board:
    """The grid plus the brackets on it, kept sorted by unit id.

    The sorted order makes equal bracket sets compare equal regardless of the
    placement history that produced them.
    """

    config: GridConfig
    brackets: tuple[Bracket, ...] = ()

    @classmethod
    def empty(cls, config: GridConfig | None = None) -> "Board":
        return cls(config=config or GridConfig())

    def get(self, unit_id: str) -> Bracket | None:
        for b in self.brackets:
            if b.unit_id == unit_id:
                return b
        return None

    def has(self, unit_id: str) -> bool:
        return self.get(unit_id) is not None


def _check_footprint(config: GridConfig, fp: Footprint) -> None:
    if fp.row_span < config.min_span or fp.col_span < config.min_span:
        raise BelowMinimumSize(
            f"spans {fp.row_span}x{fp.col_span} are below the minimum of {config.min_span}"
        )
    if fp.row_end > config.rows or fp.col_end > config.cols:
        raise OutOfBounds(
            f"footprint reaches row {fp.row_end}, column {fp.col_end} on a "
            f"{config.rows}x{config.cols} board"
        )


def _sorted_brackets(brackets) -> tuple[Bracket, ...]:
    return tuple(sorted(brackets, key=lambda b: b.unit_id))


def _require(board: Board, unit_id: str) -> Bracket:
    bracket = board.get(unit_id)
    if bracket is None:
        raise UnknownUnit(unit_id)
    return bracket


def place_bracket(
    board: Board, unit_id: str, bracket_type: BracketType, fp: Footprint
) -> Board:
    """Add a bracket; rejects atomically, leaving the board untouched."""
    _check_footprint(board.config, fp)
    if board.has(unit_id):
        raise DuplicateUnit(unit_id)
    conflicts = [b.unit_id for b in board.brackets if b.footprint.overlaps(fp)]
    if conflicts:
        raise Overlap(conflicts)
    added = board.brackets + (Bracket(unit_id, bracket_type, fp),)
    return replace(board, brackets=_sorted_brackets(added))


def remove_bracket(board: Board, unit_id: str) -> Board:
    """Lift a bracket off the board. Content memory is owned elsewhere."""
    _require(board, unit_id)
    kept = tuple(b for b in board.brackets if b.unit_id != unit_id)
    return replace(board, brackets=kept)


def reshape_bracket(board: Board, unit_id: str, new_fp: Footprint) -> Board:
    """Move or resize a bracket in place, keeping its identity and type."""
    bracket = _require(board, unit_id)
    _check_footprint(board.config, new_fp)
    conflicts = [
        b.unit_id
        for b in board.brackets
        if b.unit_id != unit_id and b.footprint.overlaps(new_fp)
    ]
    if conflicts:
        raise Overlap(conflicts)
    kept = tuple(b for b in board.brackets if b.unit_id != unit_id)
    added = kept + (replace(bracket, footprint=new_fp),)
    return replace(board, brackets=_sorted_brackets(added))


def occupancy_map(board: Board) -> list[list[str | None]]:
    """Grid of cell owners: None for empty, otherwise the occupying unit id."""
    cfg = board.config
    grid: list[list[str | None]] = [[None] * cfg.cols for _ in range(cfg.rows)]
    for b in board.brackets:
        fp = b.footprint
        for r in range(fp.row, fp.row_end + 1):
            for c in range(fp.col, fp.col_end + 1):
                grid[r - 1][c - 1] = b.unit_id
    return grid


def occupied_cell_count(board: Board) -> int:
    return sum(1 for row in occupancy_map(board) for cell in row if cell is not None)


def whitespace_fraction(board: Board) -> float:
    """Fraction of cells no bracket covers, in [0, 1]."""
    total = board.config.cell_count
    return 1.0 - occupied_cell_count(board) / total


@dataclass(frozen=True)
class ExpansionRoom:
    """Whole rows/columns a footprint can grow in each direction."""

    up: int
    down: int
    left: int
    right: int

    def as_dict(self) -> dict[str, int]:
        return {"up": self.up, "down": self.down, "left": self.left, "right": self.right}


def expansion_room(board: Board, unit_id: str) -> ExpansionRoom:
    """How far the bracket can grow per direction without overlap or leaving bounds."""
    bracket = _require(board, unit_id)
    fp = bracket.footprint
    cfg = board.config
    grid = occupancy_map(board)

    def row_free(r: int) -> bool:
        return all(grid[r - 1][c - 1] is None for c in range(fp.col, fp.col_end + 1))

    def col_free(c: int) -> bool:
        return all(grid[r - 1][c - 1] is None for r in range(fp.row, fp.row_end + 1))

    up = 0
    for r in range(fp.row - 1, 0, -1):
        if not row_free(r):
            break
        up += 1
    down = 0
    for r in range(fp.row_end + 1, cfg.rows + 1):
        if not row_free(r):
            break
        down += 1
    left = 0
    for c in range(fp.col - 1, 0, -1):
        if not col_free(c):
            break
        left += 1
    right = 0
    for c in range(fp.col_end + 1, cfg.cols + 1):
        if not col_free(c):
            break
        right += 1
    return ExpansionRoom(up=up, down=down, left=left, right=right)
