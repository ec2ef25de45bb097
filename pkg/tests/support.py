"""Independent oracles and generators shared across the test suite.

Everything here recomputes expectations from first principles (cell-set
enumeration, grow-and-test, mirror bookkeeping) so the tests never reuse the
code paths they are checking.
"""

from __future__ import annotations

import random

from gridsite.content import MediaKind
from gridsite.events import (
    CommandText,
    MediaSelected,
    Placed,
    Removed,
    Reshaped,
    TouchDown,
    TouchUp,
)
from gridsite.grid import Board, BracketType, Footprint, GridConfig, place_bracket


def cells_of(row: int, col: int, row_span: int, col_span: int) -> set[tuple[int, int]]:
    """Cell set of a footprint, enumerated directly from the corner and spans."""
    return {
        (r, c)
        for r in range(row, row + row_span)
        for c in range(col, col + col_span)
    }


def fp_cells(fp: Footprint) -> set[tuple[int, int]]:
    return cells_of(fp.row, fp.col, fp.row_span, fp.col_span)


def footprints_intersect(a: Footprint, b: Footprint) -> bool:
    return bool(fp_cells(a) & fp_cells(b))


def board_cell_owners(board: Board) -> dict[tuple[int, int], str]:
    """Cell -> unit map built by raw enumeration; fails the test on any collision."""
    owners: dict[tuple[int, int], str] = {}
    for bracket in board.brackets:
        for cell in fp_cells(bracket.footprint):
            assert cell not in owners, (
                f"cell {cell} owned by both {owners[cell]} and {bracket.unit_id}"
            )
            owners[cell] = bracket.unit_id
    return owners


def in_bounds(fp: Footprint, config: GridConfig) -> bool:
    return (
        fp.row >= 1
        and fp.col >= 1
        and fp.row + fp.row_span - 1 <= config.rows
        and fp.col + fp.col_span - 1 <= config.cols
    )


def grown(fp: Footprint, direction: str, k: int) -> Footprint:
    if direction == "up":
        return Footprint(fp.row - k, fp.col, fp.row_span + k, fp.col_span)
    if direction == "down":
        return Footprint(fp.row, fp.col, fp.row_span + k, fp.col_span)
    if direction == "left":
        return Footprint(fp.row, fp.col - k, fp.row_span, fp.col_span + k)
    if direction == "right":
        return Footprint(fp.row, fp.col, fp.row_span, fp.col_span + k)
    raise ValueError(direction)


def brute_force_room(board: Board, unit_id: str, direction: str) -> int:
    """Grow-and-test: the largest k for which the grown footprint stays legal."""
    bracket = board.get(unit_id)
    others = [b for b in board.brackets if b.unit_id != unit_id]
    k = 0
    while True:
        candidate_k = k + 1
        try:
            candidate = grown(bracket.footprint, direction, candidate_k)
        except ValueError:
            return k
        if not in_bounds(candidate, board.config):
            return k
        if any(footprints_intersect(candidate, o.footprint) for o in others):
            return k
        k = candidate_k


def random_footprint(rng: random.Random, config: GridConfig) -> Footprint:
    row_span = rng.randint(config.min_span, min(config.rows, config.min_span + 4))
    col_span = rng.randint(config.min_span, min(config.cols, config.min_span + 4))
    row = rng.randint(1, config.rows - row_span + 1)
    col = rng.randint(1, config.cols - col_span + 1)
    return Footprint(row, col, row_span, col_span)


def random_board(rng: random.Random, config: GridConfig | None = None, max_brackets: int = 6) -> Board:
    """Non-overlapping board built by rejection sampling."""
    config = config or GridConfig()
    board = Board.empty(config)
    types = list(BracketType)
    target = rng.randint(0, max_brackets)
    attempts = 0
    i = 0
    while i < target and attempts < 80:
        attempts += 1
        fp = random_footprint(rng, config)
        if any(footprints_intersect(fp, b.footprint) for b in board.brackets):
            continue
        board = place_bracket(board, f"u{i}", rng.choice(types), fp)
        i += 1
    return board


UNIT_POOL = [f"u{i}" for i in range(8)]

_COMMAND_LINES = [
    "hey grid title",
    "hey grid text",
    "hey grid media",
    "hey grid check",
    "hey grid stop",
    "hey grid next line",
    "hey grid dance",
    "stop",
    "next line",
    "Sunlit harbor mornings",
    "a somewhat longer dictated sentence that may overflow smaller brackets",
    "just chatting, no wake word",
]


def random_script(rng: random.Random, config: GridConfig, length: int = 25):
    """A plausible mix of valid and invalid events; deterministic per seed."""
    events = []
    clock = 0
    for _ in range(length):
        roll = rng.random()
        unit = rng.choice(UNIT_POOL)
        if roll < 0.30:
            events.append(
                Placed(unit, rng.choice(list(BracketType)), random_footprint(rng, config))
            )
        elif roll < 0.42:
            events.append(Removed(unit))
        elif roll < 0.54:
            events.append(Reshaped(unit, random_footprint(rng, config)))
        elif roll < 0.68:
            duration = rng.choice([150, 500, 2999, 3000, 3499])
            events.append(TouchDown(unit, clock))
            events.append(TouchUp(unit, clock + duration))
            clock += duration + 1
        elif roll < 0.92:
            events.append(CommandText(rng.choice(_COMMAND_LINES)))
        else:
            events.append(
                MediaSelected(
                    unit,
                    rng.choice(list(MediaKind)),
                    "media/sample.bin",
                    rng.choice([320, 600, 1600]),
                    rng.choice([240, 900, 900]),
                    None,
                )
            )
    return events
