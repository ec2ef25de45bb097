"""Standalone HTML rendering of the board, and layout recovery from that HTML.

Rendering is a pure function of (board, content memory): equal inputs give
byte-equal documents. parse_layout inverts the geometry side, which the test
suite uses as a round-trip oracle for rendering fidelity.
"""

from __future__ import annotations

import html as html_mod
import re
from dataclasses import dataclass
from html.parser import HTMLParser
from typing import TYPE_CHECKING

from .content import MediaContent, MediaKind, TextContent
from .grid import Board, Footprint

if TYPE_CHECKING:
    from .session import SessionState


class MalformedDocument(Exception):
    pass


@dataclass(frozen=True)
class RenderedPage:
    html: str
    revision: int


def _escape(text: str) -> str:
    return html_mod.escape(text, quote=True)


def _text_block(content: TextContent) -> str:
    body = "<br/>".join(_escape(line) for line in content.lines)
    tag = "h1" if content.is_title else "p"
    return f"<{tag}>{body}</{tag}>"


def _media_block(content: MediaContent) -> str:
    if not content.uri:
        label = "image placeholder" if content.kind is MediaKind.IMAGE else "video placeholder"
        return f'<div class="media-placeholder">{label}</div>'
    if content.kind is MediaKind.IMAGE:
        alt = _escape(content.alt_text or "")
        return f'<img src="{_escape(content.uri)}" alt="{alt}"/>'
    return f'<video src="{_escape(content.uri)}" controls></video>'


def render_html(board: Board, content_memory) -> str:
    """A self-contained document: one CSS-grid container, one element per bracket."""
    cfg = board.config
    lines = [
        "<!DOCTYPE html>",
        '<html lang="en">',
        "<head>",
        '<meta charset="utf-8"/>',
        "<title>Grid page</title>",
        "<style>",
        "body { margin: 0; font-family: system-ui, sans-serif; }",
        ".board-grid { display: grid; "
        f"grid-template-rows: repeat({cfg.rows}, {cfg.cell_px}px); "
        f"grid-template-columns: repeat({cfg.cols}, {cfg.cell_px}px); "
        "}",
        ".bracket { overflow: hidden; }",
        ".bracket h1 { margin: 0; font-size: 28px; }",
        ".bracket p { margin: 0; }",
        ".bracket img, .bracket video { width: 100%; height: 100%; object-fit: contain; }",
        ".media-placeholder { width: 100%; height: 100%; display: flex; "
        "align-items: center; justify-content: center; background: #eee; color: #555; }",
        "</style>",
        "</head>",
        "<body>",
        f'<main class="board-grid" data-rows="{cfg.rows}" data-cols="{cfg.cols}">',
    ]
    for bracket in board.brackets:
        fp = bracket.footprint
        style = (
            f"grid-row: {fp.row} / span {fp.row_span}; "
            f"grid-column: {fp.col} / span {fp.col_span};"
        )
        stored = content_memory.get(bracket.unit_id)
        if isinstance(stored, TextContent):
            inner = _text_block(stored)
        elif isinstance(stored, MediaContent):
            inner = _media_block(stored)
        else:
            inner = ""
        lines.append(
            f'<section class="bracket bracket-{bracket.bracket_type.value}"'
            f' data-unit="{_escape(bracket.unit_id)}" style="{style}">{inner}</section>'
        )
    lines += ["</main>", "</body>", "</html>", ""]
    return "\n".join(lines)


def export_html(state: "SessionState", path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(render_html(state.board, state.content_memory))


_ROW_RE = re.compile(r"grid-row:\s*(\d+)\s*/\s*span\s*(\d+)")
_COL_RE = re.compile(r"grid-column:\s*(\d+)\s*/\s*span\s*(\d+)")


class _LayoutParser(HTMLParser):
    def __init__(self):
        super().__init__()
        self.container_seen = False
        self.entries: list[tuple[str, str | None]] = []

    def handle_starttag(self, tag, attrs):
        attr_map = dict(attrs)
        classes = (attr_map.get("class") or "").split()
        if "board-grid" in classes:
            self.container_seen = True
        unit = attr_map.get("data-unit")
        if unit is not None:
            self.entries.append((unit, attr_map.get("style")))


def parse_layout(html: str) -> list[tuple[str, Footprint]]:
    """Recover every bracket's grid position from a rendered document."""
    parser = _LayoutParser()
    parser.feed(html)
    parser.close()
    if not parser.container_seen:
        raise MalformedDocument("no grid container found")
    seen: dict[str, Footprint] = {}
    for unit, style in parser.entries:
        if unit in seen:
            raise MalformedDocument(f"unit {unit!r} appears more than once")
        if not style:
            raise MalformedDocument(f"unit {unit!r} has no grid style")
        row_m = _ROW_RE.search(style)
        col_m = _COL_RE.search(style)
        if row_m is None or col_m is None:
            raise MalformedDocument(f"unit {unit!r} has no grid lines in its style")
        try:
            fp = Footprint(
                row=int(row_m.group(1)),
                col=int(col_m.group(1)),
                row_span=int(row_m.group(2)),
                col_span=int(col_m.group(2)),
            )
        except ValueError as exc:
            raise MalformedDocument(f"unit {unit!r}: {exc}") from exc
        seen[unit] = fp
    return sorted(seen.items())
