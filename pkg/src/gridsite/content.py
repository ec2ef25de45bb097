"""Element content bound to bracket units.

Content lives in the session's memory keyed by unit id, so it survives a
bracket being lifted off the board and put back later.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class MediaKind(Enum):
    IMAGE = "image"
    VIDEO = "video"


@dataclass(frozen=True)
class TextContent:
    """Dictated text. Line breaks are structural: one entry per line."""

    lines: tuple[str, ...]
    is_title: bool = False

    def __post_init__(self):
        for line in self.lines:
            if "\n" in line or "\r" in line:
                raise ValueError("text lines must not contain line-break characters")

    @property
    def char_count(self) -> int:
        """All code points including spaces; structural breaks excluded."""
        return sum(len(line) for line in self.lines)

    @property
    def word_count(self) -> int:
        return sum(len(line.split()) for line in self.lines)

    def flattened(self, sep: str = " ") -> str:
        return sep.join(self.lines)


@dataclass(frozen=True)
class MediaContent:
    kind: MediaKind
    uri: str
    intrinsic_width: int
    intrinsic_height: int
    alt_text: str | None = None

    def __post_init__(self):
        if self.intrinsic_width <= 0 or self.intrinsic_height <= 0:
            raise ValueError("media intrinsic dimensions must be positive")


@dataclass(frozen=True)
class EmptyContent:
    pass


ElementContent = TextContent | MediaContent | EmptyContent


def is_empty(content: ElementContent | None) -> bool:
    return content is None or isinstance(content, EmptyContent)
