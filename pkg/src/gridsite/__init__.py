"""gridsite: a deterministic engine for tangible, nonvisual page building.

Models a grid baseboard with shape-adjustable brackets, analyzes how content
fits its layout, composes actionable spoken feedback from a fixed template
catalog, renders the page to HTML, and exposes the whole engine over a
line-delimited JSON protocol for simulators and UIs.
"""

from .commands import Command, DictationChunk, parse_command
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
from .feedback import Severity, Utterance
from .fit import (
    EmptyBracket,
    ExpansionBlocked,
    ExpansionPossible,
    FitDiagnostic,
    ImageFits,
    ImageLetterbox,
    PageSummary,
    TextCapacity,
    TextFits,
    TextOverflow,
    TextUnderflow,
    analyze_expansion,
    analyze_image,
    analyze_text,
    page_check,
    text_capacity,
)
from .grid import (
    Board,
    Bracket,
    BracketType,
    ExpansionRoom,
    Footprint,
    GridConfig,
    GridError,
    expansion_room,
    occupancy_map,
    place_bracket,
    remove_bracket,
    reshape_bracket,
    whitespace_fraction,
)
from .render import RenderedPage, parse_layout, render_html
from .project import load_project, read_project, save_project, write_project
from .session import AwaitingMedia, Dictating, Idle, Session, SessionState, handle_event

__version__ = "0.1.0"
