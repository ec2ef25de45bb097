"""Operator command line: headless sessions, script replay, checks, export.

Exit codes: 0 ok, 1 assertion failure, 2 usage, 3 I/O or schema problems.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace

from . import fit
from .feedback import compose_check
from .grid import GridConfig
from .project import (
    SchemaViolation,
    UnknownVersion,
    read_project,
    save_project,
    write_project,
)
from .render import MalformedDocument, export_html
from .replay import ScriptParseError, run_script
from .server import EngineServer
from .session import Session, SessionState


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gridsite",
        description="Tangible grid page engine: serve, replay, check, export.",
    )
    parser.add_argument("--wake-word", default=None, help="command prefix (default: hey grid)")
    parser.add_argument(
        "--text-density", type=float, default=None, help="characters per grid cell"
    )
    parser.add_argument(
        "--seed-revision", type=int, default=0, help="starting render revision"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_serve = sub.add_parser("serve", help="serve the engine over the wire protocol")
    p_serve.add_argument("--listen", required=True, metavar="HOST:PORT")
    p_serve.add_argument("--project", default=None, help="load and continuously save this project")

    p_replay = sub.add_parser("replay", help="replay a session script headlessly")
    p_replay.add_argument("script")
    p_replay.add_argument(
        "--assert",
        dest="assert_flag",
        action="store_true",
        help="check expect lines (always on; flag kept for explicit runs)",
    )
    p_replay.add_argument("--out-html", default=None)
    p_replay.add_argument("--out-project", default=None)

    p_check = sub.add_parser("check", help="print the page summary for a project")
    p_check.add_argument("project")

    p_export = sub.add_parser("export-html", help="render a project to a standalone page")
    p_export.add_argument("project")
    p_export.add_argument("out")

    p_new = sub.add_parser("new", help="write a fresh empty project")
    p_new.add_argument("--rows", type=int, default=16)
    p_new.add_argument("--cols", type=int, default=12)
    p_new.add_argument("path", nargs="?", default=None, help="output file (default: stdout)")
    return parser


def _override_config(config: GridConfig, args) -> GridConfig:
    updates = {}
    if args.wake_word is not None:
        updates["wake_word"] = args.wake_word
    if args.text_density is not None:
        updates["text_density"] = args.text_density
    return replace(config, **updates) if updates else config


def _override_state(state: SessionState, args) -> SessionState:
    config = _override_config(state.config, args)
    if config == state.config:
        return state
    return replace(state, board=replace(state.board, config=config))


def _cmd_serve(args) -> int:
    if args.project is not None and os.path.exists(args.project):
        state = _override_state(read_project(args.project), args)
        session = Session(state=state)
    else:
        session = Session(config=_override_config(GridConfig(), args), revision=args.seed_revision)
    server = EngineServer(
        session,
        host=args.host,
        port=args.port,
        project_path=args.project,
    )
    if args.project is not None:
        # The file on disk is a complete snapshot from the very start.
        write_project(session.state, args.project)
    host, port = server.address
    print(f"listening on {host}:{port}", file=sys.stderr)
    server.serve_forever()
    return 0


def _cmd_replay(args) -> int:
    with open(args.script, "r", encoding="utf-8") as fh:
        text = fh.read()
    config = _override_config(GridConfig(), args)
    result = run_script(text, config=config, revision=args.seed_revision)
    for utterance in result.transcript:
        print(f"[{utterance.severity.value}] {utterance.text}")
    if args.out_html:
        export_html(result.session.state, args.out_html)
    if args.out_project:
        write_project(result.session.state, args.out_project)
    for failure in result.failures:
        print(f"assertion failed: {failure}", file=sys.stderr)
    return result.exit_code


def _cmd_check(args) -> int:
    state = _override_state(read_project(args.project), args)
    summary = fit.page_check(state.board, state.content_memory, state.config)
    print(compose_check(summary).text)
    return 0


def _cmd_export_html(args) -> int:
    state = read_project(args.project)
    export_html(state, args.out)
    return 0


def _cmd_new(args) -> int:
    config = _override_config(GridConfig(rows=args.rows, cols=args.cols), args)
    state = SessionState.initial(config, revision=args.seed_revision)
    data = save_project(state)
    if args.path is None:
        sys.stdout.write(data.decode("utf-8"))
    else:
        with open(args.path, "wb") as fh:
            fh.write(data)
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "serve":
        listen = args.listen
        host, sep, port = listen.rpartition(":")
        if not sep or not port.isdigit():
            parser.error("--listen expects HOST:PORT")
        args.host, args.port = host or "127.0.0.1", int(port)
    handlers = {
        "serve": _cmd_serve,
        "replay": _cmd_replay,
        "check": _cmd_check,
        "export-html": _cmd_export_html,
        "new": _cmd_new,
    }
    try:
        return handlers[args.command](args)
    except (OSError, SchemaViolation, UnknownVersion, ScriptParseError, MalformedDocument, ValueError) as exc:
        print(f"gridsite: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
