from __future__ import annotations

import html
import json
import logging
import sys
from typing import Sequence, TextIO

from prompt_toolkit.formatted_text import HTML
from prompt_toolkit.shortcuts import print_formatted_text

from .commands import CommandResult, Context, execute, help_text, parse_args, render
from .config import LOG_LEVELS, load_config
from .errors import USAGE_ERRORS, ExoticaError, ParseError
from .trace import TraceLogger, open_tracer


logger = logging.getLogger("exotica.cli")

USAGE = "usage: exotica [--json] [--log-level LEVEL] <command> [args...]"
# error kind for exceptions outside ExoticaError (exit 2)
INTERNAL_ERROR = "internal"


def _format_line(line: str) -> HTML:
    escaped = html.escape(line)
    if line.startswith("PASS"):
        return HTML(f"<ansigreen>PASS</ansigreen>{escaped[4:]}")
    if line.startswith("FAIL"):
        return HTML(f"<ansired>FAIL</ansired>{escaped[4:]}")
    if line.startswith("note"):
        return HTML(f"<ansibrightblack>{escaped}</ansibrightblack>")
    return HTML(escaped)


def _emit(text: str, output: TextIO, colored: bool) -> None:
    if not colored:
        print(text, file=output, flush=True)
        return
    for line in text.splitlines():
        print_formatted_text(_format_line(line))


def _configure_logging(level: str) -> None:
    logging.basicConfig(
        level=getattr(logging, level),
        format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
        stream=sys.stderr,
    )


def _fail(
    kind: str, message: str, command: str | None, as_json: bool, output: TextIO, errors: TextIO, usage: bool = False
) -> CommandResult:
    payload = {"command": command, "error": {"kind": kind, "message": message}}
    print(f"error: {message}", file=errors)
    if usage:
        print(USAGE, file=errors)
    if as_json:
        print(json.dumps(payload, ensure_ascii=False), file=output)
    return CommandResult(exit_code=2, payload=payload)


def run(argv: Sequence[str] | None = None, output: TextIO | None = None, errors: TextIO | None = None) -> CommandResult:
    argv = list(sys.argv[1:] if argv is None else argv)
    output = output or sys.stdout
    errors = errors or sys.stderr
    as_json = "--json" in argv

    if not argv or argv[0] in ("help", "-h", "--help"):
        print(USAGE, file=output)
        print(help_text(), end="", file=output)
        return CommandResult(exit_code=0 if argv else 2, payload={"command": "help"})

    command: str | None = None
    tracer: TraceLogger | None = None
    try:
        config = load_config()
        args = parse_args(argv)
        command = args.command
        as_json = args.json
        level = (args.log_level or config.log_level).upper()
        if level not in LOG_LEVELS:
            raise ParseError(f"--log-level must be one of {', '.join(LOG_LEVELS)}, got {args.log_level!r}")
        _configure_logging(level)
        tracer = open_tracer(config)
        result = execute(args, Context(config=config, tracer=tracer))
    except ExoticaError as exc:
        logger.debug("%s failed: %s", command or "argv", exc)
        return _fail(exc.kind, str(exc), command, as_json, output, errors, usage=isinstance(exc, USAGE_ERRORS))
    except Exception as exc:
        logger.exception("%s crashed", command or "argv")
        if tracer:
            tracer.log("internal_error", {"command": command, "error": repr(exc)})
        return _fail(INTERNAL_ERROR, f"internal error: {exc!r}", command, as_json, output, errors)

    if as_json:
        print(json.dumps(result.payload, ensure_ascii=False, indent=2), file=output)
    else:
        colored = command == "verify" and output is sys.stdout and output.isatty()
        _emit(render(result.payload), output, colored)
    return result


def main() -> None:
    sys.exit(run().exit_code)
