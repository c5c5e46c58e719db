"""Command-line entry points: check a model, format one, or run the server."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .lang import load_spec, parse, print_spec


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def cmd_check(args: argparse.Namespace) -> int:
    result = load_spec(_read(args.file))
    for diagnostic in result.diagnostics:
        print(diagnostic, file=sys.stderr)
    if not result.ok:
        return 1
    spec = result.spec
    acts = sum(1 for d in spec.declarations if d.is_act)
    print(f"ok: {len(spec.declarations)} declarations, {acts} acts, "
          f"{len(spec.statements)} initial statements")
    return 0


def cmd_fmt(args: argparse.Namespace) -> int:
    source = _read(args.file)
    result = parse(source)
    for diagnostic in result.diagnostics:
        print(diagnostic, file=sys.stderr)
    if not result.ok:
        return 1
    formatted = print_spec(result.spec)
    if args.write and args.file != "-":
        Path(args.file).write_text(formatted, encoding="utf-8")
    else:
        sys.stdout.write(formatted)
    return 0


def cmd_serve(_args: argparse.Namespace) -> int:
    import uvicorn

    from .service import Settings, build_service, create_app

    settings = Settings.from_env()
    app = create_app(build_service(settings))
    uvicorn.run(app, host=settings.host, port=settings.port, log_level="info")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="normcase",
        description="Validate and format norm models, or serve cases over HTTP.")
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="parse and validate a model file")
    check.add_argument("file", help="path to the model, or - for stdin")
    check.set_defaults(func=cmd_check)

    fmt = sub.add_parser("fmt", help="reprint a model in canonical layout")
    fmt.add_argument("file", help="path to the model, or - for stdin")
    fmt.add_argument("--write", action="store_true",
                     help="rewrite the file in place instead of printing")
    fmt.set_defaults(func=cmd_fmt)

    serve = sub.add_parser(
        "serve", help="run the case service (configured via NORMCASE_* env)")
    serve.set_defaults(func=cmd_serve)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
