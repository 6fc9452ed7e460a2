"""Command-line entry points: validate, compile, replay, repl, serve."""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import dialog
from .errors import DatasetError, EngineError, OTMLError
from .otml import compile_manifest, load_manifest, manifest_to_json, parse_otml, validate_descriptor
from .taxonomy import Dataset, dataset_depth, load_dataset_path


@dataclass
class ServeConfig:
    dataset: str
    manifest: str
    port: int = 8080
    host: str = "127.0.0.1"
    session_ttl: float = 30 * 60.0
    static_dir: str | None = None


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 1


def cmd_validate(args) -> int:
    try:
        ds = load_dataset_path(args.dataset)
    except (OSError, DatasetError) as exc:
        return _fail(str(exc))
    facets = ", ".join(ds.facet_schema)
    print(f"{len(ds.documents)} documents, depth {dataset_depth(ds)}, facets [{facets}]")
    print(f"label vocabulary: {len(ds.label_index)} tokens, "
          f"term vocabulary: {len(ds.term_index)} tokens")
    return 0


def cmd_compile(args) -> int:
    try:
        with open(args.otml, "rb") as fh:
            descriptor = parse_otml(fh.read())
    except (OSError, OTMLError) as exc:
        return _fail(str(exc))
    dataset_path = os.path.join(os.path.dirname(os.path.abspath(args.otml)),
                                descriptor.dataset_path)
    try:
        ds = load_dataset_path(dataset_path)
    except (OSError, DatasetError) as exc:
        return _fail(str(exc))
    findings = validate_descriptor(descriptor, ds)
    for f in findings:
        print(f"{f.severity}: {f.message}", file=sys.stderr)
    if any(f.severity == "error" for f in findings):
        return 1
    manifest = compile_manifest(descriptor, ds)
    try:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(manifest_to_json(manifest))
    except OSError as exc:
        return _fail(str(exc))
    print(f"wrote {args.output}")
    return 0


def _parse_script_line(line: str, lineno: int) -> tuple[str, object] | None:
    line = line.strip()
    if not line:
        return None
    try:
        entry = json.loads(line)
    except json.JSONDecodeError as exc:
        raise ValueError(f"line {lineno}: invalid JSON: {exc}") from exc
    if not isinstance(entry, dict) or not isinstance(entry.get("action"), str):
        raise ValueError(f"line {lineno}: expected an object with an 'action' string")
    return entry["action"], entry.get("arg")


def cmd_replay(args) -> int:
    try:
        ds = load_dataset_path(args.dataset)
        with open(args.script, encoding="utf-8") as fh:
            lines = fh.readlines()
    except (OSError, DatasetError) as exc:
        return _fail(str(exc))
    state = dialog.new_dialog(ds, args.mode)
    for lineno, raw in enumerate(lines, start=1):
        try:
            parsed = _parse_script_line(raw, lineno)
        except ValueError as exc:
            return _fail(str(exc))
        if parsed is None:
            continue
        action, arg = parsed
        try:
            state, payload = dialog.apply_action(state, action, arg)
        except EngineError as exc:
            print(f"error {exc.code} {exc.detail}")
            if args.strict:
                return 2
            continue
        print(f"ok {action} remaining={payload['view']['remaining']}")
        for doc in payload.get("results", []):
            print(f"result {doc['id']}\t{doc['title']}\t{doc['uri']}")
    print("final view:")
    print(json.dumps(dialog.view(state), indent=2, sort_keys=True))
    return 0


def _echo_focus(state) -> None:
    snapshot = dialog.view(state)
    for child in snapshot["children"]:
        print(f"{child['label']} ({child['purview']})")
    for doc in snapshot["documents"]:
        print(f"doc {doc['id']} {doc['title']}")


def cmd_repl(args) -> int:
    try:
        ds = load_dataset_path(args.dataset)
    except (OSError, DatasetError) as exc:
        return _fail(str(exc))
    state = dialog.new_dialog(ds, args.mode)
    interactive = sys.stdin.isatty()
    print(f"{len(ds.documents)} documents; commands: say go pivot collect ? view reset quit")
    _echo_focus(state)
    while True:
        if interactive:
            print("> ", end="", flush=True)
        line = sys.stdin.readline()
        if not line:
            return 0
        words = line.strip().split()
        if not words:
            continue
        cmd, rest = words[0], line.strip()[len(words[0]):].strip()
        try:
            if cmd == "quit":
                return 0
            elif cmd == "say":
                state, _ = dialog.apply_action(state, "out_of_turn", rest)
                _echo_focus(state)
            elif cmd == "go":
                state, _ = dialog.apply_action(state, "navigate", rest)
                _echo_focus(state)
            elif cmd == "pivot":
                state, _ = dialog.apply_action(state, "restructure", rest.split())
                _echo_focus(state)
            elif cmd == "?":
                state, payload = dialog.apply_action(state, "vocabulary")
                print("labels:")
                for label, n in payload["vocabulary"]["labels"]:
                    print(f"  {label} ({n})")
                print("terms:")
                for term, n in payload["vocabulary"]["terms"]:
                    print(f"  {term} ({n})")
            elif cmd == "collect":
                state, payload = dialog.apply_action(state, "collect")
                for doc in payload["results"]:
                    print(f"result {doc['id']}\t{doc['title']}\t{doc['uri']}")
            elif cmd == "reset":
                state, _ = dialog.apply_action(state, "reset")
                _echo_focus(state)
            elif cmd == "view":
                print(json.dumps(dialog.view(state), indent=2, sort_keys=True))
            else:
                print("commands: say <words> | go <label> | pivot <facet...> | "
                      "collect | ? | view | reset | quit")
        except EngineError as exc:
            print(f"error {exc.code} {exc.detail}")


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    config = ServeConfig(dataset=args.dataset, manifest=args.manifest, port=args.port,
                         host=args.host, session_ttl=args.session_ttl,
                         static_dir=args.static_dir)
    try:
        ds = load_dataset_path(config.dataset)
        with open(config.manifest, "rb") as fh:
            manifest_bytes = fh.read()
        manifest = load_manifest(manifest_bytes)
    except (OSError, DatasetError, OTMLError) as exc:
        return _fail(str(exc))
    app = create_app(ds, manifest, session_ttl=config.session_ttl,
                     manifest_bytes=manifest_bytes, static_dir=config.static_dir)
    print(f"listening on http://{config.host}:{config.port}", flush=True)
    try:
        uvicorn.run(app, host=config.host, port=config.port, log_level="warning")
    except (OSError, SystemExit) as exc:
        return _fail(f"server stopped: {exc}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dlgen",
        description="Faceted dialog engine and interface generator for "
                    "classification-tree collections.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a collection file and print stats")
    p.add_argument("dataset")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("compile", help="compile an interface descriptor to a UI manifest")
    p.add_argument("otml")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("replay", help="run a line-delimited JSON action script")
    p.add_argument("dataset")
    p.add_argument("script")
    p.add_argument("--mode", choices=dialog.MODES, default="generalized")
    p.add_argument("--strict", action="store_true",
                   help="stop with exit code 2 on the first rejected action")
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("repl", help="interactive dialog session")
    p.add_argument("dataset")
    p.add_argument("--mode", choices=dialog.MODES, default="generalized")
    p.set_defaults(func=cmd_repl)

    p = sub.add_parser("serve", help="serve dialog sessions over HTTP")
    p.add_argument("--dataset", required=True)
    p.add_argument("--manifest", required=True)
    p.add_argument("--port", type=int, default=8080)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--session-ttl", type=float, default=30 * 60.0,
                   help="idle seconds before a session is evicted")
    p.add_argument("--static-dir", default=None,
                   help="optionally serve a built web client under /ui")
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
