"""``hybridscan`` command line.

Exit codes: 0 success (no Vulnerable verdict), 2 a scanned app is
Vulnerable, 1 runtime error, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from importlib import resources
from pathlib import Path
from typing import Optional, Sequence

from . import __version__, report
from .analysis import EmptyPackage, Verdict, app_roots, build_report, corpus_stats, ingest_app
from .channels import CatalogError, builtin_channels, get_channel, load_overrides
from .forge import (
    ForgeError, LoaderStyle, Role, STYLE_ALIASES, Fragment, fragment_payload, make_loader,
    plan_injection, verify_plan,
)
from .plugins import NotAPlugin, audit_companion_js, build_profile, plugin_roots, taxonomy_counts
from .sinks import SINK_CATALOG, PayloadVector, activation_matrix, classify_sink, evaluate_sink
from .sources import default_catalog, load_source_overrides

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_VULNERABLE = 2
EXIT_USAGE = 64

log = logging.getLogger("hybridscan")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fixtures_root() -> Path:
    return Path(str(resources.files("hybridscan").joinpath("fixtures")))


def _resolve(path: str) -> Path:
    """Local path, or a bundled fixture named like ``fixtures/bt-showcase``."""
    p = Path(path)
    if p.exists():
        return p
    parts = p.parts
    if parts and parts[0] == "fixtures":
        rest = Path(*parts[1:]) if len(parts) > 1 else Path()
        for candidate in (fixtures_root() / rest, fixtures_root() / "apps" / rest):
            if candidate.exists():
                return candidate
    raise FileNotFoundError(f"no such file or directory: {path}")


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS,
                   help="output format (default: text)")
    p.add_argument("--output", "-o", default=argparse.SUPPRESS, help="write output to this file atomically")
    p.add_argument("--deterministic", action="store_true", default=argparse.SUPPRESS,
                   help="omit the timestamp so repeated runs are byte-identical")
    p.add_argument("--channels", default=argparse.SUPPRESS, metavar="FILE",
                   help="channel length-limit override file")
    p.add_argument("--sources", default=argparse.SUPPRESS, metavar="FILE",
                   help="source catalog override file")
    p.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hybridscan", description="Find data-channel code injection in hybrid mobile apps.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--fixtures", action="store_true",
                        help="list the bundled case-study apps, plugins and inert payload fixtures")
    _common(parser)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    scan = sub.add_parser("scan", help="scan app directories or zip archives")
    scan.add_argument("paths", nargs="*", help="app roots (directories or .zip)")
    scan.add_argument("--corpus", help="directory whose subdirectories are apps")
    scan.add_argument("--accept-cooccurrence", action="store_true",
                      help="report source/sink co-occurrence as PotentiallyVulnerable")
    _common(scan)

    stats = sub.add_parser("stats", help="API usage and detection funnel over a corpus")
    stats.add_argument("paths", nargs="*", help="app roots")
    stats.add_argument("--corpus", help="directory whose subdirectories are apps")
    stats.add_argument("--workers", type=int, default=1)
    _common(stats)

    forge = sub.add_parser("forge", help="build a loader payload and split it to a length limit")
    forge.add_argument("--url", help="script URL the loader fetches")
    forge.add_argument("--style", default="jquery", choices=sorted(set(STYLE_ALIASES) | {s.value for s in LoaderStyle}))
    forge.add_argument("--code", help="fragment this JavaScript instead of a loader")
    forge.add_argument("--limit", type=int, help="maximum characters per fragment")
    forge.add_argument("--vector", choices=("img", "script"), default="img",
                       help="wrapper for fragments (default img onerror)")
    _common(forge)

    plan = sub.add_parser("plan", help="assign fragments to a channel's fields")
    plan.add_argument("--channel", required=True)
    plan.add_argument("--url")
    plan.add_argument("--code")
    plan.add_argument("--style", default="jquery", choices=sorted(set(STYLE_ALIASES) | {s.value for s in LoaderStyle}))
    plan.add_argument("--limit", type=int, help="fragment limit (default: the channel's field limit)")
    plan.add_argument("--field", action="append", dest="fields", help="preferred field (repeatable)")
    plan.add_argument("--verify", metavar="SINK", help="replay the plan through this sink")
    _common(plan)

    emu = sub.add_parser("emulate", help="show what a display sink would run for a string")
    emu.add_argument("--sink", help="sink API, e.g. innerHTML or html")
    emu.add_argument("--payload", help="string to display")
    emu.add_argument("--payload-file", help="read the string from a file")
    emu.add_argument("--matrix", action="store_true", help="print the full activation matrix")
    _common(emu)

    aud = sub.add_parser("audit-plugin", help="classify plugins and audit their companion JavaScript")
    aud.add_argument("path", help="a plugin directory or a directory of plugins")
    _common(aud)
    return parser


def _opt(args: argparse.Namespace, name: str, default=None):
    return getattr(args, name, default)


def _channels(args):
    path = _opt(args, "channels")
    return load_overrides(path) if path else builtin_channels()


def _catalog(args):
    path = _opt(args, "sources")
    return load_source_overrides(path) if path else default_catalog()


def _app_paths(args) -> list[Path]:
    paths = [_resolve(p) for p in args.paths]
    if args.corpus:
        paths.extend(app_roots(_resolve(args.corpus)))
    if not paths:
        raise UsageError("give at least one app path or --corpus DIR")
    return paths


# ---------------------------------------------------------------------------
# subcommands; each returns (payload_type, payload, exit code)


def cmd_scan(args):
    catalog = _catalog(args)
    paths = _app_paths(args)
    reports, skipped = [], []
    for path in paths:
        try:
            pkg = ingest_app(path)
        except EmptyPackage as exc:
            if len(paths) == 1:
                raise
            skipped.append((path.name, "EmptyPackage: no .html/.htm/.js documents"))
            continue
        reports.append(build_report(pkg, catalog, args.accept_cooccurrence))
    code = EXIT_VULNERABLE if any(r.verdict is Verdict.VULNERABLE for r in reports) else EXIT_OK
    if len(paths) == 1 and not args.corpus:
        return "scan_report", report.scan_report(reports[0]), code
    return "scan_batch", report.scan_batch(reports, skipped), code


def cmd_stats(args):
    stats = corpus_stats(_app_paths(args), _catalog(args), workers=max(1, args.workers))
    return "stats", report.corpus_stats(stats), EXIT_OK


def _inner_code(args) -> tuple[str, Optional[dict], Optional[str]]:
    if args.code:
        return args.code, None, None
    if not args.url:
        raise UsageError("give --url or --code")
    payload = make_loader(args.url, args.style)
    style = LoaderStyle(STYLE_ALIASES.get(args.style, args.style)).value
    return payload.inner_code, report.loader(payload, style), payload.markup


def cmd_forge(args):
    code, load, markup = _inner_code(args)
    if args.limit is not None and args.limit < 1:
        raise UsageError("--limit must be positive")
    if not code:
        # script-tag loader: no inline code to split, the element is the payload
        if args.limit is not None and len(markup) > args.limit:
            raise ForgeError(f"script-tag loader is {len(markup)} chars and cannot be split; "
                             f"use --style jquery or dynamic")
        frags = [Fragment(0, markup, Role.DIRECT)]
    elif args.limit is None:
        frags = fragment_payload(code, len(markup) if markup else 10**6, _vector(args.vector))
    else:
        frags = fragment_payload(code, args.limit, _vector(args.vector))
    return "fragments", report.fragments(frags, args.limit, code, load), EXIT_OK


def _vector(name: str) -> PayloadVector:
    return PayloadVector.script_tag() if name == "script" else PayloadVector.img_onerror()


def cmd_plan(args):
    channel = get_channel(args.channel, _channels(args))
    code, _, markup = _inner_code(args)
    if not code:
        raise ForgeError("plans need inline code; the script-tag loader has none")
    names = args.fields or list(channel.field_names)
    limit = args.limit or max(channel.field(n).max_length for n in names)
    frags = fragment_payload(code, limit)
    plan = plan_injection(frags, channel, args.fields)
    verification = sink_name = None
    if args.verify:
        sink = classify_sink(args.verify)
        if sink is None:
            raise UsageError(f"unknown sink {args.verify!r}")
        verification = verify_plan(plan, sink)
        sink_name = sink.api_name
    return "injection_plan", report.injection_plan(plan, verification, sink_name), EXIT_OK


def cmd_emulate(args):
    if args.matrix:
        return "activation_matrix", report.activation_matrix(activation_matrix(), SINK_CATALOG), EXIT_OK
    if not args.sink:
        raise UsageError("give --sink (or --matrix)")
    sink = classify_sink(args.sink)
    if sink is None:
        raise UsageError(f"{args.sink!r} is not a display sink")
    if args.payload_file:
        payload = Path(args.payload_file).read_text(encoding="utf-8")
    elif args.payload is not None:
        payload = args.payload
    else:
        raise UsageError("give --payload or --payload-file")
    return "activation", report.activation(sink, payload, evaluate_sink(sink, payload)), EXIT_OK


def cmd_audit(args):
    roots = plugin_roots(_resolve(args.path))
    if not roots:
        raise NotAPlugin(f"no plugins found under {args.path}")
    items = []
    for root in roots:
        prof = build_profile(root)
        items.append((prof, audit_companion_js(prof)))
    return "plugin_audit", report.plugin_audit(items, taxonomy_counts(p for p, _ in items)), EXIT_OK


def cmd_fixtures(args):
    root = fixtures_root()
    index = json.loads((root / "payloads" / "index.json").read_text(encoding="utf-8"))
    payloads = []
    for entry in index["payloads"]:
        text = (root / "payloads" / entry["file"]).read_text(encoding="utf-8")
        payloads.append({**entry, "length": len(text)})
    payload = {
        "apps_dir": str(root / "apps"),
        "apps": sorted(p.name for p in (root / "apps").iterdir() if p.is_dir()),
        "plugins_dir": str(root / "plugins"),
        "payloads_dir": str(root / "payloads"),
        "payloads": payloads,
    }
    return "fixtures", payload, EXIT_OK


COMMANDS = {
    "scan": cmd_scan,
    "stats": cmd_stats,
    "forge": cmd_forge,
    "plan": cmd_plan,
    "emulate": cmd_emulate,
    "audit-plugin": cmd_audit,
}


def _color_enabled(stream) -> bool:
    if os.environ.get("HYBRIDSCAN_NO_COLOR") or os.environ.get("NO_COLOR"):
        return False
    return hasattr(stream, "isatty") and stream.isatty()


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    logging.basicConfig(level=logging.INFO if _opt(args, "verbose") else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=stderr)
    fmt = _opt(args, "format", "text")
    output = _opt(args, "output")
    try:
        if args.fixtures:
            ptype, payload, code = cmd_fixtures(args)
        elif args.command is None:
            parser.print_usage(stderr)
            print("hybridscan: error: a subcommand is required", file=stderr)
            return EXIT_USAGE
        else:
            ptype, payload, code = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"hybridscan: error: {exc}", file=stderr)
        return EXIT_USAGE
    except (ForgeError, EmptyPackage, NotAPlugin, CatalogError, FileNotFoundError,
            KeyError, ValueError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"hybridscan: {type(exc).__name__}: {msg}", file=stderr)
        return EXIT_ERROR

    style = report.Style(not output and _color_enabled(stdout))
    text = report.render(ptype, payload, fmt, bool(_opt(args, "deterministic")), style)
    if output:
        report.write_atomic(output, text)
    else:
        stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
