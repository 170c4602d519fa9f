"""Three-condition vulnerability scan of a hybrid app's web layer.

An app is flagged when it (1) reads data from an external injection
channel, (2) displays information through an executing sink, and (3) the
displayed value flows from the channel.  Condition 3 is decided by a
flow-insensitive, intra-procedural taint pass seeded at the parameters of
source callbacks; pairs of sources and executing sinks in the same
document without such a path are kept as ``Cooccurrence`` findings.

No sanitizers are modeled.
"""

from __future__ import annotations

import enum
import io
import logging
import os
import re
import zipfile
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path, PurePosixPath
from typing import Iterable, Iterator, Optional, Sequence, Union

from . import jsparse as js
from .html_fragment import parse_fragment
from .jslex import NAME, PUNCT, STR, Token
from .sinks import SINK_CATALOG, SinkKind, classify_sink
from .sources import (
    BRIDGE_CALLS, EXTERNAL_CHANNELS, SourceCatalog, SourceSpec, default_catalog,
)

log = logging.getLogger(__name__)

HTML_SUFFIXES = (".html", ".htm")
JS_SUFFIXES = (".js",)
LEXICAL_NOTE = "lexical-only"
CALLBACK_UNRESOLVED = "<callback>"

_SINK_ATTRIBUTES = frozenset({"innerHTML", "outerHTML", "innerText", "outerText", "textContent"})
_JQUERY_ONLY = frozenset({"append", "prepend", "before", "after", "add", "replaceAll", "replaceWith", "text"})
_BOOLEAN_OPS = frozenset({"==", "!=", "===", "!==", "<", ">", "<=", ">=", "instanceof", "in"})
_BRIDGE_SCRIPT = re.compile(r"(^|/)(cordova|phonegap)([-.][\w.]*)?\.js$", re.I)
_MANIFEST_PLUGIN = re.compile(r"<(?:gap:)?(?:plugin|feature)\b[^>]*?\bname\s*=\s*[\"']([^\"']+)[\"']", re.I)
_CORDOVA_PLUGINS_ID = re.compile(r"[\"']id[\"']\s*:\s*[\"']([^\"']+)[\"']")


class EmptyPackage(ValueError):
    pass


class Framework(str, enum.Enum):
    PHONEGAP_LIKE = "PhoneGapLike"
    UNKNOWN = "Unknown"


class Confidence(str, enum.Enum):
    CONFIRMED = "Confirmed"
    COOCCURRENCE = "Cooccurrence"


class Verdict(str, enum.Enum):
    VULNERABLE = "Vulnerable"
    POTENTIALLY_VULNERABLE = "PotentiallyVulnerable"
    NOT_VULNERABLE = "NotVulnerable"


# ---------------------------------------------------------------------------
# package model


@dataclass(frozen=True, order=True)
class Location:
    path: str
    line: int
    column: int

    def __str__(self) -> str:
        return f"{self.path}:{self.line}:{self.column}"


@dataclass
class ScriptUnit:
    """One parseable chunk of JavaScript: a .js file or an inline script."""

    text: str
    line: int = 1
    col: int = 1
    pos: int = 0

    @cached_property
    def program(self) -> js.Program:
        return js.parse(self.text, self.line, self.col, self.pos)


@dataclass
class Document:
    path: str
    kind: str  # "Html" or "Js"
    source: str
    script_srcs: tuple[str, ...] = ()
    units: list[ScriptUnit] = field(default_factory=list)

    def slice(self, node: js.Node) -> str:
        """Source text of ``node`` (offsets are relative to this document)."""
        return self.source[node.pos:node.end]


@dataclass
class AppPackage:
    root_path: str
    app_id: str
    documents: list[Document]
    framework: Framework = Framework.UNKNOWN
    declared_plugins: list[str] = field(default_factory=list)
    warnings: list[dict] = field(default_factory=list)
    has_manifest: bool = False


def _html_document(path: str, text: str) -> Document:
    frag = parse_fragment(text)
    units: list[ScriptUnit] = []
    srcs: list[str] = []
    lowered = text.lower()
    cursor = 0
    for el in frag.elements():
        if el.tag != "script":
            continue
        src = el.get("src")
        open_at = lowered.find("<script", cursor)
        body_at = text.find(">", open_at) + 1 if open_at >= 0 else -1
        if open_at >= 0:
            cursor = body_at
        if src is not None:
            srcs.append(src)
            continue
        kind = (el.get("type") or "").lower()
        if kind and "javascript" not in kind and kind not in ("module", "text/ecmascript"):
            continue
        body = el.text()
        if not body.strip() or body_at <= 0:
            continue
        start = text.find(body, body_at)
        if start < 0:
            continue
        before = text[:start]
        line = before.count("\n") + 1
        col = start - (before.rfind("\n") + 1) + 1
        units.append(ScriptUnit(body, line, col, start))
        cursor = start + len(body)
    return Document(path, "Html", text, tuple(srcs), units)


def _read_tree(root: Path) -> Iterator[tuple[str, Union[bytes, Exception]]]:
    for dirpath, dirnames, filenames in os.walk(root):
        dirnames.sort()
        for name in sorted(filenames):
            full = Path(dirpath) / name
            rel = full.relative_to(root).as_posix()
            try:
                yield rel, full.read_bytes()
            except OSError as exc:
                yield rel, exc


def _read_zip(path: Path) -> Iterator[tuple[str, Union[bytes, Exception]]]:
    with zipfile.ZipFile(path) as zf:
        for info in sorted(zf.infolist(), key=lambda i: i.filename):
            if info.is_dir():
                continue
            name = PurePosixPath(info.filename)
            if name.is_absolute() or ".." in name.parts:
                yield info.filename, ValueError("unsafe member path")
                continue
            try:
                yield name.as_posix(), zf.read(info)
            except (OSError, zipfile.BadZipFile, RuntimeError) as exc:
                yield info.filename, exc


def _decode(data: bytes) -> str:
    try:
        return data.decode("utf-8-sig")
    except UnicodeDecodeError:
        return data.decode("latin-1")


def ingest_app(root_path: Union[str, Path]) -> AppPackage:
    """Collect HTML and JS documents under ``root_path`` (a directory or zip)."""
    root = Path(root_path)
    if not root.exists():
        raise FileNotFoundError(root)
    if root.is_file() and zipfile.is_zipfile(root):
        entries = _read_zip(root)
        app_id = root.stem
    elif root.is_dir():
        entries = _read_tree(root)
        app_id = root.resolve().name
    else:
        raise EmptyPackage(f"{root} is neither a directory nor a zip archive")

    documents: list[Document] = []
    warnings: list[dict] = []
    plugins: list[str] = []
    has_manifest = False
    for rel, data in entries:
        lower = rel.lower()
        base = lower.rsplit("/", 1)[-1]
        interesting = lower.endswith(HTML_SUFFIXES + JS_SUFFIXES) or base in (
            "config.xml", "plugin.xml", "cordova_plugins.json",
        )
        if not interesting:
            continue
        if isinstance(data, Exception):
            warnings.append({"path": rel, "reason": str(data)})
            log.warning("skipping unreadable %s: %s", rel, data)
            continue
        text = _decode(data)
        if base in ("config.xml", "plugin.xml"):
            found = _MANIFEST_PLUGIN.findall(text)
            if found or base == "plugin.xml":
                has_manifest = True
            plugins.extend(found)
            continue
        if base in ("cordova_plugins.js", "cordova_plugins.json"):
            has_manifest = True
            plugins.extend(_CORDOVA_PLUGINS_ID.findall(text))
            if base.endswith(".json"):
                continue
        if lower.endswith(HTML_SUFFIXES):
            documents.append(_html_document(rel, text))
        else:
            documents.append(Document(rel, "Js", text, (), [ScriptUnit(text)]))

    if not documents:
        raise EmptyPackage(f"no .html/.htm/.js documents under {root}")

    pkg = AppPackage(str(root), app_id, documents, declared_plugins=sorted(set(plugins)),
                     warnings=warnings, has_manifest=has_manifest)
    pkg.framework = detect_framework(pkg)
    return pkg


def _bridge_calls(unit: ScriptUnit) -> Iterator[js.Call]:
    for node in unit.program.walk():
        if isinstance(node, js.Call) and len(node.args) == 5 and js.dotted_name(node.callee) in BRIDGE_CALLS:
            yield node


def detect_framework(pkg: AppPackage) -> Framework:
    if pkg.has_manifest:
        return Framework.PHONEGAP_LIKE
    for doc in pkg.documents:
        if any(_BRIDGE_SCRIPT.search(src.split("?", 1)[0]) for src in doc.script_srcs):
            return Framework.PHONEGAP_LIKE
        if doc.kind == "Js" and _BRIDGE_SCRIPT.search(doc.path):
            return Framework.PHONEGAP_LIKE
        for unit in doc.units:
            if any(True for _ in _bridge_calls(unit)):
                return Framework.PHONEGAP_LIKE
    return Framework.UNKNOWN


# ---------------------------------------------------------------------------
# sources and sinks


@dataclass(frozen=True)
class SourceUse:
    location: Location
    channel: str
    api: str
    tainted_bindings: tuple[str, ...]
    lexical_only: bool = False

    @property
    def external(self) -> bool:
        return self.channel in EXTERNAL_CHANNELS


@dataclass(frozen=True)
class SinkUse:
    location: Location
    sink: SinkKind
    argument_expr: str
    lexical_only: bool = False


@dataclass(frozen=True)
class PathStep:
    name: str
    location: Location
    kind: str  # "source", "propagate", "sink"


@dataclass(frozen=True)
class Finding:
    source: SourceUse
    sink: SinkUse
    path: tuple[PathStep, ...]
    confidence: Confidence

    def sort_key(self) -> tuple:
        return (self.sink.location, self.source.location, self.confidence.value)


@dataclass
class _SourceHit:
    use: SourceUse
    doc: Document
    scope: Optional[js.Node]  # function (or program) the data is visible in
    seeds: tuple[str, ...]
    seed_nodes: tuple[js.Node, ...] = ()  # return-style source calls


@dataclass
class _SinkHit:
    use: SinkUse
    doc: Document
    node: Optional[js.Node]
    args: tuple[js.Node, ...]


def _loc(doc: Document, line: int, col: int) -> Location:
    return Location(doc.path, line, col)


def _summary(doc: Document, nodes: Sequence[js.Node], limit: int = 80) -> str:
    text = ", ".join(doc.slice(n) for n in nodes)
    text = " ".join(text.split())
    return text if len(text) <= limit else text[: limit - 3] + "..."


def _functions_by_name(doc: Document) -> dict[str, js.Function]:
    named: dict[str, js.Function] = {}
    for unit in doc.units:
        for node in unit.program.walk():
            if isinstance(node, js.Function) and node.name and node.name not in named:
                named[node.name] = node
            elif isinstance(node, js.VarDecl):
                for target, init in node.decls:
                    if isinstance(target, js.Ident) and isinstance(init, js.Function):
                        named.setdefault(target.name, init)
            elif isinstance(node, js.Property) and isinstance(node.value, js.Function) and node.key:
                named.setdefault(node.key, node.value)
            elif isinstance(node, js.Assign) and isinstance(node.value, js.Function):
                name = js.dotted_name(node.target)
                if name:
                    named.setdefault(name, node.value)
                    named.setdefault(name.rsplit(".", 1)[-1], node.value)
    return named


def _resolve_callback(arg: Optional[js.Node], named: dict[str, js.Function]) -> Optional[js.Function]:
    if isinstance(arg, js.Function):
        return arg
    if isinstance(arg, js.Call) and isinstance(arg.callee, js.Member) and arg.callee.prop == "bind":
        return _resolve_callback(arg.callee.obj, named)
    name = js.dotted_name(arg) if arg is not None else None
    if name:
        if name in named:
            return named[name]
        tail = name.rsplit(".", 1)[-1]
        if tail in named:
            return named[tail]
    return None


def _callback_arg(call: js.Call, position: str) -> Optional[js.Node]:
    idx_s, _, key = position.partition(".")
    idx = int(idx_s)
    if idx >= len(call.args):
        return None
    arg = call.args[idx]
    if not key:
        return arg
    if isinstance(arg, js.ObjectLit):
        for prop in arg.props:
            if isinstance(prop, js.Property) and prop.key == key:
                return prop.value
    return None


def _enclosing(unit: ScriptUnit) -> dict[int, js.Node]:
    """Map id(node) -> innermost enclosing Function (or the Program)."""
    out: dict[int, js.Node] = {}
    stack: list[tuple[js.Node, js.Node]] = [(unit.program, unit.program)]
    while stack:
        node, scope = stack.pop()
        out[id(node)] = scope
        inner = node if isinstance(node, js.Function) else scope
        for child in node.children():
            stack.append((child, inner))
    return out


def _assigned_name(call: js.Call, unit: ScriptUnit) -> Optional[str]:
    for node in unit.program.walk():
        if isinstance(node, js.VarDecl):
            for target, init in node.decls:
                if init is call and isinstance(target, js.Ident):
                    return target.name
        elif isinstance(node, js.Assign) and node.value is call and isinstance(node.target, js.Ident):
            return node.target.name
    return None


def _string_value(node: Optional[js.Node]) -> Optional[str]:
    if isinstance(node, js.Literal) and node.kind == "str":
        return str(node.value)
    return None


def _source_hits(pkg: AppPackage, catalog: SourceCatalog) -> list[_SourceHit]:
    hits: list[_SourceHit] = []
    for doc in pkg.documents:
        named = _functions_by_name(doc)
        for unit in doc.units:
            scopes: Optional[dict[int, js.Node]] = None
            for node in unit.program.walk():
                if not isinstance(node, js.Call):
                    continue
                dotted = js.dotted_name(node.callee)
                hit = None
                if dotted in BRIDGE_CALLS and len(node.args) == 5:
                    service = _string_value(node.args[2])
                    channel = catalog.service_channel(service)
                    api = f"{dotted}({service or '?'})"
                    hit = _callback_hit(doc, node, api, channel, named, (node.args[0],))
                elif dotted and dotted.endswith("addEventListener") and node.args:
                    spec = catalog.event(_string_value(node.args[0]) or "")
                    if spec and len(node.args) > 1:
                        hit = _callback_hit(doc, node, f"event:{spec.api}", spec.channel, named, (node.args[1],))
                elif dotted:
                    spec = catalog.lookup(dotted, ("callback", "return"))
                    if spec and spec.kind == "callback":
                        args = tuple(_callback_arg(node, p) for p in spec.callbacks)
                        hit = _callback_hit(doc, node, spec.api, spec.channel, named, args)
                    elif spec and spec.kind == "return":
                        if scopes is None:
                            scopes = _enclosing(unit)
                        binding = _assigned_name(node, unit) or f"{spec.api}()"
                        use = SourceUse(_loc(doc, node.line, node.col), spec.channel, spec.api, (binding,))
                        hit = _SourceHit(use, doc, scopes.get(id(node), unit.program), (), (node,))
                if hit is None and isinstance(node.callee, js.Member) and node.callee.prop == "then":
                    inner = node.callee.obj
                    if isinstance(inner, js.Call):
                        pdotted = js.dotted_name(inner.callee)
                        spec = catalog.lookup(pdotted, ("promise",)) if pdotted else None
                        if spec:
                            hit = _callback_hit(doc, inner, spec.api, spec.channel, named, tuple(node.args[:1]))
                if hit is not None:
                    hits.append(hit)
            hits.extend(_lexical_sources(doc, unit, catalog))
    return hits


def _callback_hit(
    doc: Document, call: js.Call, api: str, channel: str,
    named: dict[str, js.Function], candidates: Iterable[Optional[js.Node]],
) -> _SourceHit:
    for arg in candidates:
        fn = _resolve_callback(arg, named)
        if fn is not None and fn.param_names():
            params = tuple(fn.param_names())
            use = SourceUse(_loc(doc, call.line, call.col), channel, api, params)
            return _SourceHit(use, doc, fn, params)
    use = SourceUse(_loc(doc, call.line, call.col), channel, api, (CALLBACK_UNRESOLVED,))
    return _SourceHit(use, doc, None, ())


def _is_jquery_receiver(node: js.Node, jq_names: set[str]) -> bool:
    while True:
        if isinstance(node, js.Call):
            name = js.dotted_name(node.callee)
            if name in ("$", "jQuery"):
                return True
            node = node.callee
        elif isinstance(node, js.Member):
            node = node.obj
        elif isinstance(node, js.Ident):
            return node.name.startswith("$") or node.name in jq_names
        else:
            return False


def _jquery_names(doc: Document) -> set[str]:
    names: set[str] = set()
    for unit in doc.units:
        for node in unit.program.walk():
            pairs: list[tuple[js.Node, Optional[js.Node]]] = []
            if isinstance(node, js.VarDecl):
                pairs = list(node.decls)
            elif isinstance(node, js.Assign) and node.op == "=":
                pairs = [(node.target, node.value)]
            for target, init in pairs:
                if isinstance(target, js.Ident) and init is not None and _is_jquery_receiver(init, set()):
                    if isinstance(init, js.Call):
                        names.add(target.name)
    return names


def _sink_hits(pkg: AppPackage) -> list[_SinkHit]:
    hits: list[_SinkHit] = []
    for doc in pkg.documents:
        jq = _jquery_names(doc)
        for unit in doc.units:
            for node in unit.program.walk():
                hit = _sink_from_node(doc, node, jq)
                if hit is not None:
                    hits.append(hit)
            hits.extend(_lexical_sinks(doc, unit))
    return hits


def _sink_from_node(doc: Document, node: js.Node, jq: set[str]) -> Optional[_SinkHit]:
    if isinstance(node, js.Assign) and isinstance(node.target, js.Member):
        prop = node.target.prop
        if prop in _SINK_ATTRIBUTES and node.op in ("=", "+="):
            sink = classify_sink(prop)
            loc = _loc(doc, node.target.line, node.target.col)
            return _SinkHit(SinkUse(loc, sink, _summary(doc, [node.value])), doc, node, (node.value,))
        return None
    if not (isinstance(node, js.Call) and not node.is_new and isinstance(node.callee, js.Member)):
        return None
    prop = node.callee.prop
    recv = node.callee.obj
    if prop is None or not node.args:
        return None
    if prop in ("write", "writeln"):
        name = js.dotted_name(recv) or ""
        if not (name == "document" or name.endswith(".document")):
            return None
    elif prop == "appendChild" or prop == "html":
        pass
    elif prop in _JQUERY_ONLY:
        if not _is_jquery_receiver(recv, jq):
            return None
    else:
        return None
    sink = classify_sink(prop)
    if sink is None:
        return None
    loc = _loc(doc, node.line, node.col)
    args = tuple(node.args)
    return _SinkHit(SinkUse(loc, sink, _summary(doc, args)), doc, node, args)


# token-level fallback for statements the parser skipped ----------------------


def _skipped_tokens(unit: ScriptUnit) -> Iterator[list[Token]]:
    toks = unit.program.tokens
    for begin, end in unit.program.skipped:
        yield toks[begin:end]


def _lexical_sinks(doc: Document, unit: ScriptUnit) -> list[_SinkHit]:
    hits = []
    for toks in _skipped_tokens(unit):
        for i in range(1, len(toks) - 1):
            t = toks[i]
            if t.kind != NAME or not toks[i - 1].is_punct("."):
                continue
            nxt = toks[i + 1]
            name = t.value
            ok = False
            if name in _SINK_ATTRIBUTES and nxt.is_punct("=", "+="):
                ok = True
            elif nxt.is_punct("(") and i + 2 < len(toks) and not toks[i + 2].is_punct(")"):
                before = toks[i - 2] if i >= 2 else None
                if name in ("appendChild", "html"):
                    ok = True
                elif name in ("write", "writeln"):
                    ok = before is not None and before.is_name("document")
                elif name in _JQUERY_ONLY:
                    ok = before is not None and before.is_punct(")")
            if ok:
                sink = classify_sink(name)
                use = SinkUse(_loc(doc, t.line, t.col), sink, LEXICAL_NOTE, lexical_only=True)
                hits.append(_SinkHit(use, doc, None, ()))
    return hits


def _lexical_sources(doc: Document, unit: ScriptUnit, catalog: SourceCatalog) -> list[_SourceHit]:
    hits = []
    for toks in _skipped_tokens(unit):
        i = 0
        while i < len(toks):
            if toks[i].kind != NAME or (i > 0 and toks[i - 1].is_punct(".")):
                i += 1
                continue
            j = i
            parts = [toks[i].value]
            while j + 2 < len(toks) and toks[j + 1].is_punct(".") and toks[j + 2].kind == NAME:
                parts.append(toks[j + 2].value)
                j += 2
            if j + 1 < len(toks) and toks[j + 1].is_punct("("):
                dotted = ".".join(parts)
                spec = catalog.lookup(dotted, ("callback", "return", "promise"))
                if spec is None and dotted in BRIDGE_CALLS:
                    svc = next((t.cooked for t in toks[j + 1:] if t.kind == STR), None)
                    spec = SourceSpec(f"{dotted}({svc or '?'})", catalog.service_channel(svc))
                if spec is not None:
                    bindings = _lexical_params(toks, j + 2) or [CALLBACK_UNRESOLVED]
                    use = SourceUse(_loc(doc, toks[i].line, toks[i].col), spec.channel, spec.api,
                                    tuple(bindings), lexical_only=True)
                    hits.append(_SourceHit(use, doc, None, ()))
            i = j + 1
    return hits


def _lexical_params(toks: list[Token], k: int) -> list[str]:
    if k + 1 < len(toks) and toks[k].is_name("function"):
        k += 1
        if toks[k].kind == NAME:
            k += 1
        if k < len(toks) and toks[k].is_punct("("):
            names = []
            k += 1
            while k < len(toks) and not toks[k].is_punct(")"):
                if toks[k].kind == NAME:
                    names.append(toks[k].value)
                k += 1
            return names
    return []


def find_sources(pkg: AppPackage, catalog: Optional[SourceCatalog] = None) -> list[SourceUse]:
    hits = _source_hits(pkg, catalog or default_catalog())
    return sorted({h.use for h in hits}, key=lambda u: (u.location, u.api))


def find_sinks(pkg: AppPackage) -> list[SinkUse]:
    return sorted({h.use for h in _sink_hits(pkg)}, key=lambda u: (u.location, u.sink.api_name))


# ---------------------------------------------------------------------------
# taint


def _root_name(node: js.Node) -> Optional[str]:
    while isinstance(node, (js.Member, js.Call)):
        node = node.obj if isinstance(node, js.Member) else node.callee
    return node.name if isinstance(node, js.Ident) else None


@dataclass
class _Edge:
    targets: tuple[str, ...]
    values: tuple[js.Node, ...]
    line: int
    col: int


_MUTATORS = frozenset({"push", "unshift", "splice", "set", "setItem"})


def _edges(scope: js.Node) -> list[_Edge]:
    out: list[_Edge] = []
    for node in scope.walk():
        if isinstance(node, js.VarDecl):
            for target, init in node.decls:
                if init is not None:
                    out.append(_Edge(tuple(js.binding_names(target)), (init,), target.line, target.col))
        elif isinstance(node, js.Assign):
            target = node.target
            if isinstance(target, js.Member):
                if target.prop in _SINK_ATTRIBUTES:
                    continue
                root = _root_name(target)
                names = (root,) if root else ()
            else:
                names = tuple(js.binding_names(target))
            if names:
                out.append(_Edge(names, (node.value,), target.line, target.col))
        elif isinstance(node, js.Loop) and node.each and node.init is not None:
            init = node.init
            names = tuple(
                n for t, _ in init.decls for n in js.binding_names(t)
            ) if isinstance(init, js.VarDecl) else tuple(js.binding_names(init))
            if names and node.test is not None:
                out.append(_Edge(names, (node.test,), init.line, init.col))
        elif isinstance(node, js.Call):
            callee = node.callee
            inputs: list[js.Node] = [a for a in node.args if not isinstance(a, js.Function)]
            if isinstance(callee, js.Member):
                inputs.append(callee.obj)
                if callee.prop in _MUTATORS:
                    root = _root_name(callee.obj)
                    if root and node.args:
                        out.append(_Edge((root,), tuple(node.args), node.line, node.col))
            for arg in node.args:
                if isinstance(arg, js.Function) and inputs:
                    names = tuple(arg.param_names())
                    if names:
                        out.append(_Edge(names, tuple(inputs), arg.line, arg.col))
    return out


class _Taint:
    def __init__(self, seeds: dict[str, Location], seed_nodes: dict[int, str]) -> None:
        # name -> (predecessor name or None, location where it became tainted)
        self.facts: dict[str, tuple[Optional[str], Location]] = {
            n: (None, loc) for n, loc in seeds.items()
        }
        self.seed_nodes = seed_nodes

    def source_of(self, node: Optional[js.Node]) -> Optional[str]:
        """Name of a tainted binding whose value reaches ``node``'s result."""
        if node is None:
            return None
        if id(node) in self.seed_nodes:
            return self.seed_nodes[id(node)]
        if isinstance(node, js.Ident):
            return node.name if node.name in self.facts else None
        if isinstance(node, js.Member):
            return self.source_of(node.obj)
        if isinstance(node, js.Call):
            if isinstance(node.callee, js.Member):
                found = self.source_of(node.callee.obj)
                if found:
                    return found
            return self._first(node.args)
        if isinstance(node, js.Binary):
            if node.op in _BOOLEAN_OPS:
                return None
            return self.source_of(node.left) or self.source_of(node.right)
        if isinstance(node, js.Unary):
            if node.op in ("typeof", "!", "void", "delete"):
                return None
            return self.source_of(node.arg)
        if isinstance(node, js.Conditional):
            return self.source_of(node.then) or self.source_of(node.other)
        if isinstance(node, js.Assign):
            return self.source_of(node.value)
        if isinstance(node, js.Sequence):
            return self.source_of(node.exprs[-1]) if node.exprs else None
        if isinstance(node, js.TemplateLit):
            return self._first(node.exprs)
        if isinstance(node, js.ArrayLit):
            return self._first(node.elements)
        if isinstance(node, js.ObjectLit):
            return self._first(node.props)
        if isinstance(node, (js.Property, js.Spread)):
            return self.source_of(node.value if isinstance(node, js.Property) else node.arg)
        return None

    def _first(self, nodes: Iterable[js.Node]) -> Optional[str]:
        for n in nodes:
            found = self.source_of(n)
            if found:
                return found
        return None

    def propagate(self, edges: list[_Edge], path: str) -> None:
        changed = True
        while changed:
            changed = False
            for edge in edges:
                pending = [t for t in edge.targets if t not in self.facts]
                if not pending:
                    continue
                src = self._first(edge.values)
                if src is None:
                    continue
                for t in pending:
                    self.facts[t] = (src, Location(path, edge.line, edge.col))
                changed = True

    def chain(self, name: str) -> list[tuple[str, Location]]:
        steps = []
        seen = set()
        while name is not None and name not in seen:
            seen.add(name)
            pred, loc = self.facts.get(name, (None, None))
            steps.append((name, loc))
            name = pred
        return list(reversed(steps))


def _within(scope: js.Node, node: js.Node) -> bool:
    return scope.pos <= node.pos and node.end <= scope.end and node.end > node.pos


def _confirmed(source: _SourceHit, sinks: Sequence[_SinkHit]) -> list[Finding]:
    if source.scope is None:
        return []
    seeds = {name: source.use.location for name in source.seeds}
    seed_nodes = {id(n): f"{source.use.api}()" for n in source.seed_nodes}
    seeds.update((name, source.use.location) for name in seed_nodes.values())
    taint = _Taint(seeds, seed_nodes)
    taint.propagate(_edges(source.scope), source.doc.path)
    found = []
    for hit in sinks:
        if hit.doc is not source.doc or hit.node is None or not hit.use.sink.executes:
            continue
        if not _within(source.scope, hit.node):
            continue
        origin = taint._first(hit.args)
        if origin is None:
            continue
        steps = []
        for i, (name, loc) in enumerate(taint.chain(origin)):
            steps.append(PathStep(name, loc or source.use.location, "source" if i == 0 else "propagate"))
        steps.append(PathStep(f"{hit.use.sink.api_name} argument", hit.use.location, "sink"))
        found.append(Finding(source.use, hit.use, tuple(steps), Confidence.CONFIRMED))
    return found


def _findings(sources: Sequence[_SourceHit], sinks: Sequence[_SinkHit]) -> list[Finding]:
    findings: dict[tuple, Finding] = {}
    for src in sources:
        for f in _confirmed(src, sinks):
            findings.setdefault((f.source, f.sink), f)
    for src in sources:
        if not src.use.external:
            continue
        for hit in sinks:
            if hit.doc is src.doc and hit.use.sink.executes and (src.use, hit.use) not in findings:
                findings[(src.use, hit.use)] = Finding(src.use, hit.use, (), Confidence.COOCCURRENCE)
    return sorted(findings.values(), key=Finding.sort_key)


def taint_flow(
    pkg: AppPackage,
    sources: Optional[Sequence[SourceUse]] = None,
    sinks: Optional[Sequence[SinkUse]] = None,
    catalog: Optional[SourceCatalog] = None,
) -> list[Finding]:
    """Connect sources to executing sinks.

    ``sources``/``sinks`` restrict the analysis to those uses; by default
    all uses found in ``pkg`` participate.
    """
    src_hits = _source_hits(pkg, catalog or default_catalog())
    sink_hits = _sink_hits(pkg)
    if sources is not None:
        keep = set(sources)
        src_hits = [h for h in src_hits if h.use in keep]
    if sinks is not None:
        keep_s = set(sinks)
        sink_hits = [h for h in sink_hits if h.use in keep_s]
    return _findings(src_hits, sink_hits)


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class Conditions:
    reads_channels: bool
    uses_vulnerable_sinks: bool
    flow_confirmed: bool


@dataclass
class ScanReport:
    app_id: str
    conditions: Conditions
    findings: list[Finding]
    sink_usage: dict[str, int]
    verdict: Verdict
    framework: Framework = Framework.UNKNOWN
    sources: list[SourceUse] = field(default_factory=list)
    sinks: list[SinkUse] = field(default_factory=list)
    documents: int = 0
    skipped_statements: int = 0
    warnings: list[dict] = field(default_factory=list)

    @property
    def vulnerable(self) -> bool:
        return self.verdict is Verdict.VULNERABLE


def build_report(
    pkg: AppPackage, catalog: Optional[SourceCatalog] = None, accept_cooccurrence: bool = False
) -> ScanReport:
    src_hits = _source_hits(pkg, catalog or default_catalog())
    sink_hits = _sink_hits(pkg)
    findings = _findings(src_hits, sink_hits)
    sources = sorted({h.use for h in src_hits}, key=lambda u: (u.location, u.api))
    sinks = sorted({h.use for h in sink_hits}, key=lambda u: (u.location, u.sink.api_name))

    reads = any(s.external for s in sources)
    uses = any(s.sink.executes for s in sinks)
    flow = any(f.confidence is Confidence.CONFIRMED and f.source.external for f in findings)
    conditions = Conditions(reads, uses, flow)
    if reads and uses and flow:
        verdict = Verdict.VULNERABLE
    elif reads and uses and accept_cooccurrence:
        # the manual-review tier: both app-level conditions, no proven path
        verdict = Verdict.POTENTIALLY_VULNERABLE
    else:
        verdict = Verdict.NOT_VULNERABLE
    usage = Counter(s.sink.api_name for s in sinks)
    skipped = sum(len(u.program.skipped) for d in pkg.documents for u in d.units)
    return ScanReport(
        pkg.app_id, conditions, findings, dict(sorted(usage.items())), verdict,
        pkg.framework, sources, sinks, len(pkg.documents), skipped, list(pkg.warnings),
    )


def scan_app(
    root_path: Union[str, Path],
    catalog: Optional[SourceCatalog] = None,
    accept_cooccurrence: bool = False,
) -> ScanReport:
    return build_report(ingest_app(root_path), catalog, accept_cooccurrence)


@dataclass
class CorpusStats:
    apps: int
    api_counts: dict[str, int]
    api_fraction: dict[str, float]
    reads_channels: int
    uses_vulnerable_sinks: int
    both: int
    all_three: int
    empty: list[str] = field(default_factory=list)
    verdicts: dict[str, str] = field(default_factory=dict)


def _scan_or_none(args: tuple) -> tuple[str, Optional[ScanReport]]:
    root, catalog = args
    try:
        return Path(root).name, scan_app(root, catalog)
    except EmptyPackage:
        return Path(root).name, None


def corpus_stats(
    roots: Sequence[Union[str, Path]],
    catalog: Optional[SourceCatalog] = None,
    workers: int = 1,
) -> CorpusStats:
    """Per-API usage fractions and the three-condition funnel over ``roots``.

    Apps without any documents count towards the denominator only.
    """
    if not roots:
        raise ValueError("corpus_stats needs at least one root")
    jobs = [(r, catalog) for r in roots]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_scan_or_none, jobs))
    else:
        results = [_scan_or_none(j) for j in jobs]

    counts = {s.api_name: 0 for s in SINK_CATALOG}
    c1 = c2 = both = three = 0
    empty: list[str] = []
    verdicts: dict[str, str] = {}
    for root, rep in results:
        if rep is None:
            empty.append(root)
            continue
        verdicts[rep.app_id] = rep.verdict.value
        for api in rep.sink_usage:
            counts[api] += 1
        c = rep.conditions
        c1 += c.reads_channels
        c2 += c.uses_vulnerable_sinks
        both += c.reads_channels and c.uses_vulnerable_sinks
        three += c.reads_channels and c.uses_vulnerable_sinks and c.flow_confirmed
    n = len(results)
    fractions = {k: v / n for k, v in counts.items()}
    return CorpusStats(n, counts, fractions, c1, c2, both, three, sorted(empty), dict(sorted(verdicts.items())))


def app_roots(corpus_dir: Union[str, Path]) -> list[Path]:
    """Immediate subdirectories (and zip files) of a corpus directory, sorted."""
    base = Path(corpus_dir)
    return sorted(p for p in base.iterdir() if p.is_dir() or zipfile.is_zipfile(p))
