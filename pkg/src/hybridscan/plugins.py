"""Exploitability taxonomy for bridge plugins and a companion-JS audit.

A plugin matters only if its native half hands data back to the page and
that data can be chosen by someone other than the developer.  Whether data
is returned comes from the success-callback calls in the native sources;
where it comes from is decided by an evidence table of API names
(``data/plugin_evidence.json``), which can be replaced or extended.
"""

from __future__ import annotations

import enum
import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

from . import analysis, jsparse as js
from .jslex import NAME, NUM, STR, Token, tokenize
from .sources import UNKNOWN, SourceCatalog, default_catalog

NATIVE_SUFFIXES = (".java", ".kt", ".m", ".mm", ".h", ".swift", ".cs", ".cpp", ".c")
COMPANION_SUFFIXES = (".js", ".html", ".htm")
_IGNORED_DIRS = frozenset({"node_modules", ".git", "tests", "test", "spec"})
_LITERAL_NAMES = frozenset({"true", "false", "null", "nil", "YES", "NO", "TRUE", "FALSE"})
_CLOBBERS = re.compile(r"<(?:clobbers|merges)\b[^>]*\btarget\s*=\s*[\"']([^\"']+)[\"']", re.I)
_PLUGIN_ID = re.compile(r"<plugin\b[^>]*\bid\s*=\s*[\"']([^\"']+)[\"']", re.I | re.S)


class NotAPlugin(ValueError):
    pass


class Controllability(str, enum.Enum):
    NONE = "None"
    FIXED = "Fixed"
    WEB_CONTROLLED = "WebControlled"
    INTERNAL_RESOURCE = "InternalResource"
    EXTERNAL_ENTITY = "ExternalEntity"


class PluginCategory(str, enum.Enum):
    NO_DATA = "NoData"
    NON_EXPLOITABLE_DATA = "NonExploitableData"
    WEB_DATA = "WebData"
    INTERNAL_DATA = "InternalData"
    EXTERNAL_DATA = "ExternalData"


_CATEGORY_OF = {
    Controllability.NONE: PluginCategory.NO_DATA,
    Controllability.FIXED: PluginCategory.NON_EXPLOITABLE_DATA,
    Controllability.WEB_CONTROLLED: PluginCategory.WEB_DATA,
    Controllability.INTERNAL_RESOURCE: PluginCategory.INTERNAL_DATA,
    Controllability.EXTERNAL_ENTITY: PluginCategory.EXTERNAL_DATA,
}

# higher wins when several evidence classes match
_PRIORITY = {
    Controllability.EXTERNAL_ENTITY: 3,
    Controllability.INTERNAL_RESOURCE: 2,
    Controllability.WEB_CONTROLLED: 1,
}


class Purpose(str, enum.Enum):
    SAMPLE_CODE = "SampleCode"
    LIBRARY = "Library"
    BOTH = "Both"
    NO_JS = "NoJs"


@dataclass(frozen=True)
class EvidenceRule:
    pattern: str
    controllability: Controllability
    label: str
    channel: Optional[str] = None
    tags: tuple[str, ...] = ()


@dataclass(frozen=True)
class Evidence:
    label: str
    file: str
    detail: str


@dataclass
class PluginProfile:
    name: str
    native_sources: list[str]
    companion_js: list[str]
    returns_data: bool
    data_controllability: Controllability
    root_path: str = ""
    evidence: list[Evidence] = field(default_factory=list)
    channel: Optional[str] = None
    tags: list[str] = field(default_factory=list)
    clobbers: list[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        if not self.returns_data and self.data_controllability is not Controllability.NONE:
            raise ValueError("a plugin that returns no data has controllability None")


@dataclass(frozen=True)
class VulnerableDisplay:
    file: str
    line: int
    sink_api: str


@dataclass
class CompanionAuditResult:
    vulnerable_displays: list[VulnerableDisplay]
    purpose: Purpose


def _rule(raw: dict) -> EvidenceRule:
    return EvidenceRule(raw["pattern"], Controllability(raw["controllability"]), raw["label"],
                        raw.get("channel"), tuple(raw.get("tags", ())))


@lru_cache(maxsize=None)
def default_evidence() -> tuple[EvidenceRule, ...]:
    text = resources.files("hybridscan").joinpath("data/plugin_evidence.json").read_text(encoding="utf-8")
    return tuple(_rule(r) for r in json.loads(text)["rules"])


def load_evidence(path: Union[str, Path], extend: bool = True) -> tuple[EvidenceRule, ...]:
    rules = tuple(_rule(r) for r in json.loads(Path(path).read_text(encoding="utf-8"))["rules"])
    return default_evidence() + rules if extend else rules


# ---------------------------------------------------------------------------
# returned-data detection over native sources


def _split_args(toks: list[Token], open_idx: int) -> tuple[list[list[Token]], int]:
    """Arguments of the call whose ``(`` is at ``open_idx`` and the index after ``)``."""
    args: list[list[Token]] = [[]]
    depth = 0
    i = open_idx
    while i < len(toks):
        t = toks[i]
        if t.is_punct("(", "[", "{"):
            depth += 1
            if depth > 1:
                args[-1].append(t)
        elif t.is_punct(")", "]", "}"):
            depth -= 1
            if depth == 0:
                break
            args[-1].append(t)
        elif depth == 1 and t.is_punct(","):
            args.append([])
        elif depth >= 1:
            args[-1].append(t)
        i += 1
    if args == [[]]:
        args = []
    return args, i + 1


def _constant(arg: list[Token]) -> bool:
    """Literal strings, numbers, booleans and status constants."""
    toks = [t for t in arg if not t.is_punct("@", "-", "+")]
    if not toks:
        return True
    if len(toks) == 1:
        t = toks[0]
        if t.kind in (STR, NUM) or t.value in _LITERAL_NAMES:
            return True
    # PluginResult.Status.OK, CDVCommandStatus_OK and similar
    names = [t.value for t in toks if t.kind == NAME]
    return bool(names) and all(t.kind == NAME or t.is_punct(".") for t in toks) and any(
        "Status" in n or n.isupper() for n in names
    )


def returned_data(text: str) -> tuple[bool, bool]:
    """``(returns_data, only_constant)`` for a native source file."""
    toks = tokenize(text)
    returns = False
    variable = False

    def note(payload: list[list[Token]]) -> None:
        nonlocal returns, variable
        for arg in payload:
            returns = True
            if not _constant(arg):
                variable = True

    for i, t in enumerate(toks[:-1]):
        nxt = toks[i + 1]
        if t.kind != NAME:
            continue
        prev = toks[i - 1] if i else None
        if t.value == "success" and nxt.is_punct("(") and prev is not None and prev.is_punct("."):
            args, _ = _split_args(toks, i + 1)
            note(args)
        elif t.value == "PluginResult" and nxt.is_punct("(") and prev is not None and prev.is_name("new"):
            args, _ = _split_args(toks, i + 1)
            if args and any(tok.value == "OK" for tok in args[0]):
                note(args[1:])
        elif t.value.startswith("messageAs") and nxt.is_punct(":"):
            j = i + 2
            arg: list[Token] = []
            while j < len(toks) and not toks[j].is_punct("]") and not (toks[j].kind == NAME and toks[j + 1:j + 2] and toks[j + 1].is_punct(":")):
                arg.append(toks[j])
                j += 1
            note([arg])
    return returns, returns and not variable


# ---------------------------------------------------------------------------
# profiles


def _walk(root: Path) -> list[Path]:
    out = []
    for p in sorted(root.rglob("*")):
        rel = p.relative_to(root)
        if p.is_file() and not any(part in _IGNORED_DIRS for part in rel.parts[:-1]):
            out.append(p)
    return out


def _plugin_name(root: Path) -> tuple[Optional[str], list[str], bool]:
    """Identifier, clobbers targets and whether a manifest/layout was recognized."""
    manifest = root / "plugin.xml"
    clobbers: list[str] = []
    name = None
    found = False
    if manifest.is_file():
        text = manifest.read_text(encoding="utf-8", errors="replace")
        m = _PLUGIN_ID.search(text)
        name = m.group(1) if m else None
        clobbers = _CLOBBERS.findall(text)
        found = True
    pkg_json = root / "package.json"
    if pkg_json.is_file():
        try:
            meta = json.loads(pkg_json.read_text(encoding="utf-8"))
        except json.JSONDecodeError:
            meta = {}
        if isinstance(meta, dict) and "cordova" in meta:
            found = True
            cordova = meta.get("cordova") or {}
            name = name or (cordova.get("id") if isinstance(cordova, dict) else None) or meta.get("name")
    if not found:
        found = any((root / "src" / plat).is_dir() for plat in ("android", "ios", "wp8", "windows")) and (
            (root / "www").is_dir()
        )
    return name, clobbers, found


def build_profile(plugin_root: Union[str, Path], evidence: Optional[Sequence[EvidenceRule]] = None) -> PluginProfile:
    root = Path(plugin_root)
    if not root.is_dir():
        raise NotAPlugin(f"{root} is not a directory")
    name, clobbers, found = _plugin_name(root)
    if not found:
        raise NotAPlugin(f"{root} has no plugin manifest or recognizable layout")
    rules = tuple(evidence) if evidence is not None else default_evidence()

    files = _walk(root)
    native = [p for p in files if p.suffix.lower() in NATIVE_SUFFIXES]
    companion = [p for p in files if p.suffix.lower() in COMPANION_SUFFIXES]

    returns = False
    variable = False
    for path in native:
        r, const = returned_data(path.read_text(encoding="utf-8", errors="replace"))
        returns = returns or r
        variable = variable or (r and not const)

    hits: list[tuple[EvidenceRule, Evidence]] = []
    for path in native + [root / "plugin.xml"]:
        if not path.is_file():
            continue
        text = path.read_text(encoding="utf-8", errors="replace")
        rel = path.relative_to(root).as_posix()
        for rule in rules:
            if rule.pattern in text:
                hits.append((rule, Evidence(rule.label, rel, rule.pattern)))

    evidence_out: list[Evidence] = []
    channel = None
    tags: list[str] = []
    if not returns:
        control = Controllability.NONE
    elif not variable:
        control = Controllability.FIXED
        evidence_out.append(Evidence("constant callback payload", "", ""))
    elif hits:
        top = max(_PRIORITY[r.controllability] for r, _ in hits)
        chosen = [(r, e) for r, e in hits if _PRIORITY[r.controllability] == top]
        control = chosen[0][0].controllability
        channel = next((r.channel for r, _ in chosen if r.channel), None)
        tags = sorted({t for r, _ in chosen for t in r.tags})
        evidence_out = sorted(set(e for _, e in chosen), key=lambda e: (e.file, e.detail))
    else:
        # data comes back, but nothing says it originates outside the device or
        # developer: treat as system status
        control = Controllability.FIXED
        evidence_out.append(Evidence("no controllable-source evidence", "", ""))

    rel = lambda ps: [p.relative_to(root).as_posix() for p in ps]  # noqa: E731
    return PluginProfile(
        name=name or root.name,
        native_sources=rel(native),
        companion_js=rel(companion),
        returns_data=returns,
        data_controllability=control,
        root_path=str(root),
        evidence=evidence_out,
        channel=channel,
        tags=tags,
        clobbers=clobbers,
    )


def classify_plugin(profile: PluginProfile) -> PluginCategory:
    if not profile.returns_data:
        return PluginCategory.NO_DATA
    return _CATEGORY_OF[profile.data_controllability]


# ---------------------------------------------------------------------------
# companion JS


def _purpose(docs: list[analysis.Document]) -> Purpose:
    if not docs:
        return Purpose.NO_JS
    sample = library = False
    for doc in docs:
        if doc.kind == "Html":
            sample = True
        text = doc.source
        if "deviceready" in text or "document.getElementById" in text or "$(" in text:
            sample = True
        if "module.exports" in text or "cordova.define" in text or re.search(r"\bexec\s*\(", text):
            library = True
    if sample and library:
        return Purpose.BOTH
    return Purpose.SAMPLE_CODE if sample else Purpose.LIBRARY


def _strip_window(name: str) -> str:
    return name[len("window."):] if name.startswith("window.") else name


def _plugin_sources(doc: analysis.Document, targets: Sequence[str], channel: str) -> list:
    """Calls into the plugin's own JS API (``<clobbers target>``) act as sources."""
    if not targets:
        return []
    named = analysis._functions_by_name(doc)
    hits = []
    for unit in doc.units:
        for node in unit.program.walk():
            if not isinstance(node, js.Call):
                continue
            dotted = _strip_window(js.dotted_name(node.callee) or "")
            if not any(f".{_strip_window(t)}." in f".{dotted}" for t in targets):
                continue
            hit = analysis._callback_hit(doc, node, dotted, channel, named, node.args)
            if hit.scope is not None:
                hits.append(hit)
    return hits


def audit_companion_js(profile: PluginProfile, catalog: Optional[SourceCatalog] = None) -> CompanionAuditResult:
    root = Path(profile.root_path)
    docs: list[analysis.Document] = []
    for rel in profile.companion_js:
        text = (root / rel).read_text(encoding="utf-8", errors="replace")
        if rel.lower().endswith((".html", ".htm")):
            docs.append(analysis._html_document(rel, text))
        else:
            docs.append(analysis.Document(rel, "Js", text, (), [analysis.ScriptUnit(text)]))
    purpose = _purpose(docs)
    if not docs:
        return CompanionAuditResult([], purpose)

    pkg = analysis.AppPackage(str(root), profile.name, docs)
    sources = analysis._source_hits(pkg, catalog or default_catalog())
    for doc in docs:
        sources.extend(_plugin_sources(doc, profile.clobbers, profile.channel or UNKNOWN))
    sinks = analysis._sink_hits(pkg)
    displays = set()
    for f in analysis._findings(sources, sinks):
        if f.confidence is analysis.Confidence.CONFIRMED:
            loc = f.sink.location
            displays.add(VulnerableDisplay(loc.path, loc.line, f.sink.sink.api_name))
    return CompanionAuditResult(sorted(displays, key=lambda d: (d.file, d.line, d.sink_api)), purpose)


# ---------------------------------------------------------------------------
# aggregation


def taxonomy_counts(profiles: Iterable[PluginProfile]) -> dict[PluginCategory, int]:
    counts = {c: 0 for c in PluginCategory}
    for p in profiles:
        counts[classify_plugin(p)] += 1
    return counts


def plugin_roots(path: Union[str, Path]) -> list[Path]:
    """``path`` itself if it is a plugin, otherwise its plugin subdirectories."""
    base = Path(path)
    if not base.is_dir():
        raise NotAPlugin(f"{base} is not a directory")
    if _plugin_name(base)[2]:
        return [base]
    return [p for p in sorted(base.iterdir()) if p.is_dir() and _plugin_name(p)[2]]
