"""JSON and plain-text rendering of every result type.

JSON payloads use snake_case keys and are wrapped in an envelope with the
tool version and a timestamp; ``deterministic=True`` nulls the timestamp so
identical inputs give byte-identical output.
"""

from __future__ import annotations

import datetime as _dt
import json
import os
import tempfile
from pathlib import Path
from typing import Any, Iterable, Optional, Sequence

from . import __version__
from .analysis import CorpusStats, Finding, Location, ScanReport, SinkUse, SourceUse
from .channels import Channel
from .forge import Fragment, InjectionPlan, Payload, VerificationResult
from .plugins import CompanionAuditResult, PluginProfile, classify_plugin
from .sinks import ActivationResult, SinkKind

PAYLOAD_TYPES = (
    "scan_report", "scan_batch", "stats", "fragments", "injection_plan",
    "activation", "activation_matrix", "plugin_audit", "fixtures",
)

# ---------------------------------------------------------------------------
# to plain data


def location(loc: Location) -> dict:
    return {"path": loc.path, "line": loc.line, "column": loc.column}


def sink_kind(kind: SinkKind) -> dict:
    return {
        "api_name": kind.api_name,
        "family": kind.family.value,
        "executes_script_tag": kind.executes_script_tag,
        "executes_event_attribute": kind.executes_event_attribute,
    }


def source_use(use: SourceUse) -> dict:
    return {
        "location": location(use.location),
        "channel": use.channel,
        "api": use.api,
        "tainted_bindings": list(use.tainted_bindings),
        "lexical_only": use.lexical_only,
    }


def sink_use(use: SinkUse) -> dict:
    return {
        "location": location(use.location),
        "sink": use.sink.api_name,
        "executes": use.sink.executes,
        "argument_expr": use.argument_expr,
        "lexical_only": use.lexical_only,
    }


def finding(f: Finding) -> dict:
    return {
        "key": f"{f.sink.location.path}:{f.sink.location.line}:{f.sink.location.column}",
        "confidence": f.confidence.value,
        "source": source_use(f.source),
        "sink": sink_use(f.sink),
        "path": [{"name": s.name, "kind": s.kind, "location": location(s.location)} for s in f.path],
    }


def scan_report(r: ScanReport) -> dict:
    return {
        "app_id": r.app_id,
        "verdict": r.verdict.value,
        "framework": r.framework.value,
        "conditions": {
            "reads_channels": r.conditions.reads_channels,
            "uses_vulnerable_sinks": r.conditions.uses_vulnerable_sinks,
            "flow_confirmed": r.conditions.flow_confirmed,
        },
        "findings": [finding(f) for f in r.findings],
        "sink_usage": dict(r.sink_usage),
        "sources": [source_use(s) for s in r.sources],
        "sinks": [sink_use(s) for s in r.sinks],
        "documents": r.documents,
        "skipped_statements": r.skipped_statements,
        "warnings": list(r.warnings),
    }


def scan_batch(reports: Sequence[ScanReport], skipped: Sequence[tuple[str, str]]) -> dict:
    return {
        "reports": [scan_report(r) for r in reports],
        "skipped": [{"path": p, "reason": why} for p, why in skipped],
    }


def corpus_stats(s: CorpusStats) -> dict:
    return {
        "apps": s.apps,
        "api_usage": [
            {"api": api, "apps": s.api_counts[api], "fraction": round(s.api_fraction[api], 6)}
            for api in s.api_counts
        ],
        "funnel": {
            "reads_channels": s.reads_channels,
            "uses_vulnerable_sinks": s.uses_vulnerable_sinks,
            "both": s.both,
            "all_three": s.all_three,
        },
        "empty": list(s.empty),
        "verdicts": dict(s.verdicts),
    }


def fragment(f: Fragment) -> dict:
    return {
        "index": f.index,
        "role": f.role.value,
        "markup": f.markup,
        "length": f.length,
        "var_name": f.var_name,
        "chunk": f.chunk,
        "operands": list(f.operands),
    }


def loader(p: Payload, style: str) -> dict:
    out = {
        "style": style,
        "markup": p.markup,
        "length": p.length,
        "vector": p.vector.style.value,
        "inner_code": p.inner_code,
        "url": p.url,
    }
    published = PUBLISHED_LENGTHS.get(style)
    if published is not None and published != p.length:
        out["published_length"] = published
        out["note"] = (
            f"reported length is the character count ({p.length}); "
            f"the published figure is {published}"
        )
    return out


# Lengths printed in the original write-up for the mu.gl example loaders.
PUBLISHED_LENGTHS = {"ScriptTagLoader": 28, "ImgOnErrorDynamic": 99, "JQueryGetScript": 45}


def fragments(frags: Sequence[Fragment], limit: Optional[int], code: str, load: Optional[dict]) -> dict:
    return {
        "limit": limit,
        "inner_code": code,
        "loader": load,
        "fragment_count": len(frags),
        "piece_count": sum(1 for f in frags if f.role.value == "Piece"),
        "fragments": [fragment(f) for f in frags],
    }


def channel(ch: Channel) -> dict:
    return {
        "name": ch.name,
        "delivery": ch.delivery.value,
        "fields": [
            {"field_name": f.field_name, "max_length": f.max_length, "lower_bound_only": f.lower_bound_only}
            for f in ch.fields
        ],
    }


def injection_plan(plan: InjectionPlan, verification: Optional[VerificationResult] = None,
                   verified_sink: Optional[str] = None) -> dict:
    out: dict[str, Any] = {
        "channel": channel(plan.channel),
        "mode": plan.mode.value,
        "inner_code": plan.inner_code,
        "assignments": [
            {
                "field_name": a.field_name,
                "time_slot": a.time_slot,
                "value": a.value,
                "length": len(a.value),
                "fragment_indices": [f.index for f in a.fragments],
            }
            for a in plan.assignments
        ],
        "verification": None,
    }
    if verification is not None:
        out["verification"] = {
            "sink": verified_sink,
            "verified": verification.verified,
            "recovered_code": verification.recovered_code,
        }
    return out


def activation(kind: SinkKind, payload: str, result: ActivationResult) -> dict:
    return {
        "sink": sink_kind(kind),
        "payload": payload,
        "triggers": result.triggers,
        "executed_code": list(result.executed_code),
        "loaded_scripts": list(result.loaded_scripts),
        "rendered_text": result.rendered_text,
        "inert_markup": [
            {"kind": c.kind, "tag": c.tag, "attribute": c.attribute, "detail": c.detail, "reason": c.reason}
            for c in result.inert_markup
        ],
    }


def activation_matrix(matrix: dict, catalog: Iterable[SinkKind]) -> dict:
    rows = []
    for kind in catalog:
        cells = {vec.value: ok for (name, vec), ok in matrix.items() if name == kind.api_name}
        rows.append({"api_name": kind.api_name, "script_tag": cells["ScriptTag"],
                     "event_attribute": cells["EventAttribute"]})
    return {"rows": rows}


def plugin_audit(items: Sequence[tuple[PluginProfile, CompanionAuditResult]], taxonomy: dict) -> dict:
    plugins = []
    for prof, audit in items:
        plugins.append({
            "name": prof.name,
            "category": classify_plugin(prof).value,
            "returns_data": prof.returns_data,
            "data_controllability": prof.data_controllability.value,
            "channel": prof.channel,
            "tags": list(prof.tags),
            "evidence": [{"label": e.label, "file": e.file, "detail": e.detail} for e in prof.evidence],
            "native_sources": list(prof.native_sources),
            "companion_js": list(prof.companion_js),
            "purpose": audit.purpose.value,
            "vulnerable_displays": [
                {"file": d.file, "line": d.line, "sink_api": d.sink_api} for d in audit.vulnerable_displays
            ],
        })
    return {"plugins": plugins, "taxonomy": {k.value: v for k, v in taxonomy.items()}}


# ---------------------------------------------------------------------------
# envelope and output


def envelope(payload_type: str, payload: Any, deterministic: bool = False) -> dict:
    if payload_type not in PAYLOAD_TYPES:
        raise ValueError(f"unknown payload type {payload_type!r}")
    stamp = None
    if not deterministic:
        stamp = _dt.datetime.now(_dt.timezone.utc).replace(microsecond=0).isoformat().replace("+00:00", "Z")
    return {
        "tool_version": __version__,
        "generated_at": stamp,
        "payload_type": payload_type,
        "payload": payload,
    }


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def write_atomic(path: str | os.PathLike, text: str) -> None:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{target.name}.", dir=target.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


# ---------------------------------------------------------------------------
# plain text


class Style:
    """ANSI styling, off unless enabled."""

    def __init__(self, enabled: bool) -> None:
        self.enabled = enabled

    def _wrap(self, code: str, text: str) -> str:
        return f"\x1b[{code}m{text}\x1b[0m" if self.enabled else text

    def bad(self, text: str) -> str:
        return self._wrap("31;1", text)

    def warn(self, text: str) -> str:
        return self._wrap("33", text)

    def good(self, text: str) -> str:
        return self._wrap("32", text)

    def dim(self, text: str) -> str:
        return self._wrap("2", text)


def table(rows: Sequence[Sequence[Any]], header: Sequence[str]) -> str:
    cells = [[str(c) for c in header]] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _loc_text(loc: dict) -> str:
    return f"{loc['path']}:{loc['line']}:{loc['column']}"


def text_scan_report(r: dict, style: Style) -> str:
    verdict = r["verdict"]
    paint = {"Vulnerable": style.bad, "PotentiallyVulnerable": style.warn}.get(verdict, style.good)
    c = r["conditions"]
    lines = [
        f"{r['app_id']}: {paint(verdict)}  ({r['framework']}, {r['documents']} documents)",
        f"  reads channels: {c['reads_channels']}   executing sinks: {c['uses_vulnerable_sinks']}"
        f"   flow confirmed: {c['flow_confirmed']}",
    ]
    for f in r["findings"]:
        src, snk = f["source"], f["sink"]
        lines.append(
            f"  [{f['confidence']}] {src['channel']} {src['api']} ({_loc_text(src['location'])})"
            f" -> {snk['sink']} at {_loc_text(snk['location'])}"
        )
        if f["path"]:
            lines.append("    path: " + " -> ".join(step["name"] for step in f["path"]))
    if r["sink_usage"]:
        usage = ", ".join(f"{k} x{v}" for k, v in r["sink_usage"].items())
        lines.append(style.dim(f"  sink usage: {usage}"))
    if r["skipped_statements"]:
        lines.append(style.dim(f"  {r['skipped_statements']} statements matched lexically only"))
    return "\n".join(lines)


def text_scan_batch(b: dict, style: Style) -> str:
    parts = [text_scan_report(r, style) for r in b["reports"]]
    parts += [f"{s['path']}: skipped ({s['reason']})" for s in b["skipped"]]
    return "\n".join(parts)


def text_stats(s: dict, style: Style) -> str:
    rows = [(u["api"], u["apps"], f"{100 * u['fraction']:.2f}%") for u in s["api_usage"]]
    f = s["funnel"]
    return "\n".join([
        f"apps scanned: {s['apps']}",
        table(rows, ("API", "apps", "usage")),
        "",
        table(
            [("reads channels", f["reads_channels"]), ("uses executing sinks", f["uses_vulnerable_sinks"]),
             ("both", f["both"]), ("all three", f["all_three"])],
            ("condition", "apps"),
        ),
    ])


def text_fragments(p: dict, style: Style) -> str:
    lines = []
    if p["loader"]:
        ld = p["loader"]
        lines.append(style.dim(f"# loader {ld['style']}: {ld['length']} chars"))
        if "note" in ld:
            lines.append(style.dim(f"# {ld['note']}"))
    lines.append(style.dim(f"# {p['fragment_count']} fragments, limit {p['limit']}, deliver in this order"))
    lines.extend(f["markup"] for f in p["fragments"])
    return "\n".join(lines)


def text_plan(p: dict, style: Style) -> str:
    ch = p["channel"]
    lines = [style.dim(f"# {ch['name']} {p['mode']}, {len(p['assignments'])} deliveries, in order")]
    for a in p["assignments"]:
        lines.append(a["value"])
    v = p["verification"]
    if v:
        lines.append(style.dim(f"# verified through {v['sink']}: {v['verified']}"))
    return "\n".join(lines)


def text_activation(a: dict, style: Style) -> str:
    lines = [f"sink: {a['sink']['api_name']}  triggers: {a['triggers']}"]
    for code in a["executed_code"]:
        lines.append(f"  executes: {code}")
    for src in a["loaded_scripts"]:
        lines.append(f"  loads: {src}")
    for c in a["inert_markup"]:
        lines.append(style.dim(f"  inert {c['kind']} <{c['tag']}>: {c['reason']}"))
    lines.append(f"  rendered text: {a['rendered_text']!r}")
    return "\n".join(lines)


def text_matrix(m: dict, style: Style) -> str:
    mark = lambda b: "yes" if b else "no"  # noqa: E731
    rows = [(r["api_name"], mark(r["script_tag"]), mark(r["event_attribute"])) for r in m["rows"]]
    return table(rows, ("API", "<script>", "<img onerror>"))


def text_plugin_audit(p: dict, style: Style) -> str:
    rows = []
    for pl in p["plugins"]:
        displays = ", ".join(f"{d['file']}:{d['line']} {d['sink_api']}" for d in pl["vulnerable_displays"])
        tag = f" [{', '.join(pl['tags'])}]" if pl["tags"] else ""
        rows.append((pl["name"], pl["category"] + tag, pl["purpose"], displays or "-"))
    tax = [(k, v) for k, v in p["taxonomy"].items()]
    return table(rows, ("plugin", "category", "companion JS", "vulnerable displays")) + "\n\n" + table(
        tax, ("category", "plugins")
    )


def text_fixtures(p: dict, style: Style) -> str:
    lines = [f"apps:     {p['apps_dir']}"]
    lines += [f"  {a}" for a in p["apps"]]
    lines.append(f"plugins:  {p['plugins_dir']}")
    lines.append(f"payloads: {p['payloads_dir']}")
    lines += [f"  {x['file']} ({x['channel']}.{x['field']}, {x['length']} chars)" for x in p["payloads"]]
    return "\n".join(lines)


TEXT_RENDERERS = {
    "scan_report": text_scan_report,
    "scan_batch": text_scan_batch,
    "stats": text_stats,
    "fragments": text_fragments,
    "injection_plan": text_plan,
    "activation": text_activation,
    "activation_matrix": text_matrix,
    "plugin_audit": text_plugin_audit,
    "fixtures": text_fixtures,
}


def render(payload_type: str, payload: dict, fmt: str, deterministic: bool, style: Style) -> str:
    if fmt == "json":
        return dumps(envelope(payload_type, payload, deterministic))
    return TEXT_RENDERERS[payload_type](payload, style) + "\n"
