"""Display-sink catalog and activation emulator.

Each catalog entry records whether markup written through that API runs
``<script>`` bodies and/or auto-firing event attributes.  The emulator
parses a payload with :mod:`hybridscan.html_fragment` and reports which
JavaScript would be triggered, without ever running it.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .html_fragment import Element, HtmlFragment, Text, parse_fragment


class SinkFamily(str, enum.Enum):
    DOM_API = "DomApi"
    DOM_ATTRIBUTE = "DomAttribute"
    JQUERY_API = "JQueryApi"


@dataclass(frozen=True)
class SinkKind:
    api_name: str
    family: SinkFamily
    executes_script_tag: bool
    executes_event_attribute: bool
    aliases: tuple[str, ...] = ()

    @property
    def executes(self) -> bool:
        return self.executes_script_tag or self.executes_event_attribute

    @property
    def text_only(self) -> bool:
        return not self.executes


_D, _A, _J = SinkFamily.DOM_API, SinkFamily.DOM_ATTRIBUTE, SinkFamily.JQUERY_API

SINK_CATALOG: tuple[SinkKind, ...] = (
    SinkKind("document.write()", _D, True, True, ("document.write", "write", "writeln", "document.writeln")),
    SinkKind("appendChild()", _D, True, True, ("appendChild",)),
    SinkKind("innerHTML/outerHTML", _A, False, True, ("innerHTML", "outerHTML")),
    SinkKind("innerText/outerText", _A, False, False, ("innerText", "outerText")),
    SinkKind("textContent", _A, False, False, ("textContent",)),
    SinkKind("html()", _J, True, True, ("html",)),
    SinkKind("append/prepend()", _J, True, True, ("append", "prepend")),
    SinkKind("before/after()", _J, True, True, ("before", "after")),
    SinkKind("add()", _J, True, True, ("add",)),
    SinkKind("replaceAll/replaceWith()", _J, True, True, ("replaceAll", "replaceWith")),
    SinkKind("text()", _J, False, False, ("text",)),
)

_BY_NAME: dict[str, SinkKind] = {}
for _kind in SINK_CATALOG:
    _BY_NAME[_kind.api_name] = _kind
    for _alias in _kind.aliases:
        _BY_NAME[_alias] = _kind
        _BY_NAME[_alias + "()"] = _kind


def classify_sink(api_name: str) -> Optional[SinkKind]:
    """Return the catalog row for ``api_name``, or ``None`` if it is not a sink.

    Accepts the row label (``"innerHTML/outerHTML"``), either member of a
    paired row, and call spellings with or without ``()``.  Leading
    receivers such as ``$('#x').`` or ``el.`` are ignored except for
    ``document.write``.
    """
    if not api_name:
        raise ValueError("api_name must be non-empty")
    name = api_name.strip()
    if name in _BY_NAME:
        return _BY_NAME[name]
    tail = name.rsplit(".", 1)[-1]
    return _BY_NAME.get(tail)


class Vector(str, enum.Enum):
    SCRIPT_TAG = "ScriptTag"
    EVENT_ATTRIBUTE = "EventAttribute"


@dataclass(frozen=True)
class PayloadVector:
    style: Vector
    tag_name: Optional[str] = None
    event_name: Optional[str] = None

    @classmethod
    def script_tag(cls) -> "PayloadVector":
        return cls(Vector.SCRIPT_TAG)

    @classmethod
    def img_onerror(cls) -> "PayloadVector":
        return cls(Vector.EVENT_ATTRIBUTE, "img", "onerror")


# The two probe strings used to build the activation matrix.
CANONICAL_PAYLOADS: dict[Vector, str] = {
    Vector.SCRIPT_TAG: "<script>alert('attack')</script>...Data...",
    Vector.EVENT_ATTRIBUTE: "<IMG src=x onerror=\"alert('attack')\">...Data...",
}


@dataclass(frozen=True)
class InertConstruct:
    kind: str  # "script" or "event-attribute"
    tag: str
    detail: str
    reason: str
    attribute: Optional[str] = None


@dataclass(frozen=True)
class ActivationResult:
    executed_code: tuple[str, ...] = ()
    rendered_text: str = ""
    inert_markup: tuple[InertConstruct, ...] = ()
    loaded_scripts: tuple[str, ...] = ()

    @property
    def triggers(self) -> bool:
        return bool(self.executed_code)


# Elements whose onerror fires on insertion when their source is unusable.
_ERROR_FIRING_TAGS = frozenset({"img", "image", "video", "audio", "input"})


def _source_is_invalid(src: Optional[str]) -> bool:
    if src is None:
        return True
    src = src.strip()
    if not src:
        return True
    if src.lower().startswith("javascript:"):
        return True
    # a bare word such as "x" cannot resolve to an image
    return not any(c in src for c in "./:")


def _onerror_fires(el: Element, scripts_run: bool) -> bool:
    if el.tag == "script":
        return scripts_run and el.has("src") and _source_is_invalid(el.get("src"))
    if el.tag not in _ERROR_FIRING_TAGS:
        return False
    if el.tag == "input" and (el.get("type") or "").lower() != "image":
        return False
    return _source_is_invalid(el.get("src"))


def _rendered_text(fragment: HtmlFragment) -> str:
    out = []

    def visit(nodes):
        for node in nodes:
            if isinstance(node, Text):
                out.append(node.content)
            elif node.tag not in ("script", "style"):
                visit(node.children)

    visit(fragment.nodes)
    return "".join(out)


def evaluate_sink(sink: SinkKind, payload: str) -> ActivationResult:
    """Emulate writing ``payload`` through ``sink``."""
    if sink.text_only:
        return ActivationResult(rendered_text=payload)

    fragment = parse_fragment(payload)
    executed: list[str] = []
    loaded: list[str] = []
    inert: list[InertConstruct] = []

    for el in fragment.elements():
        if el.tag == "script":
            body = el.text()
            if sink.executes_script_tag:
                if body.strip():
                    executed.append(body)
                src = el.get("src")
                if src is not None and src.strip():
                    loaded.append(src.strip())
            else:
                inert.append(InertConstruct(
                    "script", el.tag, body or (el.get("src") or ""),
                    "script elements inserted by this sink are not run"))
        for name, value in el.attributes:
            if not name.startswith("on") or len(name) <= 2:
                continue
            handler = value or ""
            if not sink.executes_event_attribute:
                inert.append(InertConstruct(
                    "event-attribute", el.tag, handler,
                    "sink does not run event handlers", name))
            elif name == "onerror" and _onerror_fires(el, sink.executes_script_tag):
                if handler.strip():
                    executed.append(handler)
            elif name == "onerror":
                inert.append(InertConstruct(
                    "event-attribute", el.tag, handler,
                    "source may load successfully", name))
            else:
                inert.append(InertConstruct(
                    "event-attribute", el.tag, handler, "requires user event", name))

    return ActivationResult(
        executed_code=tuple(executed),
        rendered_text=_rendered_text(fragment),
        inert_markup=tuple(inert),
        loaded_scripts=tuple(loaded),
    )


def activation_matrix() -> dict[tuple[str, Vector], bool]:
    """Run every catalog sink against both canonical probe payloads.

    Keys are ``(api_name, vector)``; values say whether any code ran.
    """
    return {
        (sink.api_name, vector): evaluate_sink(sink, payload).triggers
        for sink in SINK_CATALOG
        for vector, payload in CANONICAL_PAYLOADS.items()
    }


EXECUTING_SINKS = tuple(s for s in SINK_CATALOG if s.executes)
TEXT_SINKS = tuple(s for s in SINK_CATALOG if s.text_only)
