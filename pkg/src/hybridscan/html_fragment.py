"""Miniature HTML fragment parser.

Handles the subset of markup needed to reason about injected display
strings: elements, quoted/unquoted attributes, text, and raw-text
``script``/``style`` bodies.  Only the four basic entities are decoded.
Malformed input never raises; anything that cannot be read as a tag is
kept as text.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional, Union

VOID_ELEMENTS = frozenset(
    "area base br col embed hr img image input link meta param source track wbr".split()
)
RAW_TEXT_ELEMENTS = frozenset({"script", "style"})

_ENTITIES = {"&lt;": "<", "&gt;": ">", "&amp;": "&", "&quot;": '"'}
_TAG_NAME_CHARS = frozenset("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789-:_.")
_WS = " \t\n\r\f"


@dataclass(frozen=True)
class Text:
    content: str


@dataclass(frozen=True)
class Element:
    tag: str
    attributes: tuple[tuple[str, Optional[str]], ...] = ()
    children: tuple["Node", ...] = ()

    def get(self, name: str, default: Optional[str] = None) -> Optional[str]:
        name = name.lower()
        for key, value in self.attributes:
            if key == name:
                return value
        return default

    def has(self, name: str) -> bool:
        name = name.lower()
        return any(key == name for key, _ in self.attributes)

    def text(self) -> str:
        """Concatenated raw body of the element (script bodies included)."""
        return "".join(
            c.content if isinstance(c, Text) else c.text() for c in self.children
        )


Node = Union[Element, Text]


@dataclass(frozen=True)
class HtmlFragment:
    nodes: tuple[Node, ...] = field(default_factory=tuple)

    def walk(self) -> Iterator[Node]:
        """Pre-order traversal in document order."""
        stack = list(reversed(self.nodes))
        while stack:
            node = stack.pop()
            yield node
            if isinstance(node, Element):
                stack.extend(reversed(node.children))

    def elements(self) -> Iterator[Element]:
        return (n for n in self.walk() if isinstance(n, Element))


def decode_entities(s: str) -> str:
    if "&" not in s:
        return s
    out = []
    i = 0
    while i < len(s):
        if s[i] == "&":
            for ent, ch in _ENTITIES.items():
                if s.startswith(ent, i):
                    out.append(ch)
                    i += len(ent)
                    break
            else:
                out.append("&")
                i += 1
        else:
            out.append(s[i])
            i += 1
    return "".join(out)


class _Builder:
    def __init__(self) -> None:
        # each frame: [tag, attrs, children]
        self.root: list = []
        self.stack: list[list] = []

    def _children(self) -> list:
        return self.stack[-1][2] if self.stack else self.root

    def text(self, s: str) -> None:
        if not s:
            return
        kids = self._children()
        if kids and isinstance(kids[-1], Text):
            kids[-1] = Text(kids[-1].content + s)
        else:
            kids.append(Text(s))

    def open(self, tag: str, attrs: list) -> None:
        self.stack.append([tag, attrs, []])

    def leaf(self, tag: str, attrs: list, body: Optional[str] = None) -> None:
        children = (Text(body),) if body else ()
        self._children().append(Element(tag, tuple(attrs), children))

    def close(self, tag: str) -> None:
        for depth in range(len(self.stack) - 1, -1, -1):
            if self.stack[depth][0] == tag:
                while len(self.stack) > depth:
                    self._pop()
                return
        # stray end tag: dropped

    def _pop(self) -> None:
        tag, attrs, kids = self.stack.pop()
        self._children().append(Element(tag, tuple(attrs), tuple(kids)))

    def finish(self) -> HtmlFragment:
        while self.stack:
            self._pop()
        return HtmlFragment(tuple(self.root))


def _read_tag(s: str, i: int) -> Optional[tuple[str, list, int]]:
    """Read a start tag beginning at ``s[i] == '<'``.

    Returns (tag, attributes, index after '>') or None if the tag never
    terminates, in which case the caller treats it as text.
    """
    n = len(s)
    j = i + 1
    while j < n and s[j] in _TAG_NAME_CHARS:
        j += 1
    tag = s[i + 1 : j].lower()
    attrs: list[tuple[str, Optional[str]]] = []
    seen: set[str] = set()
    while True:
        while j < n and (s[j] in _WS or s[j] == "/"):
            j += 1
        if j >= n:
            return None
        if s[j] == ">":
            return tag, attrs, j + 1
        k = j + 1  # first character always belongs to the name, even '='
        while k < n and s[k] not in _WS and s[k] not in "/>=":
            k += 1
        name = s[j:k].lower()
        j = k
        while j < n and s[j] in _WS:
            j += 1
        value: Optional[str] = None
        if j < n and s[j] == "=":
            j += 1
            while j < n and s[j] in _WS:
                j += 1
            if j >= n:
                return None
            if s[j] in "\"'":
                close = s.find(s[j], j + 1)
                if close < 0:
                    return None
                value = decode_entities(s[j + 1 : close])
                j = close + 1
            else:
                k = j
                while k < n and s[k] not in _WS and s[k] != ">":
                    k += 1
                value = decode_entities(s[j:k])
                j = k
        if name not in seen:
            seen.add(name)
            attrs.append((name, value))


def parse_fragment(markup: str) -> HtmlFragment:
    """Best-effort parse of ``markup`` into a fragment tree."""
    b = _Builder()
    s = markup
    n = len(s)
    i = 0
    text_start = 0

    def flush(upto: int) -> None:
        if upto > text_start:
            b.text(decode_entities(s[text_start:upto]))

    while i < n:
        if s[i] != "<" or i + 1 >= n:
            i += 1
            continue
        nxt = s[i + 1]
        if nxt.isascii() and nxt.isalpha():
            got = _read_tag(s, i)
            if got is None:
                i += 1
                continue
            flush(i)
            tag, attrs, j = got
            if tag in RAW_TEXT_ELEMENTS:
                end = s.lower().find("</" + tag, j)
                if end < 0:
                    body, j = s[j:], n
                else:
                    body = s[j:end]
                    gt = s.find(">", end)
                    j = n if gt < 0 else gt + 1
                b.leaf(tag, attrs, body)
            elif tag in VOID_ELEMENTS:
                b.leaf(tag, attrs)
            else:
                b.open(tag, attrs)
            i = text_start = j
        elif nxt == "/" and i + 2 < n and s[i + 2].isascii() and s[i + 2].isalpha():
            gt = s.find(">", i)
            if gt < 0:
                i += 1
                continue
            flush(i)
            k = i + 2
            while k < gt and s[k] in _TAG_NAME_CHARS:
                k += 1
            b.close(s[i + 2 : k].lower())
            i = text_start = gt + 1
        else:
            i += 1
    flush(n)
    return b.finish()


def _escape_text(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _escape_attr(s: str) -> str:
    return s.replace("&", "&amp;").replace('"', "&quot;")


def serialize(fragment: Union[HtmlFragment, Node]) -> str:
    """Serialize back to markup; attribute values are always double-quoted."""
    if isinstance(fragment, HtmlFragment):
        return "".join(serialize(n) for n in fragment.nodes)
    if isinstance(fragment, Text):
        return _escape_text(fragment.content)
    parts = ["<", fragment.tag]
    for name, value in fragment.attributes:
        parts.append(" " + name)
        if value is not None:
            parts.append('="%s"' % _escape_attr(value))
    parts.append(">")
    if fragment.tag in RAW_TEXT_ELEMENTS:
        parts.append(fragment.text())
    elif fragment.tag not in VOID_ELEMENTS:
        parts.extend(serialize(c) for c in fragment.children)
    if fragment.tag not in VOID_ELEMENTS:
        parts.append("</%s>" % fragment.tag)
    return "".join(parts)
