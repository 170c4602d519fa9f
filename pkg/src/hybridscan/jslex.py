"""Tolerant JavaScript tokenizer.

Never raises: unterminated strings stop at end of line, unknown
characters become single-character punctuators.  Positions are 1-based
lines and columns relative to the start of the scanned text plus the
caller's offsets, so inline ``<script>`` bodies report page coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

NAME = "name"
NUM = "num"
STR = "str"
TEMPLATE = "template"
REGEX = "regex"
PUNCT = "punct"
EOF = "eof"

KEYWORDS = frozenset(
    """break case catch class const continue debugger default delete do else export
    extends finally for function if import in instanceof let new return super switch
    this throw try typeof var void while with yield""".split()
)

# longest first so greedy matching works
_PUNCTUATORS = sorted(
    """>>>= ... === !== **= <<= >>= >>> &&= ||= ??= => == != <= >= && || ?? ?. ++ -- += -=
    *= /= %= &= |= ^= << >> ** { } ( ) [ ] ; , < > + - * / % & | ^ ! ~ ? : = . @ #""".split(),
    key=len,
    reverse=True,
)

_REGEX_AFTER_KEYWORDS = frozenset(
    "return typeof case in of new delete void throw instanceof else do yield await".split()
)


@dataclass
class TemplatePart:
    """An embedded ``${...}`` expression: source text and where it starts."""

    source: str
    line: int
    col: int
    pos: int


@dataclass
class Token:
    kind: str
    value: str
    line: int
    col: int
    pos: int
    end: int
    newline_before: bool = False
    parts: list[TemplatePart] = field(default_factory=list)
    cooked: Optional[str] = None

    def is_punct(self, *values: str) -> bool:
        return self.kind == PUNCT and self.value in values

    def is_name(self, *values: str) -> bool:
        return self.kind == NAME and (not values or self.value in values)

    def __repr__(self) -> str:
        return f"Token({self.kind}, {self.value!r}, {self.line}:{self.col})"


def _is_id_start(ch: str) -> bool:
    return ch.isalpha() or ch in "$_" or ord(ch) > 127


def _is_id_part(ch: str) -> bool:
    return ch.isalnum() or ch in "$_" or ord(ch) > 127


_SIMPLE = {"n": "\n", "t": "\t", "r": "\r", "b": "\b", "f": "\f", "v": "\v", "0": "\0"}


class Lexer:
    def __init__(self, text: str, line: int = 1, col: int = 1, pos: int = 0) -> None:
        self.text = text
        self.i = 0
        self.line = line
        self.col = col
        self.base_pos = pos

    def _advance(self, n: int = 1) -> None:
        for _ in range(n):
            if self.i >= len(self.text):
                return
            if self.text[self.i] == "\n":
                self.line += 1
                self.col = 1
            else:
                self.col += 1
            self.i += 1

    def _peek(self, k: int = 0) -> str:
        j = self.i + k
        return self.text[j] if j < len(self.text) else ""

    def _skip_trivia(self) -> bool:
        newline = False
        while self.i < len(self.text):
            ch = self.text[self.i]
            if ch == "\n":
                newline = True
                self._advance()
            elif ch in " \t\r\f\v\ufeff\u00a0\u2028\u2029":
                self._advance()
            elif ch == "/" and self._peek(1) == "/":
                while self.i < len(self.text) and self.text[self.i] != "\n":
                    self._advance()
            elif ch == "/" and self._peek(1) == "*":
                end = self.text.find("*/", self.i + 2)
                stop = len(self.text) if end < 0 else end + 2
                newline = newline or "\n" in self.text[self.i:stop]
                self._advance(stop - self.i)
            elif ch == "<" and self.text.startswith("<!--", self.i):
                while self.i < len(self.text) and self.text[self.i] != "\n":
                    self._advance()
            elif ch == "-" and self.text.startswith("-->", self.i) and (newline or self.i == 0):
                while self.i < len(self.text) and self.text[self.i] != "\n":
                    self._advance()
            else:
                break
        return newline

    def tokenize(self) -> list[Token]:
        tokens: list[Token] = []
        prev: Optional[Token] = None
        while True:
            nl = self._skip_trivia()
            if self.i >= len(self.text):
                tokens.append(Token(EOF, "", self.line, self.col, self.base_pos + self.i,
                                    self.base_pos + self.i, nl))
                return tokens
            tok = self._next(prev)
            tok.newline_before = nl
            tokens.append(tok)
            prev = tok

    def _regex_allowed(self, prev: Optional[Token]) -> bool:
        if prev is None:
            return True
        if prev.kind == NAME:
            return prev.value in _REGEX_AFTER_KEYWORDS
        if prev.kind in (NUM, STR, TEMPLATE, REGEX):
            return False
        return prev.value not in (")", "]", "++", "--")

    def _next(self, prev: Optional[Token]) -> Token:
        start, line, col = self.i, self.line, self.col
        ch = self.text[self.i]

        def make(kind: str, **kw) -> Token:
            return Token(kind, self.text[start:self.i], line, col,
                         self.base_pos + start, self.base_pos + self.i, **kw)

        if _is_id_start(ch) or (ch == "\\" and self._peek(1) == "u"):
            self._advance()
            while self.i < len(self.text) and (_is_id_part(self.text[self.i]) or self.text[self.i] == "\\"):
                self._advance()
            return make(NAME)
        if ch.isdigit() or (ch == "." and self._peek(1).isdigit()):
            self._advance()
            while self.i < len(self.text) and (self.text[self.i].isalnum() or self.text[self.i] in "._"):
                if self.text[self.i] in "eE" and self._peek(1) in "+-":
                    self._advance()
                self._advance()
            return make(NUM)
        if ch in "\"'":
            cooked = self._string(ch)
            return make(STR, cooked=cooked)
        if ch == "`":
            cooked, parts = self._template()
            return make(TEMPLATE, cooked=cooked, parts=parts)
        if ch == "/" and self._regex_allowed(prev):
            if self._regex():
                return make(REGEX)
            self.i, self.line, self.col = start, line, col
        for p in _PUNCTUATORS:
            if self.text.startswith(p, self.i):
                # `?.` followed by a digit is a conditional, not optional chaining
                if p == "?." and self._peek(2).isdigit():
                    continue
                self._advance(len(p))
                return make(PUNCT)
        self._advance()
        return make(PUNCT)

    def _escape(self, out: list[str]) -> None:
        self._advance()  # backslash
        e = self._peek()
        if e == "":
            return
        if e == "x" and len(self.text) >= self.i + 3:
            try:
                out.append(chr(int(self.text[self.i + 1:self.i + 3], 16)))
                self._advance(3)
                return
            except (ValueError, OverflowError):
                pass
        if e == "u":
            if self._peek(1) == "{":
                close = self.text.find("}", self.i)
                if close > 0:
                    try:
                        out.append(chr(int(self.text[self.i + 2:close], 16)))
                        self._advance(close + 1 - self.i)
                        return
                    except (ValueError, OverflowError):
                        pass
            else:
                try:
                    out.append(chr(int(self.text[self.i + 1:self.i + 5], 16)))
                    self._advance(5)
                    return
                except (ValueError, OverflowError):
                    pass
        if e == "\r" and self._peek(1) == "\n":
            self._advance(2)
            return
        if e == "\n":
            self._advance()
            return
        out.append(_SIMPLE.get(e, e))
        self._advance()

    def _string(self, quote: str) -> str:
        self._advance()
        out: list[str] = []
        while self.i < len(self.text):
            ch = self.text[self.i]
            if ch == quote:
                self._advance()
                break
            if ch == "\n":
                break
            if ch == "\\":
                self._escape(out)
                continue
            out.append(ch)
            self._advance()
        return "".join(out)

    def _template(self) -> tuple[str, list[TemplatePart]]:
        self._advance()
        out: list[str] = []
        parts: list[TemplatePart] = []
        while self.i < len(self.text):
            ch = self.text[self.i]
            if ch == "`":
                self._advance()
                break
            if ch == "\\":
                self._escape(out)
                continue
            if ch == "$" and self._peek(1) == "{":
                self._advance(2)
                begin, line, col = self.i, self.line, self.col
                depth = 1
                while self.i < len(self.text):
                    c = self.text[self.i]
                    if c in "\"'":
                        self._string(c)
                        continue
                    if c == "`":
                        self._template()
                        continue
                    if c == "{":
                        depth += 1
                    elif c == "}":
                        depth -= 1
                        if depth == 0:
                            break
                    self._advance()
                parts.append(TemplatePart(self.text[begin:self.i], line, col, self.base_pos + begin))
                self._advance()
                continue
            out.append(ch)
            self._advance()
        return "".join(out), parts

    def _regex(self) -> bool:
        j = self.i + 1
        in_class = False
        while j < len(self.text):
            c = self.text[j]
            if c == "\n":
                return False
            if c == "\\":
                j += 2
                continue
            if c == "[":
                in_class = True
            elif c == "]":
                in_class = False
            elif c == "/" and not in_class:
                j += 1
                while j < len(self.text) and _is_id_part(self.text[j]):
                    j += 1
                self._advance(j - self.i)
                return True
            j += 1
        return False


def tokenize(text: str, line: int = 1, col: int = 1, pos: int = 0) -> list[Token]:
    return Lexer(text, line, col, pos).tokenize()
