"""Lightweight JavaScript parser.

Recovers enough structure for source/sink matching and taint tracking:
calls, member accesses, assignments, declarations, literals, templates and
function literals.  Statements it cannot parse are skipped with their
token range recorded, so callers can fall back to token-level matching.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .jslex import EOF, NAME, NUM, PUNCT, REGEX, STR, TEMPLATE, Token, tokenize


class ParseError(Exception):
    def __init__(self, message: str, token: Token) -> None:
        super().__init__(f"{message} at {token.line}:{token.col} near {token.value!r}")
        self.token = token


@dataclass(eq=False)
class Node:
    line: int = field(default=0, kw_only=True, repr=False)
    col: int = field(default=0, kw_only=True, repr=False)
    pos: int = field(default=0, kw_only=True, repr=False)
    end: int = field(default=0, kw_only=True, repr=False)

    def children(self) -> Iterator["Node"]:
        for f in dataclasses.fields(self):
            yield from _nodes_in(getattr(self, f.name))

    def walk(self) -> Iterator["Node"]:
        stack: list[Node] = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(list(node.children())))


def _nodes_in(value: object) -> Iterator[Node]:
    if isinstance(value, Node):
        yield value
    elif isinstance(value, (list, tuple)):
        for item in value:
            yield from _nodes_in(item)


# expressions
@dataclass(eq=False)
class Ident(Node):
    name: str


@dataclass(eq=False)
class Literal(Node):
    value: object
    kind: str  # str, num, regex, bool, null, undefined


@dataclass(eq=False)
class TemplateLit(Node):
    cooked: str
    exprs: list[Node]
    tag: Optional[Node] = None


@dataclass(eq=False)
class Member(Node):
    obj: Node
    prop: Optional[str]
    computed: Optional[Node] = None
    optional: bool = False


@dataclass(eq=False)
class Call(Node):
    callee: Node
    args: list[Node]
    is_new: bool = False


@dataclass(eq=False)
class Assign(Node):
    op: str
    target: Node
    value: Node


@dataclass(eq=False)
class Binary(Node):
    op: str
    left: Node
    right: Node


@dataclass(eq=False)
class Unary(Node):
    op: str
    arg: Node
    prefix: bool = True


@dataclass(eq=False)
class Conditional(Node):
    test: Node
    then: Node
    other: Node


@dataclass(eq=False)
class ArrayLit(Node):
    elements: list[Node]


@dataclass(eq=False)
class Property(Node):
    key: Optional[str]
    value: Node
    computed: Optional[Node] = None


@dataclass(eq=False)
class ObjectLit(Node):
    props: list[Node]


@dataclass(eq=False)
class Spread(Node):
    arg: Node


@dataclass(eq=False)
class Sequence(Node):
    exprs: list[Node]


@dataclass(eq=False)
class Function(Node):
    name: Optional[str]
    params: list[Node]
    body: list[Node]
    arrow: bool = False

    def param_names(self) -> list[str]:
        return [n for p in self.params for n in binding_names(p)]


@dataclass(eq=False)
class ClassDef(Node):
    name: Optional[str]
    base: Optional[Node]
    members: list[Node]


# statements
@dataclass(eq=False)
class VarDecl(Node):
    kind: str
    decls: list[tuple]  # (target, init or None)


@dataclass(eq=False)
class ExprStmt(Node):
    expr: Node


@dataclass(eq=False)
class Block(Node):
    body: list[Node]


@dataclass(eq=False)
class If(Node):
    test: Node
    then: Node
    other: Optional[Node] = None


@dataclass(eq=False)
class Loop(Node):
    """for / while / do-while; ``each`` is set for for-in and for-of."""

    init: Optional[Node]
    test: Optional[Node]
    update: Optional[Node]
    body: Node
    each: Optional[str] = None


@dataclass(eq=False)
class Return(Node):
    arg: Optional[Node]


@dataclass(eq=False)
class Throw(Node):
    arg: Node


@dataclass(eq=False)
class Try(Node):
    block: Node
    param: Optional[Node]
    handler: Optional[Node]
    finalizer: Optional[Node]


@dataclass(eq=False)
class Switch(Node):
    disc: Node
    cases: list[tuple]  # (test or None, [stmts])


@dataclass(eq=False)
class Empty(Node):
    pass


@dataclass(eq=False)
class Program(Node):
    body: list[Node]
    skipped: list[tuple[int, int]] = field(default_factory=list)  # token index ranges
    errors: list[str] = field(default_factory=list)
    tokens: list[Token] = field(default_factory=list, repr=False)

    def children(self) -> Iterator[Node]:
        return iter(self.body)


def binding_names(target: Node) -> list[str]:
    """Identifiers bound by a declaration or assignment target pattern."""
    if isinstance(target, Ident):
        return [target.name]
    if isinstance(target, Assign):  # default value
        return binding_names(target.target)
    if isinstance(target, Spread):
        return binding_names(target.arg)
    if isinstance(target, ArrayLit):
        return [n for e in target.elements for n in binding_names(e)]
    if isinstance(target, ObjectLit):
        return [n for p in target.props for n in binding_names(p)]
    if isinstance(target, Property):
        return binding_names(target.value)
    return []


def dotted_name(node: Node) -> Optional[str]:
    """``a.b.c`` for plain member chains (``this`` allowed), else None."""
    parts: list[str] = []
    while isinstance(node, Member):
        if node.prop is None:
            return None
        parts.append(node.prop)
        node = node.obj
    if isinstance(node, Ident):
        parts.append(node.name)
        return ".".join(reversed(parts))
    return None


_ASSIGN_OPS = frozenset(
    "= += -= *= /= %= **= <<= >>= >>>= &= |= ^= &&= ||= ??=".split()
)
_BINARY_PREC = {
    "??": 1, "||": 2, "&&": 3, "|": 4, "^": 5, "&": 6,
    "==": 7, "!=": 7, "===": 7, "!==": 7,
    "<": 8, ">": 8, "<=": 8, ">=": 8, "instanceof": 8, "in": 8,
    "<<": 9, ">>": 9, ">>>": 9,
    "+": 10, "-": 10, "*": 11, "/": 11, "%": 11, "**": 12,
}
_UNARY = frozenset("! ~ + - typeof void delete await".split())
_STMT_KEYWORDS = frozenset(
    "var let const function async class if for while do return break continue throw try switch import export".split()
)


class Parser:
    def __init__(self, tokens: list[Token]) -> None:
        self.toks = tokens
        self.i = 0
        self.no_in = False
        self.skipped: list[tuple[int, int]] = []
        self.errors: list[str] = []

    # token helpers -------------------------------------------------------
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Token:
        j = min(self.i + k, len(self.toks) - 1)
        return self.toks[j]

    def next(self) -> Token:
        t = self.toks[self.i]
        if t.kind != EOF:
            self.i += 1
        return t

    def at(self, *values: str) -> bool:
        t = self.tok
        return t.kind in (PUNCT, NAME) and t.value in values

    def eat(self, value: str) -> bool:
        if self.at(value):
            self.next()
            return True
        return False

    def expect(self, value: str) -> Token:
        if not self.at(value):
            raise ParseError(f"expected {value!r}", self.tok)
        return self.next()

    def _finish(self, node: Node, start: Token) -> Node:
        node.line, node.col, node.pos = start.line, start.col, start.pos
        prev = self.toks[self.i - 1] if self.i > 0 else start
        node.end = max(prev.end, start.end)
        return node

    def semicolon(self) -> None:
        if self.eat(";"):
            return
        if self.at("}") or self.tok.kind == EOF or self.tok.newline_before:
            return
        raise ParseError("expected ';'", self.tok)

    # program / recovery --------------------------------------------------
    def parse_program(self) -> Program:
        start = self.tok
        body = self._statement_list(top=True)
        prog = Program(body, self.skipped, self.errors, self.toks)
        return self._finish(prog, start)

    def _statement_list(self, top: bool) -> list[Node]:
        body: list[Node] = []
        while self.tok.kind != EOF and (top or not self.at("}")):
            begin = self.i
            try:
                body.append(self.statement())
            except (ParseError, RecursionError) as exc:
                self.errors.append(str(exc) if isinstance(exc, ParseError) else "nesting too deep")
                self.i = begin
                self.skipped = [r for r in self.skipped if r[0] < begin]
                self._skip_statement(top)
                self.skipped.append((begin, self.i))
        return body

    def _skip_statement(self, top: bool) -> None:
        depth = 0
        braces = 0
        first = True
        # a stray ";" inside unclosed parens ends the junk unless it is a for header
        in_for = self.tok.is_name("for")
        while self.tok.kind != EOF:
            t = self.tok
            if not first and depth == 0 and t.newline_before and not t.is_punct(".", "+", ")", "]", ","):
                return
            if t.is_punct("(", "[", "{"):
                depth += 1
                braces += t.value == "{"
            elif t.is_punct(")", "]", "}"):
                braces -= t.value == "}" and braces > 0
                if depth == 0:
                    if t.value == "}" and not top:
                        if first:
                            self.next()
                        return
                    self.next()
                    return
                depth -= 1
            elif t.is_punct(";") and (depth == 0 or (braces == 0 and not in_for)):
                self.next()
                return
            self.next()
            first = False

    # statements ----------------------------------------------------------
    def statement(self) -> Node:
        t = self.tok
        if t.kind == PUNCT:
            if t.value == "{":
                return self.block()
            if t.value == ";":
                self.next()
                return self._finish(Empty(), t)
        if t.kind == NAME:
            v = t.value
            if v in ("var", "let", "const") and not (v == "let" and self.peek().is_punct("(", ".")):
                node = self.var_decl()
                self.semicolon()
                return self._finish(node, t)
            if v == "function" or (v == "async" and self.peek().is_name("function") and not self.peek().newline_before):
                return self.function(declaration=True)
            if v == "class":
                return self.class_def()
            if v == "if":
                self.next()
                self.expect("(")
                test = self.expression()
                self.expect(")")
                then = self.statement()
                other = self.statement() if self.eat("else") else None
                return self._finish(If(test, then, other), t)
            if v == "for":
                return self.for_statement()
            if v == "while":
                self.next()
                self.expect("(")
                test = self.expression()
                self.expect(")")
                return self._finish(Loop(None, test, None, self.statement()), t)
            if v == "do":
                self.next()
                body = self.statement()
                self.expect("while")
                self.expect("(")
                test = self.expression()
                self.expect(")")
                self.eat(";")
                return self._finish(Loop(None, test, None, body), t)
            if v == "return":
                self.next()
                arg = None
                if not (self.at(";", "}") or self.tok.kind == EOF or self.tok.newline_before):
                    arg = self.expression()
                self.semicolon()
                return self._finish(Return(arg), t)
            if v in ("break", "continue"):
                self.next()
                if self.tok.kind == NAME and not self.tok.newline_before:
                    self.next()
                self.semicolon()
                return self._finish(Empty(), t)
            if v == "throw":
                self.next()
                arg = self.expression()
                self.semicolon()
                return self._finish(Throw(arg), t)
            if v == "try":
                return self.try_statement()
            if v == "switch":
                return self.switch_statement()
            if v == "import" and not self.peek().is_punct("(", "."):
                return self._skip_module_statement()
            if v == "export":
                self.next()
                if self.eat("default"):
                    if self.at("function", "class", "async"):
                        return self.statement()
                    expr = self.assignment()
                    self.semicolon()
                    return self._finish(ExprStmt(expr), t)
                if self.at("var", "let", "const", "function", "class", "async"):
                    return self.statement()
                return self._skip_module_statement()
            if self.peek().is_punct(":") and v not in _STMT_KEYWORDS:
                self.next()
                self.next()
                return self.statement()
        expr = self.expression()
        self.semicolon()
        return self._finish(ExprStmt(expr), t)

    def _skip_module_statement(self) -> Node:
        t = self.next()
        depth = 0
        while self.tok.kind != EOF:
            if self.tok.is_punct("{"):
                depth += 1
            elif self.tok.is_punct("}"):
                depth -= 1
            elif depth == 0 and (self.tok.is_punct(";") or self.tok.newline_before and self.tok.kind == NAME
                                 and self.tok.value not in ("from", "as")):
                break
            self.next()
        self.eat(";")
        return self._finish(Empty(), t)

    def block(self) -> Node:
        t = self.expect("{")
        body = self._statement_list(top=False)
        self.expect("}")
        return self._finish(Block(body), t)

    def var_decl(self) -> Node:
        t = self.next()
        decls = []
        while True:
            target = self.binding_target()
            init = None
            if self.eat("="):
                init = self.assignment()
            decls.append((target, init))
            if not self.eat(","):
                break
        return self._finish(VarDecl(t.value, decls), t)

    def binding_target(self) -> Node:
        t = self.tok
        if t.is_punct("[", "{"):
            return self.primary()
        if t.kind == NAME:
            self.next()
            return self._finish(Ident(t.value), t)
        raise ParseError("expected binding", t)

    def for_statement(self) -> Node:
        t = self.next()
        self.eat("await")
        self.expect("(")
        init: Optional[Node] = None
        if not self.at(";"):
            self.no_in = True
            try:
                if self.at("var", "let", "const"):
                    it = self.tok
                    init = self._finish(self.var_decl(), it)
                else:
                    init = self.expression()
            finally:
                self.no_in = False
            if self.at("in", "of"):
                each = self.next().value
                right = self.expression()
                self.expect(")")
                body = self.statement()
                return self._finish(Loop(init, right, None, body, each=each), t)
        self.expect(";")
        test = None if self.at(";") else self.expression()
        self.expect(";")
        update = None if self.at(")") else self.expression()
        self.expect(")")
        return self._finish(Loop(init, test, update, self.statement()), t)

    def try_statement(self) -> Node:
        t = self.next()
        block = self.block()
        param = handler = finalizer = None
        if self.eat("catch"):
            if self.eat("("):
                param = self.binding_target()
                self.expect(")")
            handler = self.block()
        if self.eat("finally"):
            finalizer = self.block()
        return self._finish(Try(block, param, handler, finalizer), t)

    def switch_statement(self) -> Node:
        t = self.next()
        self.expect("(")
        disc = self.expression()
        self.expect(")")
        self.expect("{")
        cases = []
        while not self.at("}") and self.tok.kind != EOF:
            if self.eat("default"):
                test = None
            else:
                self.expect("case")
                test = self.expression()
            self.expect(":")
            body = []
            while not self.at("case", "default", "}") and self.tok.kind != EOF:
                body.append(self.statement())
            cases.append((test, body))
        self.expect("}")
        return self._finish(Switch(disc, cases), t)

    # functions and classes -------------------------------------------------
    def function(self, declaration: bool = False) -> Node:
        t = self.tok
        self.eat("async")
        self.expect("function")
        self.eat("*")
        name = None
        if self.tok.kind == NAME and not self.at("("):
            name = self.next().value
        params = self.params()
        body = self.function_body()
        return self._finish(Function(name, params, body), t)

    def params(self) -> list[Node]:
        self.expect("(")
        out = []
        while not self.at(")"):
            if self.at("..."):
                st = self.next()
                out.append(self._finish(Spread(self.binding_target()), st))
            else:
                target = self.binding_target()
                if self.at("="):
                    st = self.next()
                    target = self._finish(Assign("=", target, self.assignment()), st)
                out.append(target)
            if not self.eat(","):
                break
        self.expect(")")
        return out

    def function_body(self) -> list[Node]:
        self.expect("{")
        body = self._statement_list(top=False)
        self.expect("}")
        return body

    def class_def(self) -> Node:
        t = self.next()
        name = None
        if self.tok.kind == NAME and not self.at("extends", "{"):
            name = self.next().value
        base = None
        if self.eat("extends"):
            base = self.lhs()
        self.expect("{")
        members: list[Node] = []
        while not self.at("}") and self.tok.kind != EOF:
            if self.eat(";"):
                continue
            mt = self.tok
            while self.at("static", "async", "get", "set", "*") and not self.peek().is_punct("(", "=", ";", "}"):
                self.next()
            if self.at("["):
                self.next()
                self.assignment()
                self.expect("]")
            elif self.at("#"):
                self.next()
                self.next()
            else:
                self.next()
            if self.at("("):
                params = self.params()
                body = self.function_body()
                members.append(self._finish(Function(mt.value, params, body), mt))
            else:
                if self.eat("="):
                    members.append(self.assignment())
                self.semicolon()
        self.expect("}")
        return self._finish(ClassDef(name, base, members), t)

    # expressions -----------------------------------------------------------
    def expression(self) -> Node:
        t = self.tok
        first = self.assignment()
        if not self.at(","):
            return first
        exprs = [first]
        while self.eat(","):
            exprs.append(self.assignment())
        return self._finish(Sequence(exprs), t)

    def _arrow_ahead(self) -> bool:
        """Is the parenthesised group at the cursor an arrow parameter list?"""
        depth = 0
        j = self.i
        while j < len(self.toks):
            t = self.toks[j]
            if t.kind == EOF:
                return False
            if t.is_punct("(", "[", "{"):
                depth += 1
            elif t.is_punct(")", "]", "}"):
                depth -= 1
                if depth == 0:
                    nxt = self.toks[j + 1] if j + 1 < len(self.toks) else t
                    return nxt.is_punct("=>") and not nxt.newline_before
            j += 1
        return False

    def arrow(self, start: Token) -> Node:
        if self.tok.kind == NAME and not self.at("("):
            p = self.next()
            params: list[Node] = [self._finish(Ident(p.value), p)]
        else:
            params = self.params()
        self.expect("=>")
        if self.at("{"):
            body = self.function_body()
        else:
            et = self.tok
            expr = self.assignment()
            body = [self._finish(Return(expr), et)]
        return self._finish(Function(None, params, body, arrow=True), start)

    def assignment(self) -> Node:
        t = self.tok
        if t.is_name("async") and not self.peek().newline_before:
            nxt = self.peek()
            if nxt.kind == NAME and self.peek(2).is_punct("=>"):
                self.next()
                return self.arrow(t)
            if nxt.is_punct("("):
                self.next()
                if self._arrow_ahead():
                    return self.arrow(t)
                self.i -= 1
        if t.kind == NAME and self.peek().is_punct("=>"):
            return self.arrow(t)
        if t.is_punct("(") and self._arrow_ahead():
            return self.arrow(t)
        if t.is_name("yield"):
            self.next()
            self.eat("*")
            arg = None
            if not (self.at(")", "]", "}", ",", ";", ":") or self.tok.kind == EOF or self.tok.newline_before):
                arg = self.assignment()
            return self._finish(Unary("yield", arg or Literal(None, "undefined")), t)
        left = self.conditional()
        if self.tok.kind == PUNCT and self.tok.value in _ASSIGN_OPS:
            op = self.next().value
            value = self.assignment()
            return self._finish(Assign(op, left, value), t)
        return left

    def conditional(self) -> Node:
        t = self.tok
        test = self.binary(0)
        if self.eat("?"):
            saved = self.no_in
            self.no_in = False
            then = self.assignment()
            self.no_in = saved
            self.expect(":")
            other = self.assignment()
            return self._finish(Conditional(test, then, other), t)
        return test

    def binary(self, min_prec: int) -> Node:
        t = self.tok
        left = self.unary()
        while True:
            op_tok = self.tok
            op = op_tok.value
            if op_tok.kind not in (PUNCT, NAME) or op not in _BINARY_PREC:
                return left
            if op_tok.kind == NAME and op not in ("instanceof", "in"):
                return left
            if op == "in" and self.no_in:
                return left
            prec = _BINARY_PREC[op]
            if prec <= min_prec:
                return left
            self.next()
            right = self.binary(prec - 1 if op == "**" else prec)
            left = self._finish(Binary(op, left, right), t)

    def unary(self) -> Node:
        t = self.tok
        if t.kind in (PUNCT, NAME) and t.value in _UNARY:
            if t.kind == NAME and t.value == "await" and self.peek().is_punct(")", ";", ",", "=", "."):
                pass
            else:
                self.next()
                return self._finish(Unary(t.value, self.unary()), t)
        if t.is_punct("++", "--"):
            self.next()
            return self._finish(Unary(t.value, self.unary()), t)
        expr = self.lhs()
        if self.tok.is_punct("++", "--") and not self.tok.newline_before:
            op = self.next().value
            return self._finish(Unary(op, expr, prefix=False), t)
        return expr

    def arguments(self) -> list[Node]:
        self.expect("(")
        args = []
        while not self.at(")"):
            if self.at("..."):
                st = self.next()
                args.append(self._finish(Spread(self.assignment()), st))
            else:
                args.append(self.assignment())
            if not self.eat(","):
                break
        self.expect(")")
        return args

    def lhs(self) -> Node:
        t = self.tok
        if t.is_name("new"):
            self.next()
            if self.eat("."):
                self.next()  # new.target
                expr: Node = self._finish(Ident("new.target"), t)
            else:
                callee = self.member_only()
                args = self.arguments() if self.at("(") else []
                expr = self._finish(Call(callee, args, is_new=True), t)
        else:
            expr = self.primary()
        return self.call_tail(expr, t)

    def member_only(self) -> Node:
        t = self.tok
        if t.is_name("new"):
            return self.lhs()
        expr = self.primary()
        while True:
            if self.eat("."):
                name = self.next()
                expr = self._finish(Member(expr, name.value), t)
            elif self.at("["):
                self.next()
                idx = self.expression()
                self.expect("]")
                expr = self._finish(Member(expr, _static_key(idx), idx), t)
            else:
                return expr

    def call_tail(self, expr: Node, t: Token) -> Node:
        while True:
            if self.at("."):
                self.next()
                if self.at("#"):
                    self.next()
                name = self.next()
                if name.kind not in (NAME,) and name.kind != PUNCT:
                    raise ParseError("expected property name", name)
                expr = self._finish(Member(expr, name.value), t)
            elif self.at("?."):
                self.next()
                if self.at("("):
                    expr = self._finish(Call(expr, self.arguments()), t)
                elif self.at("["):
                    self.next()
                    idx = self.expression()
                    self.expect("]")
                    expr = self._finish(Member(expr, _static_key(idx), idx, optional=True), t)
                else:
                    name = self.next()
                    expr = self._finish(Member(expr, name.value, optional=True), t)
            elif self.at("["):
                self.next()
                saved = self.no_in
                self.no_in = False
                idx = self.expression()
                self.no_in = saved
                self.expect("]")
                expr = self._finish(Member(expr, _static_key(idx), idx), t)
            elif self.at("("):
                expr = self._finish(Call(expr, self.arguments()), t)
            elif self.tok.kind == TEMPLATE:
                tpl = self.template(self.next())
                tpl.tag = expr
                expr = self._finish(tpl, t)
            elif self.tok.is_punct("!") and not self.tok.newline_before and self.peek().is_punct(".", ")", ",", ";"):
                self.next()  # TypeScript-style non-null assertion, tolerated
            else:
                return expr

    def template(self, t: Token) -> TemplateLit:
        exprs: list[Node] = []
        for part in t.parts:
            sub = Parser(tokenize(part.source, part.line, part.col, part.pos))
            if sub.tok.kind == EOF:
                continue
            exprs.append(sub.expression())
        return self._finish(TemplateLit(t.cooked or "", exprs), t)

    def primary(self) -> Node:
        t = self.tok
        if t.kind == NAME:
            if t.value == "function" or (t.value == "async" and self.peek().is_name("function")):
                return self.function()
            if t.value == "class":
                return self.class_def()
            self.next()
            if t.value in ("true", "false"):
                return self._finish(Literal(t.value == "true", "bool"), t)
            if t.value == "null":
                return self._finish(Literal(None, "null"), t)
            return self._finish(Ident(t.value), t)
        if t.kind == STR:
            self.next()
            return self._finish(Literal(t.cooked, "str"), t)
        if t.kind == NUM:
            self.next()
            return self._finish(Literal(t.value, "num"), t)
        if t.kind == REGEX:
            self.next()
            return self._finish(Literal(t.value, "regex"), t)
        if t.kind == TEMPLATE:
            self.next()
            return self.template(t)
        if t.is_punct("("):
            self.next()
            saved = self.no_in
            self.no_in = False
            expr = self.expression()
            self.no_in = saved
            self.expect(")")
            return expr
        if t.is_punct("["):
            self.next()
            elements: list[Node] = []
            while not self.at("]"):
                if self.at(","):
                    self.next()
                    continue
                if self.at("..."):
                    st = self.next()
                    elements.append(self._finish(Spread(self.assignment()), st))
                else:
                    elements.append(self.assignment())
                if not self.at("]"):
                    self.expect(",")
            self.expect("]")
            return self._finish(ArrayLit(elements), t)
        if t.is_punct("{"):
            return self.object_literal()
        raise ParseError("unexpected token", t)

    def object_literal(self) -> Node:
        t = self.expect("{")
        props: list[Node] = []
        while not self.at("}"):
            pt = self.tok
            if self.at("..."):
                self.next()
                props.append(self._finish(Spread(self.assignment()), pt))
            else:
                while self.at("async", "get", "set", "*") and not self.peek().is_punct(",", ":", "(", "}", "="):
                    self.next()
                key: Optional[str]
                computed = None
                kt = self.next()
                if kt.is_punct("["):
                    computed = self.assignment()
                    self.expect("]")
                    key = _static_key(computed)
                elif kt.kind == STR:
                    key = kt.cooked
                elif kt.kind in (NAME, NUM):
                    key = kt.value
                else:
                    raise ParseError("bad property key", kt)
                if self.eat(":"):
                    value = self.assignment()
                elif self.at("("):
                    params = self.params()
                    body = self.function_body()
                    value = self._finish(Function(key, params, body), kt)
                elif self.at("="):  # shorthand with default, only valid in patterns
                    self.next()
                    value = self._finish(Assign("=", self._finish(Ident(kt.value), kt), self.assignment()), kt)
                else:
                    value = self._finish(Ident(kt.value), kt)
                props.append(self._finish(Property(key, value, computed), pt))
            if not self.at("}"):
                self.expect(",")
        self.expect("}")
        return self._finish(ObjectLit(props), t)


def _static_key(node: Node) -> Optional[str]:
    if isinstance(node, Literal) and node.kind in ("str", "num"):
        return str(node.value)
    return None


def parse(text: str, line: int = 1, col: int = 1, pos: int = 0) -> Program:
    """Parse ``text``; never raises."""
    parser = Parser(tokenize(text, line, col, pos))
    return parser.parse_program()
