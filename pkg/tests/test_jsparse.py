from __future__ import annotations

from hypothesis import given, settings, strategies as st

from hybridscan.jslex import EOF, REGEX, TEMPLATE, tokenize
from hybridscan.jsparse import (
    Assign, Call, Function, Ident, Member, Property, TemplateLit, VarDecl, binding_names, dotted_name,
    parse,
)


def kinds(text):
    return [t.kind for t in tokenize(text)]


def test_regex_versus_division():
    toks = tokenize("a = b / c; x = /re/g.test(s)")
    assert [t.value for t in toks if t.kind == REGEX] == ["/re/g"]


def test_template_parts_and_positions():
    toks = tokenize("\n  `hi ${name}`", line=10, col=5)
    tpl = toks[0]
    assert tpl.kind == TEMPLATE and (tpl.line, tpl.col) == (11, 3)
    assert [p.source for p in tpl.parts] == ["name"]


def test_unterminated_string_does_not_swallow_file():
    toks = tokenize("a = 'oops\nb = 1")
    assert "b" in [t.value for t in toks]
    assert toks[-1].kind == EOF


def test_member_call_chain():
    prog = parse("bluetoothSerial.list(function (devices) { show(devices); });")
    call = next(n for n in prog.walk() if isinstance(n, Call))
    assert dotted_name(call.callee) == "bluetoothSerial.list"
    fn = call.args[0]
    assert isinstance(fn, Function) and fn.params and binding_names(fn.params[0]) == ["devices"]


def test_destructuring_bindings():
    decl = next(n for n in parse("const {a, b: [c, ...d], e = 1} = x;").walk() if isinstance(n, VarDecl))
    names = [n for target, _ in decl.decls for n in binding_names(target)]
    assert set(names) == {"a", "c", "d", "e"}


def test_object_methods_and_arrows():
    prog = parse("var app = { onList: (xs) => xs.map(x => x.name), init() { return 1 } };")
    keys = {n.key for n in prog.walk() if isinstance(n, Property)}
    assert {"onList", "init"} <= keys
    assert sum(isinstance(n, Function) for n in prog.walk()) == 3


def test_template_literal_expressions_parsed():
    prog = parse("el.innerHTML = `<b>${data.name}</b>`;")
    assign = next(n for n in prog.walk() if isinstance(n, Assign))
    assert isinstance(assign.value, TemplateLit)
    assert dotted_name(assign.value.exprs[0]) == "data.name"


def test_positions_carry_offsets():
    prog = parse("x.html(y)", line=7, col=9, pos=100)
    call = next(n for n in prog.walk() if isinstance(n, Call))
    assert (call.line, call.col) == (7, 9) and call.pos == 100


def test_recovery_skips_bad_statement_only():
    prog = parse("a = 1;\nfoo(((;\nb.innerHTML = c;")
    assert prog.skipped and prog.errors
    targets = [dotted_name(n.target) for n in prog.walk() if isinstance(n, Assign)]
    assert "a" in targets and "b.innerHTML" in targets


def test_modern_syntax_accepted():
    src = """
    class A extends B { static x = 1; async *gen() { yield await f?.(a ?? b); } }
    label: for (const [k, v] of Object.entries(o)) { if (!v) continue label; }
    const re = /[/]/u, big = 10n, s = `a${`b${c}`}`;
    """
    prog = parse(src)
    assert not prog.skipped, prog.errors


def test_dotted_name_rejects_computed():
    m = next(n for n in parse("a[b].c").walk() if isinstance(n, Member))
    assert dotted_name(m) is None
    assert isinstance(parse("x").body[0].expr, Ident)


@settings(max_examples=300, deadline=None)
@given(st.text(alphabet="abc(){}[];,.=+-*/`'\"$\\ \n<>!?:01&|", max_size=120))
def test_never_raises(text):
    prog = parse(text)
    assert prog.tokens[-1].kind == EOF
    for node in prog.walk():
        assert node.line >= 1 or node is prog


@settings(max_examples=200, deadline=None)
@given(st.text(max_size=200))
def test_lexer_total_on_arbitrary_text(text):
    toks = tokenize(text)
    assert toks[-1].kind == EOF
    assert all(t.pos <= t.end for t in toks)
