from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from hybridscan.sinks import (
    CANONICAL_PAYLOADS, EXECUTING_SINKS, SINK_CATALOG, TEXT_SINKS, SinkFamily, Vector, classify_sink,
    evaluate_sink,
)


def sink(name):
    kind = classify_sink(name)
    assert kind is not None
    return kind


def test_catalog_has_eleven_rows_in_table_order():
    assert [s.api_name for s in SINK_CATALOG] == [
        "document.write()", "appendChild()", "innerHTML/outerHTML", "innerText/outerText", "textContent",
        "html()", "append/prepend()", "before/after()", "add()", "replaceAll/replaceWith()", "text()",
    ]
    assert len(EXECUTING_SINKS) + len(TEXT_SINKS) == 11


@pytest.mark.parametrize("spelling,row", [
    ("innerHTML", "innerHTML/outerHTML"),
    ("outerHTML", "innerHTML/outerHTML"),
    ("html", "html()"),
    ("html()", "html()"),
    ("$('#x').html", "html()"),
    ("document.write", "document.write()"),
    ("writeln", "document.write()"),
    ("prepend", "append/prepend()"),
    ("replaceWith", "replaceAll/replaceWith()"),
    ("el.textContent", "textContent"),
])
def test_classify_sink_spellings(spelling, row):
    assert sink(spelling).api_name == row


def test_classify_sink_rejects_non_sinks():
    assert classify_sink("setAttribute") is None
    with pytest.raises(ValueError):
        classify_sink("")


def test_families():
    assert sink("innerHTML").family is SinkFamily.DOM_ATTRIBUTE
    assert sink("appendChild").family is SinkFamily.DOM_API
    assert sink("add").family is SinkFamily.JQUERY_API


def test_innerhtml_runs_onerror_but_not_script():
    s = sink("innerHTML")
    assert evaluate_sink(s, "<script>steal()</script>").executed_code == ()
    result = evaluate_sink(s, "<img src=x onerror=steal()>")
    assert result.executed_code == ("steal()",)


def test_html_runs_script_bodies_and_records_loads():
    result = evaluate_sink(sink("html"), "<script>a()</script><script src=//mu.gl></script>")
    assert result.executed_code == ("a()",)
    assert result.loaded_scripts == ("//mu.gl",)


def test_script_loader_is_inert_under_innerhtml():
    result = evaluate_sink(sink("innerHTML"), "<script src=//mu.gl></script>")
    assert not result.triggers and result.loaded_scripts == ()
    assert result.inert_markup[0].kind == "script"


def test_onerror_needs_an_unusable_source():
    s = sink("innerHTML")
    assert evaluate_sink(s, "<img src onerror=a()>").triggers
    assert evaluate_sink(s, "<img src=javascript:0 onerror=a()>").triggers
    loaded = evaluate_sink(s, "<img src=http://example.com/a.png onerror=a()>")
    assert not loaded.triggers
    assert "load" in loaded.inert_markup[0].reason


def test_user_events_do_not_fire():
    result = evaluate_sink(sink("html"), "<b onclick=a()>x</b>")
    assert not result.triggers
    assert result.inert_markup[0].reason == "requires user event"
    assert result.rendered_text == "x"


def test_rendered_text_excludes_script_bodies():
    result = evaluate_sink(sink("html"), "a<script>b()</script>c")
    assert result.rendered_text == "ac"


def test_canonical_probe_under_text_sink_is_displayed_verbatim():
    payload = CANONICAL_PAYLOADS[Vector.EVENT_ATTRIBUTE]
    result = evaluate_sink(sink("text"), payload)
    assert result.rendered_text == payload and not result.triggers


@given(st.text(max_size=80), st.sampled_from(TEXT_SINKS))
def test_text_sinks_are_identity(payload, kind):
    result = evaluate_sink(kind, payload)
    assert result.executed_code == ()
    assert result.rendered_text == payload


@given(st.text(alphabet="abc(); =.'", min_size=1, max_size=30), st.sampled_from(EXECUTING_SINKS))
def test_bare_onerror_code_is_what_runs(code, kind):
    code = code.replace(" ", "").strip() or "a"
    result = evaluate_sink(kind, f'<img src onerror="{code}">')
    assert result.executed_code == (code,)
