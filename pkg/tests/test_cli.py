from __future__ import annotations

import io
import json
from importlib import resources

import jsonschema
import pytest

from conftest import APPS, PAYLOADS, PLUGINS
from hybridscan import report
from hybridscan.cli import run
from hybridscan.sinks import classify_sink, evaluate_sink

SCHEMA = json.loads(resources.files("hybridscan").joinpath("schema/report.schema.json").read_text())


class Tty(io.StringIO):
    def isatty(self) -> bool:
        return True


def call(*argv, stdout=None):
    out, err = stdout or io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, err = call(*argv, "--format", "json", "--deterministic")
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    return code, doc


def test_schema_is_valid():
    jsonschema.Draft202012Validator.check_schema(SCHEMA)


@pytest.mark.parametrize("argv,ptype,exit_code", [
    (["scan", str(APPS / "bt-showcase")], "scan_report", 2),
    (["scan", str(APPS / "bt-showcase-safe")], "scan_report", 0),
    (["scan", "--corpus", str(APPS)], "scan_batch", 2),
    (["stats", "--corpus", str(APPS)], "stats", 0),
    (["forge", "--url", "http://mu.gl", "--style", "jquery", "--limit", "32"], "fragments", 0),
    (["plan", "--channel", "wifi", "--url", "http://mu.gl", "--verify", "innerHTML"], "injection_plan", 0),
    (["plan", "--channel", "jpeg", "--code", "x" * 90, "--limit", "40"], "injection_plan", 0),
    (["emulate", "--sink", "html", "--payload", "<script>a()</script>"], "activation", 0),
    (["emulate", "--matrix"], "activation_matrix", 0),
    (["audit-plugin", str(PLUGINS)], "plugin_audit", 0),
    (["--fixtures"], "fixtures", 0),
])
def test_every_payload_validates(argv, ptype, exit_code):
    code, doc = call_json(*argv)
    assert code == exit_code
    assert doc["payload_type"] == ptype
    assert doc["generated_at"] is None


def test_forge_example_fragments():
    code, doc = call_json("forge", "--url", "http://mu.gl", "--style", "jquery", "--limit", "32")
    frags = doc["payload"]["fragments"]
    assert len(frags) == 5
    assert frags[-1]["markup"] == "<img src onerror=eval(a+b+c+d)>"


def test_bundled_fixture_shorthand():
    code, out, _ = call("scan", "fixtures/bt-showcase")
    assert code == 2 and "Vulnerable" in out


@pytest.mark.parametrize("argv", [[], ["bogus"], ["forge", "--limit", "ten"], ["emulate", "--sink", "title", "--payload", "x"], ["emulate"]])
def test_usage_errors(argv):
    assert call(*argv)[0] == 64


@pytest.mark.parametrize("argv", [
    ["scan", "/nonexistent/app"],
    ["scan", str(APPS / "empty-app")],
    ["forge", "--url", "http://mu.gl", "--limit", "10"],
    ["plan", "--channel", "wifi", "--code", "z" * 250, "--limit", "200"],
    ["audit-plugin", str(APPS / "empty-app")],
])
def test_runtime_errors(argv):
    code, out, err = call(*argv)
    assert code == 1 and out == "" and err.startswith("hybridscan:")


def test_empty_app_is_skipped_in_batch():
    code, doc = call_json("scan", str(APPS / "empty-app"), str(APPS / "bt-showcase-safe"))
    assert code == 0
    assert [s["path"] for s in doc["payload"]["skipped"]] == ["empty-app"]


def test_output_file_written_atomically(tmp_path):
    target = tmp_path / "out.json"
    code, out, _ = call("scan", str(APPS / "wifi-finder"), "--format", "json", "-o", str(target))
    assert code == 2 and out == ""
    assert json.loads(target.read_text())["payload"]["verdict"] == "Vulnerable"
    assert [p.name for p in tmp_path.iterdir()] == ["out.json"]


def test_color_only_on_tty_and_respects_env(monkeypatch):
    monkeypatch.delenv("NO_COLOR", raising=False)
    monkeypatch.delenv("HYBRIDSCAN_NO_COLOR", raising=False)
    _, colored, _ = call("scan", str(APPS / "bt-showcase"), stdout=Tty())
    assert "\x1b[" in colored
    monkeypatch.setenv("HYBRIDSCAN_NO_COLOR", "1")
    _, plain, _ = call("scan", str(APPS / "bt-showcase"), stdout=Tty())
    assert "\x1b[" not in plain


def test_deterministic_json_is_stable():
    a = call("scan", "--corpus", str(APPS), "--format", "json", "--deterministic")[1]
    b = call("scan", "--corpus", str(APPS), "--format", "json", "--deterministic")[1]
    assert a == b
    c = call("scan", str(APPS / "bt-showcase"), "--format", "json")[1]
    assert json.loads(c)["generated_at"]


def test_channel_override_flag(tmp_path):
    path = tmp_path / "limits.txt"
    path.write_text("WiFi.SSID=28\n")
    code, doc = call_json("plan", "--channel", "wifi", "--url", "http://mu.gl", "--channels", str(path))
    assert code == 0
    assert all(len(a["value"]) <= 28 for a in doc["payload"]["assignments"])


def test_payload_fixtures_are_inert_but_activate_under_innerhtml():
    index = json.loads((PAYLOADS / "index.json").read_text())
    assert index["payloads"]
    for entry in index["payloads"]:
        text = (PAYLOADS / entry["file"]).read_text()
        assert "203.0.113." in text  # documentation address range
        assert evaluate_sink(classify_sink("innerHTML"), text).triggers
        shown = evaluate_sink(classify_sink("textContent"), text)
        assert not shown.triggers and shown.rendered_text == text
        code, out, _ = call("emulate", "--sink", "textContent", "--payload-file", str(PAYLOADS / entry["file"]))
        assert code == 0
