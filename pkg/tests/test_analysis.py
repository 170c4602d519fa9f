from __future__ import annotations

import zipfile

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from hybridscan import report
from hybridscan.analysis import (
    Confidence, EmptyPackage, Framework, Verdict, corpus_stats, find_sinks, find_sources, ingest_app,
    scan_app, taint_flow,
)
from hybridscan.sources import apply_source_overrides

PAGE = """<html><head><script src="cordova.js"></script><script src="js/app.js"></script></head>
<body><div id="out"></div></body></html>
"""


def test_bluetooth_callback_into_html(make_app):
    root = make_app({
        "www/index.html": PAGE,
        "www/js/app.js": "bluetoothSerial.list(function (devices) {\n"
                         "  var first = devices[0];\n"
                         "  $('#out').html(first.name);\n"
                         "});\n",
    })
    rep = scan_app(root)
    assert rep.verdict is Verdict.VULNERABLE
    assert rep.framework is Framework.PHONEGAP_LIKE
    confirmed = [f for f in rep.findings if f.confidence is Confidence.CONFIRMED]
    assert len(confirmed) == 1
    f = confirmed[0]
    assert f.source.channel == "Bluetooth" and f.sink.sink.api_name == "html()"
    assert [s.name for s in f.path] == ["devices", "first", f.path[-1].name]
    assert f.sink.location.line == 3 and f.sink.location.path == "www/js/app.js"


def test_barcode_into_innerhtml(make_app):
    root = make_app({
        "index.html": PAGE,
        "js/app.js": "cordova.plugins.barcodeScanner.scan(function (result) {\n"
                     "  document.getElementById('out').innerHTML = 'Code: ' + result.text;\n"
                     "}, function (e) {});\n",
    })
    rep = scan_app(root)
    assert rep.verdict is Verdict.VULNERABLE
    assert rep.findings[0].source.channel == "QRCode"


def test_text_sinks_are_recorded_not_flagged(make_app):
    root = make_app({
        "index.html": PAGE,
        "js/app.js": "nfc.addNdefListener(function (ev) { out.textContent = ev.tag.id; });",
    })
    rep = scan_app(root)
    assert rep.sink_usage == {"textContent": 1}
    assert not rep.conditions.uses_vulnerable_sinks
    assert rep.verdict is Verdict.NOT_VULNERABLE


def test_cross_file_is_cooccurrence_only(make_app):
    root = make_app({
        "index.html": PAGE,
        "js/scan.js": "WifiWizard.getScanResults(function (list) { window.cache = list; });",
        "js/view.js": "function show(x) { $('#out').append(x); }",
    })
    rep = scan_app(root)
    assert rep.conditions.reads_channels and rep.conditions.uses_vulnerable_sinks
    assert not rep.conditions.flow_confirmed
    assert rep.verdict is Verdict.NOT_VULNERABLE
    assert {f.confidence for f in rep.findings} <= {Confidence.COOCCURRENCE}
    assert scan_app(root, accept_cooccurrence=True).verdict is Verdict.POTENTIALLY_VULNERABLE


def test_internal_source_is_not_external(make_app):
    root = make_app({
        "index.html": PAGE,
        "js/app.js": "navigator.contacts.find(['name'], function (cs) { el.innerHTML = cs[0].name; });",
    })
    rep = scan_app(root)
    assert any(f.confidence is Confidence.CONFIRMED for f in rep.findings)
    assert not rep.conditions.reads_channels
    assert rep.verdict is Verdict.NOT_VULNERABLE


def test_inline_script_positions_are_page_coordinates(make_app):
    root = make_app({
        "index.html": "<html><body>\n<p>hi</p>\n<script>\n"
                      "smsreceiver.startReception(function (m) { document.write(m); });\n"
                      "</script></body></html>",
    })
    rep = scan_app(root)
    assert rep.verdict is Verdict.VULNERABLE
    assert rep.findings[0].sink.location.line == 4


def test_lexical_fallback_keeps_sinks(make_app):
    root = make_app({
        "index.html": PAGE,
        "js/app.js": "var x = {{{ broken;\nel.innerHTML = y +;\n",
    })
    sinks = find_sinks(ingest_app(root))
    assert any(s.sink.api_name == "innerHTML/outerHTML" for s in sinks)


def test_bridge_exec_is_a_source(make_app):
    root = make_app({
        "app.js": "cordova.exec(function (name) { $('#n').prepend(name); }, null, 'BluetoothSerial', 'list', []);",
    })
    pkg = ingest_app(root)
    assert pkg.framework is Framework.PHONEGAP_LIKE
    assert [s.channel for s in find_sources(pkg)] == ["Bluetooth"]
    assert taint_flow(pkg)


def test_source_override_adds_api(make_app):
    root = make_app({"a.js": "acme.readTag(function (t) { $('#x').html(t); });"})
    assert scan_app(root).verdict is Verdict.NOT_VULNERABLE
    catalog = apply_source_overrides("callback:acme.readTag=NFC:0")
    assert scan_app(root, catalog).verdict is Verdict.VULNERABLE


def test_zip_ingest_matches_directory(make_app, tmp_path):
    files = {"index.html": PAGE, "js/app.js": "bluetoothSerial.list(function (d) { $('#o').html(d); });"}
    root = make_app(files)
    archive = tmp_path / "app.zip"
    with zipfile.ZipFile(archive, "w") as z:
        for rel, text in files.items():
            z.writestr(rel, text)
    a, b = scan_app(root), scan_app(archive)
    assert a.verdict == b.verdict
    assert [report.finding(f) for f in a.findings] == [report.finding(f) for f in b.findings]


def test_empty_package(make_app):
    root = make_app({"README.txt": "nothing"})
    with pytest.raises(EmptyPackage):
        ingest_app(root)


def test_no_bridge_means_unknown_framework(make_app):
    root = make_app({"index.html": "<p>plain site</p><script>alert(1)</script>"})
    assert ingest_app(root).framework is Framework.UNKNOWN


def test_deterministic_serialization():
    from conftest import APPS
    a = report.dumps(report.scan_report(scan_app(APPS / "bt-showcase")))
    b = report.dumps(report.scan_report(scan_app(APPS / "bt-showcase")))
    assert a == b


def test_corpus_fraction(tmp_path):
    roots = []
    for i in range(10):
        root = tmp_path / f"app{i}"
        root.mkdir()
        body = "$('#a').html(v);" if i < 3 else "var v = 1;"
        (root / "app.js").write_text(body)
        roots.append(root)
    stats = corpus_stats(roots)
    assert stats.apps == 10
    assert stats.api_counts["html()"] == 3
    assert stats.api_fraction["html()"] == pytest.approx(0.3)


SNIPPETS = [
    "var q = 1;",
    "el.textContent = q;",
    "$('#z').text(q);",
    "function noop(a) { return a + 1; }",
    "if (q) { q = q * 2; }",
    "x.innerHTML = '<b>fixed</b>';",
]


@settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(st.lists(st.sampled_from(SNIPPETS), max_size=6))
def test_adding_unrelated_code_keeps_findings(make_app, extra):
    base = {"index.html": PAGE, "js/app.js": "bluetoothSerial.list(function (d) { $('#o').html(d); });"}
    before = scan_app(make_app(base, "base"))
    after = scan_app(make_app({**base, "js/extra.js": "\n".join(extra)}, "more"))
    keys = lambda rep: {(f.source.location, f.sink.location) for f in rep.findings if f.confidence is Confidence.CONFIRMED}
    assert keys(before) <= keys(after)
    assert after.verdict is Verdict.VULNERABLE
