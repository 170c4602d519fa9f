from __future__ import annotations

import pytest

from hybridscan.plugins import (
    Controllability, NotAPlugin, PluginCategory, PluginProfile, Purpose, audit_companion_js, build_profile,
    classify_plugin, default_evidence, plugin_roots, returned_data, taxonomy_counts,
)

PLUGIN_XML = """<?xml version="1.0"?>
<plugin xmlns="http://apache.org/cordova/ns/plugins/1.0" id="{id}" version="1.0.0">
  <name>{id}</name>
  <js-module src="www/{js}" name="{js}"><clobbers target="{target}" /></js-module>
</plugin>
"""


def write_plugin(tmp_path, name, java, js="", example=None, target="window.demo"):
    root = tmp_path / name
    (root / "src/android").mkdir(parents=True)
    (root / "src/android/Demo.java").write_text(java)
    if js:
        (root / "www").mkdir()
        (root / "www/demo.js").write_text(js)
    (root / "plugin.xml").write_text(PLUGIN_XML.format(id=name, js="demo.js", target=target))
    if example:
        (root / "example").mkdir()
        (root / "example/index.html").write_text(example)
    return root


def test_sms_receiver_fixture(plugins_dir):
    profile = build_profile(plugins_dir / "sms-receiver")
    assert classify_plugin(profile) is PluginCategory.EXTERNAL_DATA
    assert profile.channel == "SMS"
    assert any(e.label == "SMS receive API" for e in profile.evidence)
    audit = audit_companion_js(profile)
    assert audit.purpose is Purpose.BOTH
    assert [(d.file, d.line, d.sink_api) for d in audit.vulnerable_displays] == [
        ("example/index.html", 13, "html()"),
    ]


def test_constant_result_is_non_exploitable(tmp_path):
    root = write_plugin(tmp_path, "ok-only", 'callbackContext.success("OK");', "exports.x = 1;")
    profile = build_profile(root)
    assert profile.returns_data and profile.data_controllability is Controllability.FIXED
    assert classify_plugin(profile) is PluginCategory.NON_EXPLOITABLE_DATA


def test_no_result_is_no_data(tmp_path):
    root = write_plugin(tmp_path, "silent", "callbackContext.success();", "")
    profile = build_profile(root)
    assert not profile.returns_data
    assert classify_plugin(profile) is PluginCategory.NO_DATA
    assert audit_companion_js(profile).purpose is Purpose.NO_JS


def test_wifi_scan_evidence(tmp_path):
    java = "List<ScanResult> r = wifiManager.getScanResults();\ncallbackContext.success(toJson(r));"
    js = "var demo = { scan: function (ok) { cordova.exec(ok, null, 'Demo', 'scan', []); } };"
    example = "<script>window.demo.scan(function (aps) { document.body.innerHTML = aps[0].SSID; });</script>"
    profile = build_profile(write_plugin(tmp_path, "wscan", java, js, example))
    assert classify_plugin(profile) is PluginCategory.EXTERNAL_DATA
    audit = audit_companion_js(profile)
    assert audit.purpose is Purpose.BOTH
    assert [d.sink_api for d in audit.vulnerable_displays] == ["innerHTML/outerHTML"]


@pytest.mark.parametrize("java,expected", [
    ('callbackContext.success("done");', (True, True)),
    ("callbackContext.success(obj.toString());", (True, False)),
    ("callbackContext.sendPluginResult(new PluginResult(PluginResult.Status.OK, value));", (True, False)),
    ("callbackContext.sendPluginResult(new PluginResult(PluginResult.Status.OK));", (False, False)),
    ("[self.commandDelegate sendPluginResult:[CDVPluginResult resultWithStatus:CDVCommandStatus_OK messageAsString:name] callbackId:cid];", (True, False)),
])
def test_returned_data(java, expected):
    assert returned_data(java) == expected


def test_image_directory_is_not_a_plugin(tmp_path):
    (tmp_path / "img").mkdir()
    (tmp_path / "img/logo.png").write_bytes(b"\x89PNG")
    with pytest.raises(NotAPlugin):
        build_profile(tmp_path / "img")


def test_profile_invariant():
    with pytest.raises(ValueError):
        PluginProfile("x", [], [], False, Controllability.FIXED)


def test_taxonomy_counts_empty_and_fixture(plugins_dir):
    assert taxonomy_counts([]) == {c: 0 for c in PluginCategory}
    counts = taxonomy_counts(build_profile(p) for p in plugin_roots(plugins_dir))
    assert sum(counts.values()) == 30


def test_untested_channel_tag(plugins_dir):
    profile = build_profile(plugins_dir / "speech-input")
    assert classify_plugin(profile) is PluginCategory.EXTERNAL_DATA
    assert "untested channel" in profile.tags


def test_evidence_table_is_data():
    rules = default_evidence()
    assert {r.controllability for r in rules} >= {
        Controllability.EXTERNAL_ENTITY, Controllability.INTERNAL_RESOURCE, Controllability.WEB_CONTROLLED,
    }
