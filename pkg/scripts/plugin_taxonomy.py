"""Classify a directory of plugins and list vulnerable sample displays.

    python scripts/plugin_taxonomy.py [PLUGINS_DIR]
"""
from __future__ import annotations

import argparse
from collections import defaultdict

from hybridscan.cli import fixtures_root
from hybridscan.plugins import PluginCategory, audit_companion_js, build_profile, classify_plugin, plugin_roots


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("path", nargs="?", default=str(fixtures_root() / "plugins"))
    args = ap.parse_args()

    by_cat = defaultdict(list)
    displays = []
    for root in plugin_roots(args.path):
        prof = build_profile(root)
        by_cat[classify_plugin(prof)].append(prof)
        for d in audit_companion_js(prof).vulnerable_displays:
            displays.append((prof.name, d))

    total = sum(len(v) for v in by_cat.values())
    for cat in PluginCategory:
        names = sorted(p.name for p in by_cat[cat])
        share = len(names) / total if total else 0.0
        print(f"{cat.value:20} {len(names):3}  {share:6.1%}  {', '.join(names)}")
    print(f"\n{len(displays)} vulnerable display(s) in companion code")
    for name, d in displays:
        print(f"  {name}: {d.file}:{d.line} via {d.sink_api}")


if __name__ == "__main__":
    main()
