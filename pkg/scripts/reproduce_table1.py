"""Print the sink activation matrix next to the published ticks.

    python scripts/reproduce_table1.py [--json]
"""
from __future__ import annotations

import argparse
import json

from hybridscan.sinks import SINK_CATALOG, Vector, activation_matrix

# (script tag, img onerror) as published
PUBLISHED = {
    "document.write()": (True, True),
    "appendChild()": (True, True),
    "innerHTML/outerHTML": (False, True),
    "innerText/outerText": (False, False),
    "textContent": (False, False),
    "html()": (True, True),
    "append/prepend()": (True, True),
    "before/after()": (True, True),
    "add()": (True, True),
    "replaceAll/replaceWith()": (True, True),
    "text()": (False, False),
}


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()

    got = activation_matrix()
    rows = []
    for sink in SINK_CATALOG:
        ours = (got[sink.api_name, Vector.SCRIPT_TAG], got[sink.api_name, Vector.EVENT_ATTRIBUTE])
        rows.append({"api": sink.api_name, "script": ours[0], "img": ours[1],
                     "match": ours == PUBLISHED[sink.api_name]})
    if args.json:
        print(json.dumps(rows, indent=2))
    else:
        mark = {True: "Y", False: "-"}
        print(f"{'API':28} script  img  match")
        for r in rows:
            print(f"{r['api']:28} {mark[r['script']]:^6}  {mark[r['img']]:^3}  {'ok' if r['match'] else 'DIFF'}")
    mismatches = sum(not r["match"] for r in rows)
    if not args.json:
        print(f"\n{len(rows) - mismatches}/{len(rows)} rows agree")
    return 1 if mismatches else 0


if __name__ == "__main__":
    raise SystemExit(main())
