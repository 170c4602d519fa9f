"""Three-condition funnel and per-API usage over an app corpus.

Defaults to the bundled fixture apps.

    python scripts/fixture_funnel.py [CORPUS_DIR] [--workers 4]
"""
from __future__ import annotations

import argparse

from hybridscan.analysis import app_roots, corpus_stats
from hybridscan.cli import fixtures_root


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("corpus", nargs="?", default=str(fixtures_root() / "apps"))
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    stats = corpus_stats(app_roots(args.corpus), workers=args.workers)
    print(f"apps scanned: {stats.apps} ({len(stats.empty)} without documents)")
    print(f"  read external channels      {stats.reads_channels}")
    print(f"  use executing display APIs  {stats.uses_vulnerable_sinks}")
    print(f"  both                        {stats.both}")
    print(f"  confirmed flow (vulnerable) {stats.all_three}")
    print("\nAPI usage")
    for api, n in sorted(stats.api_counts.items(), key=lambda kv: (-kv[1], kv[0])):
        print(f"  {api:26} {n:4}  {stats.api_fraction[api]:6.1%}")
    print("\nverdicts")
    for app, verdict in stats.verdicts.items():
        print(f"  {app:24} {verdict}")


if __name__ == "__main__":
    main()
