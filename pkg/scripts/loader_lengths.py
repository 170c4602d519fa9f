"""Lengths of the three loader payloads for a short script URL.

    python scripts/loader_lengths.py [--url http://mu.gl]
"""
from __future__ import annotations

import argparse

from hybridscan.forge import LoaderStyle, make_loader

PUBLISHED = {
    LoaderStyle.SCRIPT_TAG: 28,
    LoaderStyle.IMG_ONERROR_DYNAMIC: 99,
    LoaderStyle.JQUERY_GET_SCRIPT: 45,
}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--url", default="http://mu.gl")
    args = ap.parse_args()
    for style in LoaderStyle:
        # the script-tag form is published with a scheme-relative URL
        url = "//" + args.url.split("://", 1)[-1] if style is LoaderStyle.SCRIPT_TAG else args.url
        p = make_loader(url, style)
        note = "" if p.length == PUBLISHED[style] else f"  (published {PUBLISHED[style]})"
        print(f"{style.value:20} {p.length:4}{note}  {p.markup}")


if __name__ == "__main__":
    main()
