"""Fragment counts versus length limit.

For every limit in a range, split the jQuery loader plus a set of seeded
random programs, and record how many deliveries each needs.  Writes CSV
to stdout.

    python scripts/fragment_sweep.py --lo 25 --hi 120 --samples 50 > sweep.csv
"""
from __future__ import annotations

import argparse
import csv
import random
import statistics
import string
import sys

from hybridscan.forge import LimitTooSmall, Role, fragment_payload, make_loader

ALPHABET = string.ascii_letters + string.digits + string.punctuation + " "


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--lo", type=int, default=25)
    ap.add_argument("--hi", type=int, default=120)
    ap.add_argument("--samples", type=int, default=50)
    ap.add_argument("--length", type=int, default=200, help="random program length")
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    programs = ["".join(rng.choice(ALPHABET) for _ in range(args.length)) for _ in range(args.samples)]
    loader = make_loader("http://mu.gl", "jquery").inner_code

    out = csv.writer(sys.stdout)
    out.writerow(["limit", "loader_fragments", "random_mean", "random_max", "combiners_max", "refused"])
    for limit in range(args.lo, args.hi + 1):
        try:
            n_loader = len(fragment_payload(loader, limit))
        except LimitTooSmall:
            n_loader = ""
        counts, combiners, refused = [], [], 0
        for code in programs:
            try:
                frags = fragment_payload(code, limit)
            except LimitTooSmall:
                refused += 1
                continue
            counts.append(len(frags))
            combiners.append(sum(f.role is Role.COMBINER for f in frags))
        out.writerow([
            limit, n_loader,
            f"{statistics.mean(counts):.2f}" if counts else "",
            max(counts, default=""), max(combiners, default=""), refused,
        ])


if __name__ == "__main__":
    main()
