#!/usr/bin/env python3
"""Check the piece-count bound over a word ball of the finite generating set.

For every distinct element g in the radius-R ball (over the generating set
and its inverses), enumerate the truncated symmetric difference X Δ gX and
verify: reduced piece count of g <= (|X Δ gX| + 4)^n.  Prints a histogram of
how tight the bound is.

Example:
    python3 scripts/properness_ball.py --n 1 --ball 4
"""

import argparse
import collections
import sys
import time

from nvcalc.ends_cocycle import properness_bound_check

def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=1)
    ap.add_argument("--ball", type=int, default=4, help="word-ball radius")
    ap.add_argument(
        "--depth", type=int, default=None,
        help="fixed truncation depth (default: adaptive, element depth + 1)",
    )
    args = ap.parse_args()

    t0 = time.monotonic()
    report = properness_bound_check(args.n, args.ball, args.depth)
    dt = time.monotonic() - t0
    p = report.params
    status = "PASS" if report.all_pass else "FAIL"
    print(f"n={report.n} ball={p['ball_radius']} depth={p['depth']}: {status}")
    print(f"elements: {p['num_elements']}  stable: {p['num_stable']}  "
          f"growing: {p['num_growing']}  [{dt:.1f}s]")
    for c in report.failures:
        print(f"  FAIL {c.label}")
    slack = collections.Counter()
    for c in report.checks:
        if c.asserted:
            # label format: "<word>: pieces P <= (T+4)^n = B"
            head, _, tail = c.label.partition(": pieces ")
            pieces, bound = int(tail.split()[0]), int(tail.split()[-1])
            slack[bound - pieces] += 1
    print("bound-minus-pieces histogram (asserted elements):")
    for gap in sorted(slack):
        print(f"  slack {gap:>3}: {slack[gap]} elements")
    return 0 if report.all_pass else 1


if __name__ == "__main__":
    sys.exit(main())
