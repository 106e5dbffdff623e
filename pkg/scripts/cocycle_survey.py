#!/usr/bin/env python3
"""Survey the truncated symmetric difference X Δ gX over a depth range.

Prints, per truncation depth, the cumulative member counts, the verdict, and
the squared norm, and shows the member rectangles at the final depth.

Examples:
    python3 scripts/cocycle_survey.py --n 1 --word "X[1,0]" --depths 1..8
    python3 scripts/cocycle_survey.py --n 2 --word "Pb[0]" --depths 2..6
"""

import argparse
import sys
import time

from nvcalc.ends_cocycle import sym_diff_truncated
from nvcalc.words_generators import eval_word


def fmt(rect_words):
    return ",".join(w or "e" for w in rect_words)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, required=True)
    ap.add_argument("--word", required=True)
    ap.add_argument("--depths", default="1..6", help="e.g. '1..8' or '5'")
    args = ap.parse_args()

    if ".." in args.depths:
        lo, _, hi = args.depths.partition("..")
        depths = range(int(lo), int(hi) + 1)
    else:
        depths = [int(args.depths)]

    g = eval_word(args.word, args.n)
    last = None
    print(f"word: {args.word}   (n={args.n})")
    print(f"{'depth':>5}  {'total':>6}  {'norm':>8}  verdict")
    for d in depths:
        t0 = time.monotonic()
        last = sym_diff_truncated(g, d)
        dt = time.monotonic() - t0
        print(f"{d:>5}  {last.total:>6}  {last.norm:>8.4f}  {last.verdict}"
              f"   [{dt:.2f}s]")
    if last is not None:
        print("X - gX:", " ".join(fmt(m.rect.words) for m in last.out_side) or "(none)")
        print("gX - X:", " ".join(fmt(r.words) for r in last.in_side) or "(none)")
        if last.open_finding:
            print(last.open_finding)
    return 0


if __name__ == "__main__":
    sys.exit(main())
