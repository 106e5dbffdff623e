#!/usr/bin/env python3
"""Run the relation, corollary, and premise suites across a range of dimensions.

Example:
    python3 scripts/run_check_suites.py --max-n 3 --imax 3
"""

import argparse
import sys
import time

from nvcalc.words_generators import corollary_checks, premise_checks, relation_suite


def show(report, elapsed):
    status = "PASS" if report.all_pass else "FAIL"
    print(f"{report.kind} (n={report.n}): {status} "
          f"[{sum(1 for c in report.checks if c.asserted)} asserted checks, "
          f"{len(report.findings)} findings, {elapsed:.2f}s]")
    for name, (passed, total) in report.section_counts().items():
        print(f"    {name}: {passed}/{total}")
    for c in report.failures:
        print(f"    FAIL [{c.section}] {c.label}")
    for c in report.findings:
        print(f"    finding [{c.section}] {c.label} -> holds={c.holds}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=3)
    ap.add_argument("--imax", type=int, default=3)
    args = ap.parse_args()

    ok = True
    for n in range(1, args.max_n + 1):
        for build in (
            lambda n=n: relation_suite(n, max(args.imax, 3)),
            lambda n=n: corollary_checks(n),
            lambda n=n: premise_checks(n),
        ):
            t0 = time.monotonic()
            report = build()
            show(report, time.monotonic() - t0)
            ok = ok and report.all_pass
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
