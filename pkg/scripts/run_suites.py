"""Run every invariant suite on its default configurations and tabulate the counts."""

from __future__ import annotations

import argparse
import time

from fhtkit import verify


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--suite", action="append", choices=verify.SUITES)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--jobs", type=int, default=4)
    args = ap.parse_args(argv)
    t0 = time.perf_counter()
    report = verify.run(verify.plan(args.suite), args.seed, args.jobs)
    for suite, configs in report["suites"].items():
        for conf, checks in configs.items():
            passed = sum(c["passed"] for c in checks.values())
            failed = sum(c["failed"] for c in checks.values())
            print(f"{suite:<22} {conf:<10} {passed:>7} passed {failed:>4} failed")
    print(f"total {report['passed']} passed, {report['failed']} failed in {time.perf_counter() - t0:.1f}s")
    return 0 if report["all_passed"] else 1


if __name__ == "__main__":
    raise SystemExit(main())
