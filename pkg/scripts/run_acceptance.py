"""Run every verification suite at acceptance size and print one line each.

    python scripts/run_acceptance.py [--seed N] [--suite NAME ...]
"""

import argparse
import sys
import time

from seqcode import verify


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--suite", action="append", choices=list(verify.SUITES))
    args = ap.parse_args()
    cfg = verify.SuiteConfig(seed=args.seed)
    ok = True
    for name in args.suite or list(verify.SUITES):
        t0 = time.perf_counter()
        result = verify.SUITES[name](cfg)
        print(f"{result.line()}  ({time.perf_counter() - t0:.1f}s)", flush=True)
        ok &= result.ok
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
