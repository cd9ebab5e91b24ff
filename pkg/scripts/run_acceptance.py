"""Run the acceptance criteria and print one line per criterion with its runtime.

    python3 scripts/run_acceptance.py            # all criteria
    python3 scripts/run_acceptance.py 1 2 9      # a subset
"""
from __future__ import annotations

import argparse
import sys
import time

from complexbessel import acceptance


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    parser.add_argument("criteria", nargs="*", type=int, default=sorted(acceptance.CRITERIA))
    args = parser.parse_args()
    ok = True
    for n in args.criteria:
        start = time.perf_counter()
        res = acceptance.CRITERIA[n]()
        print(f"{res.line()} in {time.perf_counter() - start:.1f}s", flush=True)
        for f in res.failures:
            print(f"    {f}")
        ok &= res.passed
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
