#!/usr/bin/env python3
"""Run the curated example battery and print a one-line summary per item.

Equivalent to `posmon paper-examples` with a human-oriented table; exits 2
if any certificate fails to re-verify.
"""

import sys
import time

from posmon.battery import run_battery


def main() -> int:
    t0 = time.time()
    items = run_battery()
    width = max(len(item.name) for item in items)
    for item in items:
        status = "PASS" if item.verified else "FAIL"
        print(f"{status}  {item.name:<{width}}  claim={item.certificate.claim}")
    elapsed = time.time() - t0
    failures = [item for item in items if not item.verified]
    print(f"\n{len(items) - len(failures)}/{len(items)} verified in {elapsed:.2f}s")
    return 2 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
