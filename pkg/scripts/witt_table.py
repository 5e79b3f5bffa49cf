#!/usr/bin/env python3
"""Print the exact per-pair Reynolds checks on the positive Witt span.

Each row reports both sides of the Reynolds identity as coefficients of the
single surviving basis line, the induced deformed-bracket coefficient, and
whether everything matches the closed forms.
"""
import argparse

from twistrb.exactlin import scalar_str
from twistrb.operators import witt_report


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--nmax", type=int, default=10)
    args = parser.parse_args()
    rows = witt_report(args.nmax)
    width = max(len(scalar_str(r.induced)) for r in rows)
    print(f"{'m':>3} {'n':>3} {'lhs':>{width}} {'rhs':>{width}} {'induced':>{width}}  ok")
    for r in rows:
        print(
            f"{r.m:>3} {r.n:>3} {scalar_str(r.lhs):>{width}} "
            f"{scalar_str(r.rhs):>{width}} {scalar_str(r.induced):>{width}}  "
            f"{'yes' if r.ok else 'NO'}"
        )
    bad = [r for r in rows if not r.ok]
    print(f"{len(rows)} rows, {len(bad)} failures")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
