#!/usr/bin/env python3
"""Sweep the section-count oracle against the closed forms and print a table.

Useful for exploring sharper weight ranges than the default verification grid.

Usage:
    python scripts/oracle_sweep.py "(3.2)" --umax 6 --wmax 3 --samples 3
"""

import argparse
import time

from spancert.descriptors import ChainDescriptor
from spancert.surfaces import (
    DivisorClass,
    UnsupportedChainError,
    chi,
    h0_closed,
    h0_oracle_grid,
)


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("chain", help='descriptor, e.g. "(3.2)"')
    ap.add_argument("--umax", type=int, default=6)
    ap.add_argument("--wmax", type=int, default=3)
    ap.add_argument("--samples", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--show-all", action="store_true", help="print every instance")
    args = ap.parse_args()

    desc = ChainDescriptor.parse(args.chain)
    t0 = time.time()
    total = mismatches = saturated = 0
    for u in range(args.umax + 1):
        grid = h0_oracle_grid(desc, u, args.wmax, args.samples, args.seed)
        for w, got in sorted(grid.items()):
            total += 1
            try:
                closed = h0_closed(desc, DivisorClass(u, w))
                tag = f"{closed.kind}:{closed.value}"
                bad = (
                    (closed.kind == "exact" and got != closed.value)
                    or (closed.kind == "zero" and got != 0)
                    or (closed.kind == "upper_bound" and got > closed.value)
                )
                if closed.kind == "upper_bound" and got == closed.value:
                    saturated += 1
            except UnsupportedChainError:
                tag, bad = "oracle-only", False
            if bad:
                mismatches += 1
            if args.show_all or bad:
                mark = " <-- MISMATCH" if bad else ""
                print(f"u={u} w={w}: oracle={got} chi={chi(DivisorClass(u, w))} {tag}{mark}")
    dt = time.time() - t0
    print(f"{desc}: {total} instances, {mismatches} mismatches, "
          f"{saturated} saturated bounds, {dt:.1f}s")
    return 0 if mismatches == 0 else 1


if __name__ == "__main__":
    raise SystemExit(main())
