#!/usr/bin/env python3
"""Cross-check the admissibility criterion against exhaustive partner search.

For each stage (b, p, t) in the requested ranges, compares the divisibility
criterion p | b/gcd(b,t) with the existence of an exactly compatible partner
set in [0, b*p*t), and records the canonical partner when it exists.

Usage:
    python3 scripts/admissibility_sweep.py --out admissibility.csv
"""

import argparse
import csv

from moranspec.hadamard import canonical_dual_digits, is_admissible
from moranspec.oracle import search_compatible_partners


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--bmax", type=int, default=12)
    ap.add_argument("--pmax", type=int, default=6)
    ap.add_argument("--tmax", type=int, default=6)
    ap.add_argument("--limit", type=int, default=5000,
                    help="cap on enumerated partner sets per stage")
    ap.add_argument("--out", default="admissibility.csv")
    args = ap.parse_args()

    rows = 0
    with open(args.out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["b", "p", "t", "admissible", "partners_found",
                         "truncated", "canonical"])
        for b in range(2, args.bmax + 1):
            for p in range(2, args.pmax + 1):
                for t in range(1, args.tmax + 1):
                    found = search_compatible_partners(b, p, t, limit=args.limit)
                    adm = is_admissible(b, p, t)
                    if bool(found) != adm:
                        raise SystemExit(
                            f"disagreement at (b={b}, p={p}, t={t}): "
                            f"criterion says {adm}, search found {len(found)}")
                    canonical = canonical_dual_digits(b, p, t) if adm else ""
                    writer.writerow([b, p, t, adm, len(found),
                                     len(found) >= args.limit,
                                     " ".join(map(str, canonical))])
                    rows += 1
    print(f"wrote {rows} rows to {args.out}; criterion and search agree everywhere")


if __name__ == "__main__":
    main()
