#!/usr/bin/env python3
"""Sweep the two-stage equivalence (stride divisibility = spectrality = tiling).

Writes one CSV row per parameter tuple with the three flags, the tiling
period and the residue certificate for the failing cases.

Usage:
    python3 scripts/two_stage_sweep.py --out two_stage_sweep.csv
    python3 scripts/two_stage_sweep.py --pmax 4 --bmax 6 --tmax 4
"""

import argparse
import csv

from moranspec.classifier import two_stage_decide


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--pmax", type=int, default=5, help="largest digit count")
    ap.add_argument("--bmax", type=int, default=8, help="largest first base")
    ap.add_argument("--tmax", type=int, default=6, help="largest stride")
    ap.add_argument("--out", default="two_stage_sweep.csv")
    args = ap.parse_args()

    rows = 0
    disagreements = 0
    with open(args.out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["p1", "p2", "b1", "t1", "t2",
                         "divides", "spectral", "tiles", "period", "residue"])
        for p1 in range(2, args.pmax + 1):
            for p2 in range(2, args.pmax + 1):
                for b1 in range(2, args.bmax + 1):
                    for t1 in range(1, args.tmax + 1):
                        for t2 in range(1, args.tmax + 1):
                            dec = two_stage_decide(p1, p2, b1, t1, t2)
                            period = dec.tiling.period if dec.tiles else ""
                            writer.writerow([p1, p2, b1, t1, t2,
                                             dec.divides, dec.spectral, dec.tiles,
                                             period, dec.residue if dec.residue else ""])
                            rows += 1
                            if not (dec.divides == dec.spectral == dec.tiles):
                                disagreements += 1
    print(f"wrote {rows} rows to {args.out}; flag disagreements: {disagreements}")


if __name__ == "__main__":
    main()
