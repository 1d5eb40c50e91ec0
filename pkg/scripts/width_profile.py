#!/usr/bin/env python3
"""Per-family interval widths across (0,1), plus the combined envelope width.

Shows where each inequality family is the tight one; feed the CSV to any
plotter.

Usage:
    python scripts/width_profile.py --points 400 --out widths.csv
"""

import argparse
import csv
import sys

from carlson_bounds.bounds import DEFAULT_FAMILIES, best_envelope, family_bounds


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--points", type=int, default=400)
    ap.add_argument("--out", type=str, default="-")
    args = ap.parse_args()

    out = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    writer = csv.writer(out, lineterminator="\n")
    header = ["x"] + [f"width[{fam.id}]" for fam in DEFAULT_FAMILIES]
    header += ["width[envelope]", "lower_family", "upper_family"]
    writer.writerow(header)
    n = args.points
    for i in range(1, n + 1):
        x = i / (n + 1)
        row = [repr(x)]
        for fam in DEFAULT_FAMILIES:
            row.append(repr(family_bounds(fam, x).width))
        env = best_envelope(x)
        row += [repr(env.width), env.lower_family, env.upper_family]
        writer.writerow(row)
    if out is not sys.stdout:
        out.close()
        print(f"wrote {n} rows to {args.out}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
