"""Orthogonal combinations of three permutation matrices: one row per conjugacy orbit.

    python3 scripts/three_perm_scan.py [--no-samples] [--json out.json]
"""

import argparse
import json

from opm4.classify import three_perm_scan


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--no-samples", action="store_true", help="one point per solution branch")
    p.add_argument("--json", help="write the full table here")
    args = p.parse_args(argv)
    rows = three_perm_scan(samples=not args.no_samples)
    totals: dict[str, int] = {}
    for row in rows:
        print(f"{' '.join(row['triple']):24s} branches {row['solution_branches']:2d}  tags {row['tags']}")
        for tag, k in row["tags"].items():
            totals[tag] = totals.get(tag, 0) + k
    print("total", dict(sorted(totals.items())))
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(rows, fh, indent=2)


if __name__ == "__main__":
    main()
