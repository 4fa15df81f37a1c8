"""Tabulate |pi_C(x) - (|C|/|G|) Li(x)| against the GRH bounds for small abelian fields.

    python scripts/chebotarev_empirics.py --xmax 1e7 --out empirics.csv
"""

from __future__ import annotations

import argparse
import csv
import sys

from chebotarev import arith

FAMILIES = [("q", [[1]]), ("quad:-1", [[1], [-1]]), ("quad:5", [[1], [-1]]),
            ("cyclo:5", [[1], [2], [4]]), ("cyclo:8", [[1], [3], [5], [7]])]


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--xmax", type=float, default=1e6)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--out", type=argparse.FileType("w"), default=sys.stdout)
    args = ap.parse_args(argv)
    xs = []
    x = 1000
    while x <= args.xmax:
        xs += [x, 3 * x] if 3 * x <= args.xmax else [x]
        x *= 10
    w = csv.writer(args.out, lineterminator="\n")
    w.writerow(["family", "class", "x", "pi_c", "deviation_hi", "grh", "grh_precise", "oesterle"])
    for fam, classes in FAMILIES:
        for cl in classes:
            s = arith.GaloisSetup.parse(fam, ",".join(map(str, cl)))
            for x in xs:
                counts = arith.count_up_to(x, s, threads=args.threads)
                row = [s.family_id, s.class_id, x, counts.pi_c]
                for i, mode in enumerate(("grh", "grh-precise", "oesterle")):
                    c = arith.compare_to_bound(x, s, mode, 64, counts=counts)
                    if i == 0:
                        row.append(f"{float(c.lhs.hi):.6g}")
                    row.append(f"{float(c.rhs.lo):.6g}")
                w.writerow(row)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
