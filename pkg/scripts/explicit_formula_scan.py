"""Scan |psi(x) - x + S(x,T)| against the explicit-formula error over a grid of x and T.

    python scripts/explicit_formula_scan.py --out scan.csv
"""

from __future__ import annotations

import argparse
import csv
import sys

from chebotarev import arith, zeros


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--zeros", help="zeros file (bundled zeta table)")
    ap.add_argument("--x", default="100,1000,10000,100000,1000000")
    ap.add_argument("--T", default="20,50,100,200,500,1000")
    ap.add_argument("--out", type=argparse.FileType("w"), default=sys.stdout)
    args = ap.parse_args(argv)
    table = zeros.load_zeros(args.zeros)
    w = csv.writer(args.out, lineterminator="\n")
    w.writerow(["x", "T", "psi", "s_sum", "residual", "bound_lo", "ratio"])
    for x in (int(float(v)) for v in args.x.split(",")):
        psi = arith.chebyshev_psi(x)
        for T in (float(v) for v in args.T.split(",")):
            if T > table.coverage:
                continue
            r = zeros.check_explicit_formula(x, T, table, psi=psi, prec=64)
            w.writerow([x, T, repr(psi), repr(r.s_sum), f"{r.residual:.6g}",
                        f"{float(r.bound.lo):.6g}", f"{r.ratio:.3g}"])
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
