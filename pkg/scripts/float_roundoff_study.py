"""Compare exact and double-precision GZ brackets at the same seeded points.

For each point prints the largest |bracket| in float, the largest |bracket|
over Fraction (always 0 when the family commutes), and the magnitudes that set
the roundoff scale: max |z| over the differentials and max |y^-1|.
"""

from __future__ import annotations

import argparse
import itertools
import random

from steinberg_gz import poisson
from steinberg_gz.poisson import _inverse, differential, k_component, pair_with


def abs_max(m):
    return max(abs(float(v)) for r in m.rows for v in r)


def point_report(pt, fns):
    inv = (_inverse(pt.x), _inverse(pt.y))
    zs = [differential(f, pt) for f in fns]
    ws = [k_component(z, pt, inv) for z in zs]
    worst = max(abs(pair_with(ws[i], zs[j], pt, inv)) for i, j in itertools.combinations(range(len(fns)), 2))
    return worst, max(abs_max(z) for z in zs), abs_max(inv[1])


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--n", type=int, default=4)
    ap.add_argument("--points", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    fns = poisson.gz_family(args.n).functions
    rng = random.Random(args.seed)
    print("point  float_max      exact_max  max|z|      max|y^-1|")
    for k in range(args.points):
        exact = poisson.random_h_point(args.n, rng)
        fl, zmax, yinv = point_report(poisson.to_float(exact), fns)
        ex, _, _ = point_report(exact, fns)
        print(f"{k:>5}  {float(fl):<13.3e}  {str(ex):<9}  {zmax:<10.3e}  {yinv:.3e}")


if __name__ == "__main__":
    main()
