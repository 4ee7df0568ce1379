"""Integrate a Hamiltonian flow on the dual group and report drift of the GZ family.

Example:
    python3 scripts/flow_demo.py --n 3 --hamiltonian f2,1 --dt 1e-3 --steps 500
"""

from __future__ import annotations

import argparse
import random

from steinberg_gz import poisson
from steinberg_gz.cli import parse_hamiltonian


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--hamiltonian", default="d1")
    ap.add_argument("--dt", type=float, default=1e-3)
    ap.add_argument("--steps", type=int, default=1000)
    args = ap.parse_args()

    p0 = poisson.random_h_point(args.n, random.Random(args.seed), float_mode=True)
    f = parse_hamiltonian(args.hamiltonian, args.n)
    res = poisson.hamiltonian_flow(f, p0, args.dt, args.steps)
    labels = ["".join(map(str, lab)) for lab in poisson.chart_labels(args.n)]
    print("chart   start            end")
    for lab, a, b in zip(labels, res.trajectory[0], res.trajectory[-1]):
        print(f"{lab:<7} {a:<16.10g} {b:.10g}")
    print("\nrelative drift of each GZ function:")
    for name, d in sorted(res.drift.items()):
        print(f"  {name:<6} {d:.3e}")
    print(f"max drift {res.max_drift:.3e}")


if __name__ == "__main__":
    main()
