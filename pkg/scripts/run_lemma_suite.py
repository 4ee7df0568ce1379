"""Run the aggregated lemma suite for n = 1..N and print one line per section."""

from __future__ import annotations

import argparse
import time

from steinberg_gz.suite import SuiteConfig, lemma_suite


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=4)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--samples", type=int, default=5)
    ap.add_argument("--mutate", action="store_true")
    args = ap.parse_args()

    for n in range(1, args.max_n + 1):
        t0 = time.perf_counter()
        rep = lemma_suite(SuiteConfig(n=n, seed=args.seed, samples=args.samples, mutate=args.mutate))
        dt = time.perf_counter() - t0
        print(f"n={n}  passed={rep['passed']}  failed={rep['failed']}  ({dt:.2f}s)")
        for s in rep["sections"]:
            mark = "ok  " if s["passed"] else "FAIL"
            print(f"    {mark} {s['tag']:<30} checked={s['checked']}")


if __name__ == "__main__":
    main()
