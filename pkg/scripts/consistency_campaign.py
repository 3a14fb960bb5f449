"""Reconstruct many fully observed random systems and tally conjugacy recoveries.

    python scripts/consistency_campaign.py --n 1000 --max-states 12 --seed 0
"""

import argparse
import time
from collections import Counter

from dynrecon.recon import consistency_check
from dynrecon.samples import random_systems


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=1000)
    ap.add_argument("--max-states", type=int, default=12)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    start = time.perf_counter()
    by_size, failures = Counter(), []
    for i, sys_ in enumerate(random_systems(args.n, args.max_states, args.seed)):
        ok, report = consistency_check(sys_)
        by_size[len(sys_), ok] += 1
        if not ok:
            failures.append((i, report.describe()))
    elapsed = time.perf_counter() - start

    print(f"{'states':>6} {'pass':>6} {'fail':>6}")
    for k in range(1, args.max_states + 1):
        print(f"{k:>6} {by_size[k, True]:>6} {by_size[k, False]:>6}")
    for i, line in failures:
        print(f"instance {i}: {line}")
    print(f"{args.n - len(failures)}/{args.n} recovered in {elapsed:.2f}s")


if __name__ == "__main__":
    main()
