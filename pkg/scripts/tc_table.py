"""Print TC values next to the rule counts our planners actually use.

    python scripts/tc_table.py --kmax 5
"""

import argparse

import numpy as np

from sphereworld_mp.sampling import random_world
from sphereworld_mp.tc import tc_row
from sphereworld_mp.transport import build_transported_planner


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--kmax", type=int, default=5)
    ap.add_argument("--dims", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--mmax", type=int, default=3)
    args = ap.parse_args(argv)

    rng = np.random.default_rng(0)
    header = f"{'n':>2} {'m':>2} {'k':>2} {'TC':>4} {'strict':>7} {'merged':>7} {'gap':>4}  formula"
    print(header)
    print("-" * len(header))
    for n in args.dims:
        for m in range(args.mmax + 1):
            world = random_world(rng, n, m)
            for k in range(2, args.kmax + 1):
                tc, row = tc_row(n, m, k)
                strict = build_transported_planner(world, k, "strict").rule_count
                merged = build_transported_planner(world, k, "merged").rule_count
                print(f"{n:>2} {m:>2} {k:>2} {tc:>4} {strict:>7} {merged:>7} {merged - tc:>4}  {row}")


if __name__ == "__main__":
    main()
