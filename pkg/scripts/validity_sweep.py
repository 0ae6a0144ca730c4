"""Plan random (start, goal) pairs in random sphere worlds and validate every path.

    python scripts/validity_sweep.py --pairs 1000 --out sweep.csv
"""

import argparse
import csv
import sys
import time

import numpy as np

from sphereworld_mp.sampling import random_configuration, random_world
from sphereworld_mp.transport import build_transported_planner, transported_plan
from sphereworld_mp.validation import validate_path

CASES = [(2, m, k) for m in (0, 1, 2) for k in (1, 2, 3, 4)] + [(3, m, k) for m in (0, 2) for k in (1, 2, 3, 4)]


def sweep(n, m, k, pairs, worlds, mode, seed):
    rng = np.random.default_rng(seed)
    invalid, detoured, min_sep = 0, 0, np.inf
    per_world = max(1, pairs // worlds)
    for _ in range(worlds):
        world = random_world(rng, n, m)
        tp = build_transported_planner(world, k, mode)
        for _ in range(per_world):
            A = random_configuration(rng, world, k)
            B = random_configuration(rng, world, k)
            rep = validate_path(transported_plan(tp, A, B), A, B, world=world)
            invalid += not rep.valid
            detoured += any("detour=" in r and "1" in r.split("detour=")[1] for r in rep.rule_ids)
            if rep.min_separation is not None:
                min_sep = min(min_sep, rep.min_separation)
    return {
        "n": n,
        "m": m,
        "k": k,
        "pairs": per_world * worlds,
        "invalid": invalid,
        "detoured": detoured,
        "min_separation": "" if not np.isfinite(min_sep) else f"{min_sep:.4g}",
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--pairs", type=int, default=1000, help="pairs per (n, m, k)")
    ap.add_argument("--worlds", type=int, default=10, help="random worlds per (n, m, k)")
    ap.add_argument("--mode", choices=("strict", "merged"), default="strict")
    ap.add_argument("--out", help="CSV file (stdout if omitted)")
    args = ap.parse_args(argv)

    rows = []
    for n, m, k in CASES:
        t = time.perf_counter()
        row = sweep(n, m, k, args.pairs, args.worlds, args.mode, seed=1000 * n + 100 * m + k)
        row["seconds"] = f"{time.perf_counter() - t:.2f}"
        rows.append(row)
        print(f"n={n} m={m} k={k}: {row['invalid']} invalid of {row['pairs']}", file=sys.stderr)

    fh = open(args.out, "w", newline="") if args.out else sys.stdout
    writer = csv.DictWriter(fh, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    if args.out:
        fh.close()
    return 0 if all(r["invalid"] == 0 for r in rows) else 1


if __name__ == "__main__":
    sys.exit(main())
