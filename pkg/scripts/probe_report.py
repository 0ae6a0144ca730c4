"""Continuity probes for strict, merged and punctured planners, as JSON.

    python scripts/probe_report.py --trials 200 --delta 1e-6 > probes.json
"""

import argparse
import json

import numpy as np

from sphereworld_mp.planner import punctured_planner, spread_planner
from sphereworld_mp.probe import probe_continuity
from sphereworld_mp.sampling import random_world
from sphereworld_mp.transport import build_transported_planner


def summarise(rep):
    rules = rep["rules"]
    out = {
        "mode": rep["mode"],
        "m": rep["m"],
        "experimental": rep["experimental"],
        "skipped": rep["skipped"],
        "rules_probed": len(rules),
        "max_lipschitz": max((e["max_lipschitz"] for e in rules.values()), default=None),
        "clean": rep["clean"],
    }
    if "tradeoff_pairs" in rep:
        out["tradeoff_max_lipschitz"] = max(t["lipschitz"] for t in rep["tradeoff_pairs"])
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--delta", type=float, default=1e-6)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    rng = np.random.default_rng(args.seed)

    report = {}
    for n, k in [(2, 2), (2, 3), (3, 3)]:
        for mode in ("strict", "merged"):
            rep = probe_continuity(spread_planner(n, k, mode), args.trials, args.delta, rng)
            report[f"spread n={n} k={k} {mode}"] = summarise(rep)
    q = [(0.0, 0.0), (3.0, 1.0)]
    rep = probe_continuity(punctured_planner(2, 2, q), args.trials, args.delta, rng)
    report["punctured n=2 m=2 k=2 strict"] = summarise(rep)
    world = random_world(rng, 2, 2)
    rep = probe_continuity(build_transported_planner(world, 2), args.trials, args.delta, rng)
    report["transported n=2 m=2 k=2 strict"] = summarise(rep)
    print(json.dumps(report, indent=2))


if __name__ == "__main__":
    main()
