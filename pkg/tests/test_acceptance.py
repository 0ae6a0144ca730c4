"""Acceptance gate: one test per criterion, each recorded as a PASS/FAIL line."""

import time
from pathlib import Path

import numpy as np

from sphereworld_mp.cli import main
from sphereworld_mp.collar import build_atlas, isotopy, retract
from sphereworld_mp.homeo import build_puncture_map, forward, inverse
from sphereworld_mp.planner import (
    lerp,
    plan,
    punctured_planner,
    rule_census,
    spread_planner,
    witness_pairs,
)
from sphereworld_mp.probe import probe_continuity
from sphereworld_mp.sampling import (
    random_boundary_points,
    random_collar_points,
    random_configuration,
    random_direction,
    random_free_points,
    random_world,
)
from sphereworld_mp.scenario import load_scenario
from sphereworld_mp.tc import tc_value
from sphereworld_mp.transport import build_transported_planner, transported_plan
from sphereworld_mp.validation import validate_path
from sphereworld_mp.world import clearance_many, make_world

SCENARIOS = Path(__file__).resolve().parents[1] / "scenarios"

# Published values, written out per table row rather than through tc_value's branching.
DISK_TC = {"odd": lambda k: 2 * k - 1, "even": lambda k: 2 * k - 2}
PLANE_TC = {0: lambda k: 2 * k - 2, 1: lambda k: 2 * k, "2+": lambda k: 2 * k + 1}
SPACE_TC = {0: lambda k: 2 * k - 1, "1+": lambda k: 2 * k + 1}


def _published(n: int, m: int, k: int) -> int:
    if n % 2 == 0:
        return PLANE_TC[m if m < 2 else "2+"](k)
    return SPACE_TC[0 if m == 0 else "1+"](k)


def test_c1_tc_formula_engine(criterion):
    t = time.perf_counter()
    mismatches = 0
    for n in range(2, 12):
        parity = "even" if n % 2 == 0 else "odd"
        for k in range(2, 51):
            mismatches += tc_value(n, 0, k) != DISK_TC[parity](k)
            for m in range(0, 11):
                v = tc_value(n, m, k)
                mismatches += v != _published(n, m, k)
                mismatches += v != tc_value(2 if n % 2 == 0 else 3, m, k)
                mismatches += v != tc_value(n + 2, m, k)
    elapsed = time.perf_counter() - t
    ok = criterion("C1 tc formulas", mismatches == 0 and elapsed < 1.0, f"mismatches={mismatches} time={elapsed:.3f}s")
    assert ok


def test_c2_retraction_identities(criterion):
    t = time.perf_counter()
    rng = np.random.default_rng(2002)
    combos = [(n, m) for n in (2, 3, 5) for m in (0, 1, 3)]
    worst_id, worst_ret, worst_clear, collisions = 0.0, 0.0, 0.0, 0
    pairs = 0
    for w in range(20):
        n, m = combos[w % len(combos)]
        world = random_world(rng, n, m)
        atlas = build_atlas(world)
        r0 = world.r0
        y = np.concatenate(
            [
                random_free_points(rng, world, 4000),
                random_collar_points(rng, atlas, 4000),
                random_boundary_points(rng, world, 2000),
            ]
        )
        y = y[clearance_many(world, y) >= 0]
        p = retract(atlas, y)
        worst_id = max(worst_id, float(np.abs(isotopy(atlas, y, 1.0) - y).max()))
        worst_ret = max(worst_ret, float(np.abs(isotopy(atlas, y, 0.0) - p).max()))
        bd = random_boundary_points(rng, world, 2000)
        clear = clearance_many(world, retract(atlas, bd))
        worst_clear = max(worst_clear, float(np.abs(clear - atlas.min_width / 2).max()) / r0)
        # injectivity: about 5000 pairs per world, half of them near neighbours
        i = rng.integers(0, len(y), 2600)
        j = rng.integers(0, len(y), 2600)
        near = y[:2600] + rng.normal(scale=1e-6 * r0, size=(2600, n))
        near_ok = clearance_many(world, near) >= 0
        a = np.concatenate([y[i], y[:2600][near_ok]])
        b = np.concatenate([y[j], near[near_ok]])
        differ = np.any(a != b, axis=1)
        a, b = a[differ], b[differ]
        pairs += len(a)
        for s in rng.uniform(0, 1, 4).tolist() + [0.0]:
            collisions += int(np.sum(np.all(isotopy(atlas, a, s) == isotopy(atlas, b, s), axis=1)))
    elapsed = time.perf_counter() - t
    ok = (
        worst_id == 0.0
        and worst_ret == 0.0
        and worst_clear <= 1e-12
        and collisions == 0
        and pairs >= 10**5
        and elapsed < 30
    )
    criterion(
        "C2 retraction identities",
        ok,
        f"|H1-id|={worst_id:.1e} |H0-p|={worst_ret:.1e} clear_err/r0={worst_clear:.1e} "
        f"pairs={pairs} collisions={collisions} time={elapsed:.1f}s",
    )
    assert ok


def _near_boundary_points(rng, world, size):
    """Points at clearance r0 * 10^-u from a random boundary sphere, u in [1, 6].

    The first tenth sit at exactly u = 6.
    """
    n = world.dim
    which = rng.integers(0, world.m + 1, size)
    u = random_direction(rng, n, size)
    expo = rng.uniform(1, 6, size)
    expo[: size // 10] = 6.0
    gap = world.r0 * 10.0**-expo
    pts = np.empty((size, n))
    outer = which == world.m
    pts[outer] = u[outer] * (world.r0 - gap[outer])[:, None]
    for i, (c, r) in enumerate(zip(world.centers, world.radii)):
        sel = which == i
        pts[sel] = c + u[sel] * (r + gap[sel])[:, None]
    return pts[clearance_many(world, pts) > 0]


def test_c3_homeomorphism_round_trip(criterion):
    rng = np.random.default_rng(3003)
    worst, worst_seam, min_clear = 0.0, 0.0, np.inf
    for w in range(12):
        n, m = [(2, 0), (2, 2), (3, 1), (3, 3), (5, 1), (5, 3)][w % 6]
        world = random_world(rng, n, m)
        pm = build_puncture_map(build_atlas(world))
        p = np.concatenate([random_free_points(rng, world, 7000), _near_boundary_points(rng, world, 3000)])
        p = p[clearance_many(world, p) > 0]
        min_clear = min(min_clear, float(clearance_many(world, p).min()) / world.r0)
        err = np.linalg.norm(inverse(pm, forward(pm, p)) - p, axis=1).max()
        worst = max(worst, float(err) / world.r0)
        for c, R in zip(world.centers, pm.influence_radii):
            u = random_direction(rng, n, 500)
            on = forward(pm, c + R * u)
            for side in (0.0, np.inf):
                off = forward(pm, c + np.nextafter(R, side) * u)
                worst_seam = max(worst_seam, float(np.abs(off - on).max()) / world.r0)
    ok = worst <= 1e-9 and worst_seam <= 1e-12 and min_clear <= 1.01e-6
    criterion(
        "C3 homeomorphism round trip",
        ok,
        f"max_err/r0={worst:.1e} seam/r0={worst_seam:.1e} min_clearance/r0={min_clear:.1e}",
    )
    assert ok


def test_c4_rule_counts(criterion):
    problems = []
    for k in (2, 3, 4, 5):
        for n in (2, 3):
            strict, merged = spread_planner(n, k, "strict"), spread_planner(n, k, "merged")
            if strict.rule_count != k * k or merged.rule_count != 2 * k - 1:
                problems.append(f"count n={n} k={k}")
            for p in (strict, merged):
                counts = rule_census(p, witness_pairs(p))["counts"]
                if min(counts.values()) < 1:
                    problems.append(f"unreached rule n={n} k={k} {p.mode}")
        if spread_planner(3, k, "merged").rule_count != tc_value(3, 0, k):
            problems.append(f"merged != tc k={k}")
    rng = np.random.default_rng(4004)
    for n in (2, 3, 4):
        for m in range(0, 4):
            world = random_world(rng, n, m)
            for k in (2, 3, 4):
                tc = tc_value(n, m, k)
                for mode in ("strict", "merged"):
                    tp = build_transported_planner(world, k, mode)
                    inner = punctured_planner(n, k, tp.pmap.punctures, mode)
                    if min(tp.rule_count, inner.rule_count) < tc:
                        problems.append(f"below tc n={n} m={m} k={k} {mode}")
    ok = criterion("C4 rule counts and witnesses", not problems, "; ".join(problems) or "all counts and witnesses ok")
    assert ok


def test_c5_path_validity(criterion):
    t = time.perf_counter()
    total, bad = 0, []
    cases = [(2, m, k) for m in (0, 1, 2) for k in (1, 2, 3, 4)] + [(3, m, k) for m in (0, 2) for k in (1, 2, 3, 4)]
    for n, m, k in cases:
        rng = np.random.default_rng(1000 * n + 100 * m + k)
        for w in range(10):
            world = random_world(rng, n, m)
            tp = build_transported_planner(world, k)
            for _ in range(100):
                A = random_configuration(rng, world, k)
                B = random_configuration(rng, world, k)
                rep = validate_path(transported_plan(tp, A, B), A, B, world=world)
                total += 1
                if not rep.valid:
                    bad.append((n, m, k, rep.problems[:2]))
    elapsed = time.perf_counter() - t
    ok = not bad and elapsed < 300
    criterion("C5 path validity", ok, f"pairs={total} invalid={len(bad)} time={elapsed:.1f}s")
    assert ok, bad[:5]


def test_c6_swap_oracle(criterion):
    A = np.array([(-3.0, 0.0), (3.0, 0.0)])
    B = A[::-1].copy()
    # brute force: straight-line interpolation on a fine grid, collision exactly at 1/2
    s = np.linspace(0.0, 1.0, 10_001)[:, None, None]
    line = lerp(A[None], B[None], s)
    gaps = np.linalg.norm(line[:, 0] - line[:, 1], axis=1)
    collides_at_half = gaps.min() == 0.0 and np.flatnonzero(gaps == 0.0).tolist() == [5000]

    planner = spread_planner(2, 2)
    path = plan(planner, A, B)
    inner_sep = validate_path(path, A, B).min_separation
    lane_spacing = 1.0

    tp = build_transported_planner(make_world(2, 10.0), 2)
    disk_rep = validate_path(transported_plan(tp, A, B), A, B, world=tp.world)
    merged = spread_planner(2, 2, "merged").rule_count

    ok = collides_at_half and inner_sep >= 0.4 * lane_spacing and disk_rep.valid and merged == 3
    criterion(
        "C6 swap oracle",
        ok,
        f"line collides at t=1/2: {collides_at_half}; planner separation={inner_sep:.3f} "
        f"(lane spacing 1); disk path valid={disk_rep.valid} sep={disk_rep.min_separation:.3f}; merged rules={merged}",
    )
    assert ok


def test_c7_continuity_probes(criterion, capsys):
    rng = np.random.default_rng(7007)
    worst, flagged = 0.0, []
    for n, k in [(2, 2), (2, 3), (3, 3)]:
        rep = probe_continuity(spread_planner(n, k, "strict"), 200, 1e-6, rng)
        for rid, entry in rep["rules"].items():
            worst = max(worst, entry["max_lipschitz"])
            if not entry["max_lipschitz"] < 1e6:
                flagged.append(f"({n},{k}) {rid}")
    # experimental modes: reported, not asserted
    merged = probe_continuity(spread_planner(2, 3, "merged"), 200, 1e-6, rng)
    punct = probe_continuity(punctured_planner(2, 2, [(0.0, 0.0), (3.0, 1.0)]), 200, 1e-6, rng)
    with capsys.disabled():
        mL = max((e["max_lipschitz"] for e in merged["rules"].values()), default=0.0)
        tL = max(t["lipschitz"] for t in merged["tradeoff_pairs"])
        pL = max((e["max_lipschitz"] for e in punct["rules"].values()), default=0.0)
        print(
            f"\n[probe] merged (experimental={merged['experimental']}): generic L<={mL:.3g}, "
            f"trade-off pairs L<={tL:.3g}; punctured (experimental={punct['experimental']}): L<={pL:.3g}"
        )
    ok = not flagged
    criterion("C7 strict continuity probes", ok, f"max L={worst:.3g} flagged={flagged or 'none'}")
    assert ok


def test_c8_determinism(criterion, tmp_path, capsys):
    differences = []
    for scen in sorted(SCENARIOS.glob("*.json")):
        runs = []
        for tag in ("a", "b"):
            out = tmp_path / scen.stem / tag
            assert main(["plan", "--scenario", str(scen), "--out", str(out)]) == 0
            files = [out / "path.json", out / "report.json"]
            if load_scenario(scen).n == 2:
                assert main(["render", "--scenario", str(scen), "--out", str(out)]) == 0
                files.append(out / f"{scen.stem}.svg")
            capsys.readouterr()
            assert main(["probe-continuity", "--scenario", str(scen), "--trials", "10"]) == 0
            runs.append([f.read_bytes() for f in files] + [capsys.readouterr().out.encode()])
        if runs[0] != runs[1]:
            differences.append(scen.name)
    ok = criterion("C8 determinism", not differences, f"scenarios={len(list(SCENARIOS.glob('*.json')))} differing={differences or 'none'}")
    assert ok
