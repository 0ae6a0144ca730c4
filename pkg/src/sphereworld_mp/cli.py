"""Command line interface: ``sphereworld-mp <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import batch as batch_mod
from .collar import build_atlas, config_retract
from .homeo import DomainError, build_puncture_map, forward, inverse
from .paths import PiecewisePath
from .probe import probe_continuity
from .render import render_svg
from .scenario import (
    EXIT_BAD_CONFIG,
    EXIT_BAD_WORLD,
    EXIT_OK,
    ScenarioError,
    load_scenario,
    plan_scenario,
    run_scenario,
)
from .tc import tc_row
from .world import SphereWorld, validate_world


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def _load(args, override_mode: bool = True):
    sc = load_scenario(args.scenario)
    if override_mode and getattr(args, "mode", None):
        sc = replace(sc, mode=args.mode)
    return sc


def _need_world(sc) -> SphereWorld:
    if sc.world is None:
        raise ScenarioError("this subcommand needs a sphere-world scenario", EXIT_BAD_WORLD)
    return sc.world


def cmd_validate(args) -> int:
    try:
        raw = json.loads(Path(args.scenario).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        _emit({"ok": False, "error": str(exc)})
        return EXIT_BAD_WORLD
    out: dict = {"violations": []}
    if "world" in raw:
        try:
            world = SphereWorld.from_dict(raw["world"])
            out["violations"] = [
                {"kind": v.kind, "indices": list(v.indices), "detail": v.detail} for v in validate_world(world)
            ]
        except (KeyError, TypeError, ValueError) as exc:
            out["violations"] = [{"kind": "malformed", "indices": [], "detail": str(exc)}]
    try:
        load_scenario(args.scenario)
        code = EXIT_OK
    except ScenarioError as exc:
        out["error"] = str(exc)
        code = exc.exit_code
    out["ok"] = code == EXIT_OK
    _emit(out)
    return code


def cmd_plan(args) -> int:
    sc = _load(args)
    res = run_scenario(sc, args.out, timings=args.timings)
    summary = {"exit_code": res.exit_code, "message": res.message}
    if res.report is not None:
        summary["valid"] = res.report.valid
        summary["rule_ids"] = res.report.rule_ids
        summary["rules"] = res.rule_count
    _emit(summary)
    return res.exit_code


def cmd_tc(args) -> int:
    value, row = tc_row(args.n, args.m, args.k)
    print(f"TC(F(X_{{{args.n},{args.m}}}, {args.k})) = {value}")
    print(f"formula row: {row}")
    print("same value for F(R^n - Q_m, k) and, when m = 0, for F(D^n, k)")
    return EXIT_OK


def cmd_retract(args) -> int:
    sc = _load(args)
    atlas = build_atlas(_need_world(sc), fraction=sc.collar_width_fraction)
    _emit(
        {
            "outer_width": atlas.outer_width,
            "obstacle_widths": list(atlas.obstacle_widths),
            "start": config_retract(atlas, sc.start).tolist(),
            "goal": config_retract(atlas, sc.goal).tolist(),
        }
    )
    return EXIT_OK


def _puncture_map(sc):
    atlas = build_atlas(_need_world(sc), fraction=sc.collar_width_fraction)
    return build_puncture_map(atlas)


def cmd_punctures(args) -> int:
    sc = _load(args)
    if sc.world is None:
        _emit({"punctures": np.asarray(sc.punctures).tolist()})
    else:
        pm = _puncture_map(sc)
        _emit({"punctures": pm.punctures.tolist(), "influence_radii": list(pm.influence_radii)})
    return EXIT_OK


def _map_stdin(args, fn) -> int:
    sc = _load(args)
    pm = _puncture_map(sc)
    pts = np.asarray(json.load(sys.stdin), dtype=float)
    try:
        _emit(fn(pm, pts).tolist())
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_CONFIG
    return EXIT_OK


def cmd_phi(args) -> int:
    return _map_stdin(args, forward)


def cmd_phi_inv(args) -> int:
    return _map_stdin(args, inverse)


def cmd_probe(args) -> int:
    sc = _load(args)
    planner = sc.build_planner()
    rep = probe_continuity(planner, args.trials, args.delta, np.random.default_rng(sc.seed))
    _emit(rep)
    return EXIT_OK


def cmd_render(args) -> int:
    sc = _load(args)
    if args.path:
        path = PiecewisePath.from_json(json.loads(Path(args.path).read_text()))
    else:
        path = plan_scenario(sc)
    svg = render_svg(sc, path)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / f"{sc.name}.svg").write_text(svg)
    print(out / f"{sc.name}.svg")
    return EXIT_OK


def cmd_batch(args) -> int:
    text, ok = batch_mod.run_batch(args.directory, args.out, args.parallelism)
    if args.out:
        Path(args.out).mkdir(parents=True, exist_ok=True)
        (Path(args.out) / "summary.csv").write_text(text)
    sys.stdout.write(text)
    return EXIT_OK if ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sphereworld-mp", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def scen(sp, mode=False):
        sp.add_argument("--scenario", required=True, help="scenario JSON file")
        if mode:
            sp.add_argument("--mode", choices=("strict", "merged"), help="override the scenario's planner mode")
        return sp

    scen(sub.add_parser("validate", help="check a scenario's world and configurations")).set_defaults(
        func=cmd_validate
    )
    sp = scen(sub.add_parser("plan", help="plan, validate and write path.json/report.json"), mode=True)
    sp.add_argument("--out", default="out", help="output directory")
    sp.add_argument("--timings", action="store_true", help="add wall-clock timings to report.json")
    sp.set_defaults(func=cmd_plan)

    sp = sub.add_parser("tc", help="topological complexity of F(X_{n,m}, k)")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.set_defaults(func=cmd_tc)

    scen(sub.add_parser("retract", help="print retracted start/goal")).set_defaults(func=cmd_retract)
    scen(sub.add_parser("punctures", help="print the puncture set")).set_defaults(func=cmd_punctures)
    scen(sub.add_parser("phi", help="map points (JSON on stdin) into R^n - Q")).set_defaults(func=cmd_phi)
    scen(sub.add_parser("phi-inv", help="map points (JSON on stdin) back into the world")).set_defaults(
        func=cmd_phi_inv
    )

    sp = scen(sub.add_parser("probe-continuity", help="estimate per-rule Lipschitz constants"), mode=True)
    sp.add_argument("--trials", type=int, default=200)
    sp.add_argument("--delta", type=float, default=1e-6)
    sp.set_defaults(func=cmd_probe)

    sp = scen(sub.add_parser("render", help="write an SVG of a planar scenario"), mode=True)
    sp.add_argument("--path", help="path.json from a previous plan (planned afresh if omitted)")
    sp.add_argument("--out", default="out")
    sp.set_defaults(func=cmd_render)

    sp = sub.add_parser("batch", help="run every *.json scenario in a directory")
    sp.add_argument("directory")
    sp.add_argument("--out", help="directory for per-scenario outputs and summary.csv")
    sp.add_argument("--parallelism", type=int, default=1)
    sp.set_defaults(func=cmd_batch)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_CONFIG


if __name__ == "__main__":
    sys.exit(main())
