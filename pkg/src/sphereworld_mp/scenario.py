"""Scenario files and the plan-and-validate runner behind the CLI."""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .collar import CollarError
from .configuration import is_distinct
from .paths import DEFAULT_SAMPLES, PiecewisePath
from .planner import Planner, PlannerError, PlannerInputError, plan, punctured_planner
from .transport import TransportedPlanner, build_transported_planner, transported_plan
from .validation import ValidationReport, validate_path
from .world import SphereWorld, contains_many, validate_world

SEED_ENV = "SPHEREWORLD_MP_SEED"

EXIT_OK = 0
EXIT_BAD_WORLD = 1
EXIT_BAD_CONFIG = 2
EXIT_PLANNER = 3
EXIT_INVALID_PATH = 4


class ScenarioError(ValueError):
    def __init__(self, message: str, exit_code: int):
        super().__init__(message)
        self.exit_code = exit_code


@dataclass(frozen=True)
class Scenario:
    n: int
    k: int
    start: np.ndarray
    goal: np.ndarray
    world: SphereWorld | None = None
    punctures: np.ndarray | None = None  # set for "euclidean" scenarios
    mode: str = "strict"
    collar_width_fraction: float = 0.2
    samples_per_segment: int = DEFAULT_SAMPLES
    seed: int = 0
    name: str = "scenario"

    @property
    def m(self) -> int:
        if self.world is not None:
            return self.world.m
        return 0 if self.punctures is None else len(self.punctures)

    def build_planner(self) -> TransportedPlanner | Planner:
        if self.world is not None:
            try:
                return build_transported_planner(self.world, self.k, self.mode, self.collar_width_fraction)
            except (CollarError, ValueError) as exc:
                raise ScenarioError(f"cannot build collars: {exc}", EXIT_BAD_WORLD) from exc
        return punctured_planner(self.n, self.k, self.punctures, self.mode)

    def to_dict(self) -> dict:
        d: dict = {}
        if self.world is not None:
            d["world"] = self.world.to_dict()
        else:
            d["euclidean"] = {"n": self.n, "punctures": np.asarray(self.punctures).tolist()}
        d.update(
            k=self.k,
            start=self.start.tolist(),
            goal=self.goal.tolist(),
            mode=self.mode,
            collar_width_fraction=self.collar_width_fraction,
            samples_per_segment=self.samples_per_segment,
            seed=self.seed,
        )
        return d


def parse_scenario(d: dict, name: str = "scenario") -> Scenario:
    try:
        if "world" in d:
            world = SphereWorld.from_dict(d["world"])
            n, punctures = world.dim, None
        elif "euclidean" in d:
            world = None
            n = int(d["euclidean"]["n"])
            punctures = np.asarray(d["euclidean"].get("punctures", []), dtype=float).reshape(-1, n)
        else:
            raise ScenarioError("scenario needs a 'world' or a 'euclidean' section", EXIT_BAD_WORLD)
    except ScenarioError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ScenarioError(f"malformed world: {exc}", EXIT_BAD_WORLD) from exc

    if world is not None:
        bad = validate_world(world)
        if bad:
            raise ScenarioError("; ".join(v.detail for v in bad), EXIT_BAD_WORLD)
    elif len(punctures) and not is_distinct(punctures):
        raise ScenarioError("punctures must be pairwise distinct", EXIT_BAD_WORLD)

    seed = int(os.environ.get(SEED_ENV, d.get("seed", 0)))
    mode = d.get("mode", "strict")
    if mode not in ("strict", "merged"):
        raise ScenarioError(f"unknown planner mode {mode!r}", EXIT_BAD_WORLD)
    try:
        start = np.asarray(d["start"], dtype=float)
        goal = np.asarray(d["goal"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise ScenarioError(f"malformed start/goal: {exc}", EXIT_BAD_CONFIG) from exc
    k = int(d.get("k", len(start)))
    for label, c in (("start", start), ("goal", goal)):
        check_configuration(label, c, n, k, world, punctures)
    return Scenario(
        n=n,
        k=k,
        start=start,
        goal=goal,
        world=world,
        punctures=punctures,
        mode=mode,
        collar_width_fraction=float(d.get("collar_width_fraction", 0.2)),
        samples_per_segment=int(d.get("samples_per_segment", DEFAULT_SAMPLES)),
        seed=seed,
        name=name,
    )


def check_configuration(label, c, n, k, world, punctures) -> None:
    if c.ndim != 2 or c.shape != (k, n):
        raise ScenarioError(f"{label} must be {k} points of dimension {n}", EXIT_BAD_CONFIG)
    if not np.all(np.isfinite(c)):
        raise ScenarioError(f"{label} has non-finite coordinates", EXIT_BAD_CONFIG)
    if not is_distinct(c):
        raise ScenarioError(f"{label} has colliding robots", EXIT_BAD_CONFIG)
    if world is not None and not np.all(contains_many(world, c)):
        raise ScenarioError(f"{label} has robots outside the free space", EXIT_BAD_CONFIG)
    if punctures is not None:
        for q in punctures:
            if np.any(np.all(c == q, axis=1)):
                raise ScenarioError(f"{label} has a robot on a puncture", EXIT_BAD_CONFIG)


def load_scenario(path) -> Scenario:
    path = Path(path)
    try:
        d = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ScenarioError(f"cannot read scenario {path}: {exc}", EXIT_BAD_WORLD) from exc
    return parse_scenario(d, name=path.stem)


def plan_scenario(sc: Scenario, planner=None) -> PiecewisePath:
    planner = sc.build_planner() if planner is None else planner
    try:
        if isinstance(planner, TransportedPlanner):
            return transported_plan(planner, sc.start, sc.goal, sc.samples_per_segment)
        return plan(planner, sc.start, sc.goal, sc.samples_per_segment)
    except (PlannerError, PlannerInputError) as exc:
        raise ScenarioError(f"planner failed: {exc}", EXIT_PLANNER) from exc


def validate_scenario_path(sc: Scenario, path: PiecewisePath) -> ValidationReport:
    return validate_path(path, sc.start, sc.goal, world=sc.world, punctures=sc.punctures)


def dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), sort_keys=True, allow_nan=False)


@dataclass
class RunResult:
    exit_code: int
    path: PiecewisePath | None
    report: ValidationReport | None
    message: str = ""
    rule_count: int | None = None


def run_scenario(sc: Scenario, out_dir=None, timings: bool = False) -> RunResult:
    """Plan, validate and (optionally) write path.json and report.json."""
    t0 = time.perf_counter()
    try:
        planner = sc.build_planner()
        t1 = time.perf_counter()
        path = plan_scenario(sc, planner)
    except ScenarioError as exc:
        return RunResult(exc.exit_code, None, None, str(exc))
    t2 = time.perf_counter()
    report = validate_scenario_path(sc, path)
    t3 = time.perf_counter()
    if timings:
        report.timings = {"build": t1 - t0, "plan": t2 - t1, "validate": t3 - t2}
    if out_dir is not None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        body = path.to_json()
        rep = report.to_json()
        rep.pop("timings", None)  # keep path.json byte-stable
        body["report"] = rep
        (out / "path.json").write_text(dumps(body))
        (out / "report.json").write_text(dumps(report.to_json()))
    code = EXIT_OK if report.valid else EXIT_INVALID_PATH
    return RunResult(code, path, report, "; ".join(report.problems), planner.rule_count)
