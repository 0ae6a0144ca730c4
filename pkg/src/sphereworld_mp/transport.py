"""Planning in a sphere world by transporting a punctured-space planner.

A path from A to B is built in three stages:

* [0, 1/4]   push A off the boundary along the collar isotopy, A -> p(A);
* [1/4, 3/4] plan from phi(p(A)) to phi(p(B)) in R^n - Q and map back by phi^-1;
* [3/4, 1]   release along the isotopy, p(B) -> B.

Transport adds no rules: the rule of a pair is the inner rule of its image.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .collar import CollarAtlas, build_atlas, config_retract, isotopy_sweep
from .configuration import CollisionError, as_config, is_distinct
from .homeo import PunctureMap, build_puncture_map, forward, inverse
from .paths import DEFAULT_SAMPLES, PiecewisePath, SegmentSpec, sample_path
from .planner import Planner, PlannerError, PlannerInputError, punctured_planner
from .tc import tc_row
from .world import SphereWorld, contains_many

# stage joins must agree within this fraction of r0 before they are snapped
JOIN_TOL = 1e-8


@dataclass(frozen=True)
class TransportedPlanner:
    world: SphereWorld
    atlas: CollarAtlas
    pmap: PunctureMap
    inner: Planner

    @property
    def k(self) -> int:
        return self.inner.k

    @property
    def rules(self):
        return self.inner.rules

    @property
    def rule_count(self) -> int:
        return self.inner.rule_count

    @property
    def experimental(self) -> bool:
        return self.inner.experimental

    def check_input(self, c) -> np.ndarray:
        c = as_config(c, self.world.dim)
        if c.shape[0] != self.k:
            raise PlannerInputError(f"configuration has {c.shape[0]} robots, planner expects {self.k}")
        if not np.all(contains_many(self.world, c)):
            raise PlannerInputError("configuration leaves the free space")
        if not is_distinct(c):
            raise CollisionError("configuration has coinciding points")
        return c

    def to_inner(self, c: np.ndarray) -> np.ndarray:
        return forward(self.pmap, config_retract(self.atlas, c))

    def select(self, A, B):
        A, B = self.check_input(A), self.check_input(B)
        return self.inner.select(self.to_inner(A), self.to_inner(B))


def build_transported_planner(
    world: SphereWorld, k: int, mode: str = "strict", fraction: float = 0.2
) -> TransportedPlanner:
    atlas = build_atlas(world, fraction=fraction)
    pmap = build_puncture_map(atlas)
    inner = punctured_planner(world.dim, k, pmap.punctures, mode)
    return TransportedPlanner(world, atlas, pmap, inner)


def transported_section(tp: TransportedPlanner, A, B) -> list[SegmentSpec]:
    A, B = tp.check_input(A), tp.check_input(B)
    atlas, pm = tp.atlas, tp.pmap
    pA, pB = config_retract(atlas, A), config_retract(atlas, B)
    fA, fB = forward(pm, pA), forward(pm, pB)

    tol = JOIN_TOL * tp.world.work_radius
    for exact, image in ((pA, fA), (pB, fB)):
        drift = float(np.abs(inverse(pm, image) - exact).max())
        if drift > tol:
            raise PlannerError(f"round-trip drift {drift:g} exceeds join tolerance {tol:g}")

    inner = tp.inner.section(fA, fB, t0=0.25, t1=0.75)
    rid = inner[0].rule_id

    def pull_back(fn, snap_start, snap_end):
        def g(tau):
            out = inverse(pm, fn(tau))
            if snap_start is not None:
                out[tau == 0.0] = snap_start
            if snap_end is not None:
                out[tau == 1.0] = snap_end
            return out

        return g

    specs = [SegmentSpec(rid, "collar-in", 0.0, 0.25, lambda tau: isotopy_sweep(atlas, A, 1.0 - tau))]
    last = len(inner) - 1
    for j, s in enumerate(inner):
        fn = pull_back(s.fn, pA if j == 0 else None, pB if j == last else None)
        specs.append(SegmentSpec(rid, s.phase, s.t0, s.t1, fn))
    specs.append(SegmentSpec(rid, "collar-out", 0.75, 1.0, lambda tau: isotopy_sweep(atlas, B, tau)))
    return specs


def transported_plan(tp: TransportedPlanner, A, B, samples_per_segment: int = DEFAULT_SAMPLES) -> PiecewisePath:
    return sample_path(transported_section(tp, A, B), samples_per_segment)


def tc_report(world: SphereWorld, k: int, mode: str = "merged", fraction: float = 0.2) -> dict:
    tp = build_transported_planner(world, k, mode, fraction)
    tc, row = tc_row(world.dim, world.m, k)
    rules = tp.rule_count
    return {
        "n": world.dim,
        "m": world.m,
        "k": k,
        "mode": mode,
        "tc": tc,
        "formula": row,
        "rules": rules,
        "gap": rules - tc,
        "equality": rules == tc,
        "experimental": tp.experimental,
    }
