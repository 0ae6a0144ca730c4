"""Dense-sample validation of planned paths."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from .configuration import separation_many
from .paths import PiecewisePath, max_step
from .world import SphereWorld, clearance_many


@dataclass
class ValidationReport:
    valid: bool
    min_separation: float | None  # None for a single robot
    min_boundary_clearance: float | None  # interior samples only; None without a world
    min_puncture_clearance: float | None  # None without punctures
    max_step: float
    guard_ok: bool
    endpoints_ok: bool
    joins_ok: bool
    contained: bool
    samples: int
    rule_ids: list[str]
    problems: list[str] = field(default_factory=list)
    timings: dict[str, float] | None = None

    def to_json(self) -> dict:
        d = asdict(self)
        if d["timings"] is None:
            del d["timings"]
        return d


def _finite_or_none(x: float) -> float | None:
    return None if not np.isfinite(x) else float(x)


def validate_path(
    path: PiecewisePath,
    start=None,
    goal=None,
    world: SphereWorld | None = None,
    punctures=None,
) -> ValidationReport:
    problems = []
    segs = path.segments
    if not segs:
        raise ValueError("path has no segments")

    endpoints_ok = True
    if start is not None and not np.array_equal(path.start, np.asarray(start, dtype=float)):
        endpoints_ok = False
        problems.append("path does not start at the requested configuration")
    if goal is not None and not np.array_equal(path.end, np.asarray(goal, dtype=float)):
        endpoints_ok = False
        problems.append("path does not end at the requested configuration")

    joins_ok = segs[0].t0 == 0.0 and segs[-1].t1 == 1.0
    for i, (a, b) in enumerate(zip(segs[:-1], segs[1:])):
        if a.t1 != b.t0 or not np.array_equal(a.samples[-1], b.samples[0]):
            joins_ok = False
            problems.append(f"segments {i} and {i + 1} do not join")
    if not joins_ok and not any("join" in p for p in problems):
        problems.append("segment times do not cover [0, 1]")

    guard_ok = True
    min_sep = np.inf
    steps = 0.0
    for i, s in enumerate(segs):
        sep = float(separation_many(s.samples).min())
        step = max_step(s.samples)
        min_sep = min(min_sep, sep)
        steps = max(steps, step)
        if not step < 0.5 * sep:
            guard_ok = False
            problems.append(f"segment {i} ({s.phase}): step {step:.3g} >= half separation {sep:.3g}")
    if not min_sep > 0:
        problems.append("robots collide at a sample")

    samples = path.all_samples()
    contained = True
    min_clear = None
    if world is not None:
        clear = clearance_many(world, samples)  # (S, k)
        if np.any(clear < 0):
            contained = False
            problems.append("a sample leaves the free space")
        inner = clear[1:-1]
        min_clear = float(inner.min()) if inner.size else float("inf")
        if not min_clear > 0:
            problems.append("an interior sample touches the boundary")

    min_punct = None
    if punctures is not None and len(punctures):
        q = np.asarray(punctures, dtype=float)
        min_punct = min(float(np.linalg.norm(samples - qi, axis=-1).min()) for qi in q)
        if not min_punct > 0:
            problems.append("a sample hits a puncture")

    valid = (
        endpoints_ok
        and joins_ok
        and guard_ok
        and contained
        and min_sep > 0
        and (min_clear is None or min_clear > 0)
        and (min_punct is None or min_punct > 0)
    )
    return ValidationReport(
        valid=bool(valid),
        min_separation=_finite_or_none(min_sep),
        min_boundary_clearance=None if min_clear is None else _finite_or_none(min_clear),
        min_puncture_clearance=min_punct,
        max_step=steps,
        guard_ok=guard_ok,
        endpoints_ok=endpoints_ok,
        joins_ok=joins_ok,
        contained=contained,
        samples=len(samples),
        rule_ids=path.rule_ids,
        problems=problems,
    )
