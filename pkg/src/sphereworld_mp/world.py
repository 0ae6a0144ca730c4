"""Sphere worlds: a closed ball of radius r0 with m open ball obstacles removed."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np


class DimensionError(ValueError):
    pass


class OutsideWorldError(ValueError):
    pass


def as_point(coords, dim: int | None = None) -> np.ndarray:
    p = np.asarray(coords, dtype=float)
    if p.ndim != 1:
        raise DimensionError(f"point must be a flat coordinate list, got shape {p.shape}")
    if dim is not None and p.shape[0] != dim:
        raise DimensionError(f"point has dimension {p.shape[0]}, expected {dim}")
    if not np.all(np.isfinite(p)):
        raise ValueError("point coordinates must be finite")
    return p


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Obstacle:
    center: np.ndarray
    radius: float

    def __eq__(self, other):
        if not isinstance(other, Obstacle):
            return NotImplemented
        return self.radius == other.radius and np.array_equal(self.center, other.center)

    def __hash__(self):
        return hash((self.center.tobytes(), self.radius))

    def __post_init__(self):
        object.__setattr__(self, "center", _frozen(as_point(self.center)))
        object.__setattr__(self, "radius", float(self.radius))
        if not self.radius > 0:
            raise ValueError(f"obstacle radius must be positive, got {self.radius}")


@dataclass(frozen=True)
class SphereWorld:
    dim: int
    work_radius: float
    obstacles: tuple[Obstacle, ...] = ()
    # arrays for vectorised queries, derived in __post_init__
    centers: np.ndarray = field(init=False, repr=False, compare=False)
    radii: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if int(self.dim) != self.dim or self.dim < 2:
            raise ValueError(f"dimension must be an integer >= 2, got {self.dim}")
        object.__setattr__(self, "dim", int(self.dim))
        object.__setattr__(self, "work_radius", float(self.work_radius))
        obs = tuple(o if isinstance(o, Obstacle) else Obstacle(*o) for o in self.obstacles)
        for i, o in enumerate(obs):
            if o.center.shape[0] != self.dim:
                raise DimensionError(f"obstacle {i} center has dimension {o.center.shape[0]}")
        object.__setattr__(self, "obstacles", obs)
        object.__setattr__(
            self, "centers", _frozen(np.array([o.center for o in obs]).reshape(len(obs), self.dim))
        )
        object.__setattr__(self, "radii", _frozen([o.radius for o in obs]))

    @property
    def m(self) -> int:
        return len(self.obstacles)

    @property
    def r0(self) -> float:
        return self.work_radius

    @property
    def boundary_tol(self) -> float:
        return 1e-9 * self.work_radius

    @classmethod
    def from_dict(cls, d: dict) -> "SphereWorld":
        obstacles = tuple(Obstacle(o["center"], o["radius"]) for o in d.get("obstacles", []))
        return cls(int(d["n"]), float(d["r0"]), obstacles)

    def to_dict(self) -> dict:
        return {
            "n": self.dim,
            "r0": self.work_radius,
            "obstacles": [
                {"center": o.center.tolist(), "radius": o.radius} for o in self.obstacles
            ],
        }


@dataclass(frozen=True)
class Violation:
    kind: str  # "nonpositive_radius" | "closure_outside_workspace" | "obstacles_intersect"
    indices: tuple[int, ...]
    detail: str


def validate_world(world: SphereWorld) -> list[Violation]:
    """Check the sphere-world inequalities; an empty list means the world is valid."""
    out = []
    r0 = world.work_radius
    if not r0 > 0:
        out.append(Violation("nonpositive_radius", (), f"r0={r0} must be > 0"))
    for i, o in enumerate(world.obstacles):
        reach = float(np.linalg.norm(o.center)) + o.radius
        if not reach < r0:
            out.append(
                Violation(
                    "closure_outside_workspace",
                    (i,),
                    f"|x_{i}| + r_{i} = {reach:g} >= r0 = {r0:g}",
                )
            )
    for i in range(world.m):
        for j in range(i + 1, world.m):
            a, b = world.obstacles[i], world.obstacles[j]
            d = float(np.linalg.norm(a.center - b.center))
            if not d > a.radius + b.radius:
                out.append(
                    Violation(
                        "obstacles_intersect",
                        (i, j),
                        f"|x_{i} - x_{j}| = {d:g} <= r_{i} + r_{j} = {a.radius + b.radius:g}",
                    )
                )
    return out


def contains(world: SphereWorld, p) -> bool:
    p = as_point(p, world.dim)
    if np.linalg.norm(p) > world.work_radius:
        return False
    if world.m == 0:
        return True
    return bool(np.all(np.linalg.norm(world.centers - p, axis=1) >= world.radii))


def contains_many(world: SphereWorld, pts: np.ndarray) -> np.ndarray:
    """Vectorised `contains` over the last axis of ``pts``."""
    pts = np.asarray(pts, dtype=float)
    ok = np.linalg.norm(pts, axis=-1) <= world.work_radius
    for c, r in zip(world.centers, world.radii):
        ok &= np.linalg.norm(pts - c, axis=-1) >= r
    return ok


OUTER = "outer"


@dataclass(frozen=True)
class Classification:
    kind: str  # "interior" | "boundary" | "outside"
    sphere: str | int | None = None  # OUTER or obstacle index when kind == "boundary"


def classify(world: SphereWorld, p, tol: float | None = None) -> Classification:
    p = as_point(p, world.dim)
    tol = world.boundary_tol if tol is None else tol
    gaps = [(abs(np.linalg.norm(p) - world.work_radius), OUTER)]
    for i, (c, r) in enumerate(zip(world.centers, world.radii)):
        gaps.append((abs(np.linalg.norm(p - c) - r), i))
    best_gap, best = min(gaps, key=lambda g: g[0])
    if best_gap <= tol:
        return Classification("boundary", best)
    if contains(world, p):
        return Classification("interior")
    return Classification("outside")


def clearance_many(world: SphereWorld, pts: np.ndarray) -> np.ndarray:
    """Signed clearance to the boundary; negative outside X."""
    pts = np.asarray(pts, dtype=float)
    c = world.work_radius - np.linalg.norm(pts, axis=-1)
    for ctr, r in zip(world.centers, world.radii):
        c = np.minimum(c, np.linalg.norm(pts - ctr, axis=-1) - r)
    return c


def boundary_clearance(world: SphereWorld, p) -> float:
    p = as_point(p, world.dim)
    c = float(clearance_many(world, p))
    if c < 0:
        raise OutsideWorldError(f"point {p.tolist()} lies outside the free space")
    return c


def min_gap(world: SphereWorld) -> float:
    """Smallest slack among the sphere-world inequalities (r0 when there are no obstacles)."""
    if world.m == 0:
        return world.work_radius
    reach = np.linalg.norm(world.centers, axis=1) + world.radii
    gap = world.work_radius - float(reach.max())
    for i in range(world.m):
        for j in range(i + 1, world.m):
            d = float(np.linalg.norm(world.centers[i] - world.centers[j]))
            gap = min(gap, d - world.radii[i] - world.radii[j])
    return gap


def make_world(n: int, r0: float, obstacles: Sequence[tuple[Sequence[float], float]] = ()) -> SphereWorld:
    return SphereWorld(n, r0, tuple(Obstacle(c, r) for c, r in obstacles))
