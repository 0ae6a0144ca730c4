"""Seeded generators for worlds, points and configuration pairs."""

from __future__ import annotations

import numpy as np

from .collar import CollarAtlas
from .world import Obstacle, SphereWorld, contains_many, validate_world


def random_direction(rng: np.random.Generator, n: int, size: int | None = None) -> np.ndarray:
    shape = (n,) if size is None else (size, n)
    v = rng.normal(size=shape)
    return v / np.linalg.norm(v, axis=-1, keepdims=True)


def random_ball_points(rng: np.random.Generator, n: int, radius: float, size: int) -> np.ndarray:
    u = random_direction(rng, n, size)
    r = radius * rng.random(size) ** (1.0 / n)
    return u * r[:, None]


def random_world(
    rng: np.random.Generator,
    n: int,
    m: int,
    r0: float = 10.0,
    max_tries: int = 10_000,
) -> SphereWorld:
    """Rejection-sample m obstacles with comfortable gaps between all spheres."""
    obstacles: list[Obstacle] = []
    tries = 0
    while len(obstacles) < m:
        tries += 1
        if tries > max_tries:
            raise RuntimeError(f"could not place {m} obstacles in dimension {n}")
        r = r0 * rng.uniform(0.05, 0.15)
        c = random_ball_points(rng, n, r0 - r - 0.1 * r0, 1)[0]
        cand = Obstacle(c, r)
        ok = np.linalg.norm(c) + r < 0.9 * r0
        for o in obstacles:
            ok &= np.linalg.norm(o.center - c) > o.radius + r + 0.1 * r0
        if ok:
            obstacles.append(cand)
    w = SphereWorld(n, r0, tuple(obstacles))
    assert not validate_world(w)
    return w


def random_free_points(rng: np.random.Generator, world: SphereWorld, size: int) -> np.ndarray:
    out = np.empty((0, world.dim))
    while len(out) < size:
        pts = random_ball_points(rng, world.dim, world.work_radius, 2 * size)
        out = np.concatenate([out, pts[contains_many(world, pts)]])
    return out[:size]


def random_boundary_points(rng: np.random.Generator, world: SphereWorld, size: int) -> np.ndarray:
    """Points on the boundary spheres (outer sphere and obstacles picked uniformly)."""
    which = rng.integers(0, world.m + 1, size)
    u = random_direction(rng, world.dim, size)
    pts = np.empty((size, world.dim))
    outer = which == world.m
    pts[outer] = u[outer] * world.work_radius
    for i, (c, r) in enumerate(zip(world.centers, world.radii)):
        sel = which == i
        pts[sel] = c + u[sel] * r
    return _snap_inside(world, pts, which)


def _snap_inside(world: SphereWorld, pts: np.ndarray, which: np.ndarray) -> np.ndarray:
    # rounding can leave a boundary point a few ulps outside X; nudge it back in
    for it in range(40):
        bad = ~contains_many(world, pts)
        if not np.any(bad):
            return pts
        nudge = 2.0 ** (it - 52)
        for j in np.flatnonzero(bad):
            if which[j] == world.m:
                pts[j] *= 1.0 - nudge
            else:
                c = world.centers[which[j]]
                pts[j] = c + (pts[j] - c) * (1.0 + nudge)
    raise RuntimeError("could not place boundary points inside the free space")


def random_collar_points(rng: np.random.Generator, atlas: CollarAtlas, size: int) -> np.ndarray:
    """Points inside the t in (-1, 1] collars, uniform in the radial parameter."""
    world = atlas.world
    which = rng.integers(0, world.m + 1, size)
    u = random_direction(rng, world.dim, size)
    t = rng.uniform(-1.0, 1.0, size)
    pts = np.empty((size, world.dim))
    outer = which == world.m
    pts[outer] = u[outer] * (world.work_radius - atlas.outer_width * (1 - t[outer]))[:, None]
    for i, (c, r, w) in enumerate(zip(world.centers, world.radii, atlas.obstacle_widths)):
        sel = which == i
        pts[sel] = c + u[sel] * (r + w * (1 - t[sel]))[:, None]
    return pts


def random_configuration(
    rng: np.random.Generator,
    world: SphereWorld,
    k: int,
    boundary_prob: float = 0.25,
) -> np.ndarray:
    """k distinct free points; each lies on a boundary sphere with probability ``boundary_prob``."""
    c = random_free_points(rng, world, k)
    on_bd = rng.random(k) < boundary_prob
    if np.any(on_bd):
        c[on_bd] = random_boundary_points(rng, world, int(on_bd.sum()))
    return c


def random_euclidean_configuration(rng: np.random.Generator, n: int, k: int, scale: float = 10.0) -> np.ndarray:
    return rng.uniform(-scale, scale, size=(k, n))
