"""Radial collars of the boundary spheres and the push-off maps built from them.

Every boundary sphere S gets a chart h(foot, t), t in (-1, 1], with t = 1 on S
and t decreasing into the interior. For the outer sphere

    h(r0 * u, t) = u * (r0 - w0 * (1 - t))

and for obstacle i

    h(x_i + r_i * u, t) = x_i + u * (r_i + w_i * (1 - t)).

The retraction replaces t by t/2 and the isotopy by (1/2 + s/2) * t on the
region t in [0, 1]; everything else (the core) is left fixed. Both are
evaluated in displacement form ``y + (1 - s)/2 * delta(y)`` so that s = 1 is
the identity bit for bit and s = 0 agrees bit for bit with the retraction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .configuration import CollisionError, as_config, is_distinct
from .world import OUTER, OutsideWorldError, SphereWorld, as_point, clearance_many, min_gap, validate_world


class CollarError(ValueError):
    pass


@dataclass(frozen=True)
class CollarCoords:
    sphere: str | int  # OUTER or obstacle index
    foot: np.ndarray
    t: float


@dataclass(frozen=True)
class CollarAtlas:
    world: SphereWorld
    outer_width: float
    obstacle_widths: tuple[float, ...]

    @property
    def min_width(self) -> float:
        return min((self.outer_width, *self.obstacle_widths))

    def width(self, sphere) -> float:
        return self.outer_width if sphere == OUTER else self.obstacle_widths[sphere]

    def shell_radii(self) -> np.ndarray:
        """Outer radius R_i = r_i + 2 w_i of each full obstacle collar."""
        return self.world.radii + 2.0 * np.asarray(self.obstacle_widths, dtype=float)


def _check_shells(world: SphereWorld, w0: float, ws: Sequence[float]) -> None:
    if not w0 > 0 or any(not w > 0 for w in ws):
        raise CollarError("collar widths must be strictly positive")
    limit = world.work_radius - 2 * w0
    for i, (c, r, w) in enumerate(zip(world.centers, world.radii, ws)):
        reach = float(np.linalg.norm(c)) + r + 2 * w
        if not reach < limit:
            raise CollarError(
                f"collar of obstacle {i} meets the outer collar: {reach:g} >= r0 - 2 w0 = {limit:g}"
            )
    for i in range(world.m):
        for j in range(i + 1, world.m):
            d = float(np.linalg.norm(world.centers[i] - world.centers[j]))
            need = world.radii[i] + 2 * ws[i] + world.radii[j] + 2 * ws[j]
            if not d > need:
                raise CollarError(f"collars of obstacles {i} and {j} overlap: {d:g} <= {need:g}")


def build_atlas(
    world: SphereWorld,
    widths: tuple[float, Sequence[float]] | None = None,
    fraction: float = 0.2,
) -> CollarAtlas:
    """Build collars; default widths are ``fraction * min_gap`` for every sphere."""
    bad = validate_world(world)
    if bad:
        raise CollarError(f"world is not a valid sphere world: {bad[0].detail}")
    if widths is None:
        w = fraction * min_gap(world)
        w0, ws = w, [w] * world.m
    else:
        w0, ws = widths
        if len(ws) != world.m:
            raise CollarError(f"expected {world.m} obstacle widths, got {len(ws)}")
    _check_shells(world, float(w0), [float(w) for w in ws])
    return CollarAtlas(world, float(w0), tuple(float(w) for w in ws))


def _push_vectors(atlas: CollarAtlas, y: np.ndarray) -> np.ndarray:
    """delta(y) such that H(y, s) = y + (1 - s)/2 * delta(y); zero on the core."""
    world = atlas.world
    shape = np.shape(y)
    y = np.asarray(y, dtype=float).reshape(-1, world.dim)
    if np.any(clearance_many(world, y) < 0):
        raise OutsideWorldError("point outside the free space")
    delta = np.zeros_like(y)

    w0 = atlas.outer_width
    rho = np.linalg.norm(y, axis=-1)
    t = 1.0 - (world.work_radius - rho) / w0
    hit = t > 0
    if np.any(hit):
        # radius decreases by w0 * t; direction -y/|y|
        delta[hit] = -(y[hit] / rho[hit][:, None]) * (w0 * t[hit])[:, None]

    for c, r, w in zip(world.centers, world.radii, atlas.obstacle_widths):
        v = y - c
        d = np.linalg.norm(v, axis=-1)
        t = 1.0 - (d - r) / w
        hit = t > 0
        if np.any(hit):
            delta[hit] = (v[hit] / d[hit][:, None]) * (w * t[hit])[:, None]
    return delta.reshape(shape)


def collar_coords(atlas: CollarAtlas, y) -> CollarCoords | None:
    """Chart coordinates of y, or None when y lies in the core (t <= 0)."""
    world = atlas.world
    y = as_point(y, world.dim)
    if clearance_many(world, y) < 0:
        raise OutsideWorldError(f"point {y.tolist()} lies outside the free space")
    rho = float(np.linalg.norm(y))
    t = 1.0 - (world.work_radius - rho) / atlas.outer_width
    if t > 0:
        return CollarCoords(OUTER, y / rho * world.work_radius, t)
    for i, (c, r, w) in enumerate(zip(world.centers, world.radii, atlas.obstacle_widths)):
        v = y - c
        d = float(np.linalg.norm(v))
        t = 1.0 - (d - r) / w
        if t > 0:
            return CollarCoords(i, c + v / d * r, t)
    return None


def chart(atlas: CollarAtlas, sphere, foot, t: float) -> np.ndarray:
    """Evaluate h(foot, t) for the chart of ``sphere``."""
    if not -1.0 < t <= 1.0:
        raise ValueError(f"collar parameter t={t} outside (-1, 1]")
    world = atlas.world
    foot = as_point(foot, world.dim)
    if sphere == OUTER:
        u = foot / np.linalg.norm(foot)
        return u * (world.work_radius - atlas.outer_width * (1.0 - t))
    c, r, w = world.centers[sphere], world.radii[sphere], atlas.obstacle_widths[sphere]
    u = (foot - c) / np.linalg.norm(foot - c)
    return c + u * (r + w * (1.0 - t))


def isotopy(atlas: CollarAtlas, y, s: float) -> np.ndarray:
    """H(y, s) for one point or an array of points (last axis = coordinates)."""
    s = float(s)
    if not 0.0 <= s <= 1.0:
        raise ValueError(f"isotopy parameter s={s} outside [0, 1]")
    y = np.asarray(y, dtype=float)
    return y + (1.0 - s) / 2.0 * _push_vectors(atlas, y)


def retract(atlas: CollarAtlas, y) -> np.ndarray:
    """p(y): push y halfway down its collar; identity on the core."""
    return isotopy(atlas, y, 0.0)


def isotopy_sweep(atlas: CollarAtlas, y, s: np.ndarray) -> np.ndarray:
    """Stack of H(y, s_j) for all s_j, shape ``(len(s),) + y.shape``."""
    s = np.asarray(s, dtype=float)
    if np.any((s < 0) | (s > 1)):
        raise ValueError("isotopy parameters must lie in [0, 1]")
    y = np.asarray(y, dtype=float)
    delta = _push_vectors(atlas, y)
    shape = (len(s),) + (1,) * y.ndim
    return y + ((1.0 - s) / 2.0).reshape(shape) * delta


def _check_config(c) -> np.ndarray:
    c = as_config(c)
    if not is_distinct(c):
        raise CollisionError("configuration has coinciding points")
    return c


def config_retract(atlas: CollarAtlas, c) -> np.ndarray:
    """F(p, k): retract every robot."""
    return retract(atlas, _check_config(c))


def config_isotopy(atlas: CollarAtlas, c, s: float) -> np.ndarray:
    """F(H, k) at time s."""
    return isotopy(atlas, _check_config(c), s)
