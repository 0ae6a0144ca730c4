"""An explicit homeomorphism from the interior of a sphere world onto R^n minus m points.

forward = expand o collapse:

* collapse squeezes each shell r_i < |p - x_i| <= R_i onto the punctured ball
  0 < |p - x_i| <= R_i with the affine profile g_i(d) = R_i (d - r_i) / (R_i - r_i),
  and fixes everything else;
* expand sends the open ball of radius r0 onto R^n by x -> x r0 / (r0 - |x|).

The punctures are the images of the obstacle centres.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .collar import CollarAtlas
from .configuration import CollisionError, as_config, is_distinct
from .world import SphereWorld, clearance_many


class DomainError(ValueError):
    pass


# inputs closer than this (relative to r0) to the boundary are refused by forward
MIN_CLEARANCE = 1e-12


@dataclass(frozen=True)
class PunctureMap:
    world: SphereWorld
    influence_radii: tuple[float, ...]
    punctures: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        w = self.world
        R = tuple(float(x) for x in self.influence_radii)
        if len(R) != w.m:
            raise ValueError(f"need {w.m} influence radii, got {len(R)}")
        object.__setattr__(self, "influence_radii", R)
        for i, (c, r, Ri) in enumerate(zip(w.centers, w.radii, R)):
            if not Ri > r:
                raise ValueError(f"influence radius of obstacle {i} must exceed its radius")
            if not np.linalg.norm(c) + Ri < w.work_radius:
                raise ValueError(f"influence shell of obstacle {i} leaves the workspace")
        for i in range(w.m):
            for j in range(i + 1, w.m):
                if not np.linalg.norm(w.centers[i] - w.centers[j]) > R[i] + R[j]:
                    raise ValueError(f"influence shells of obstacles {i} and {j} overlap")
        q = _expand(w.work_radius, w.centers) if w.m else np.zeros((0, w.dim))
        q.setflags(write=False)
        object.__setattr__(self, "punctures", q)


def build_puncture_map(atlas: CollarAtlas, influence_radii: Sequence[float] | None = None) -> PunctureMap:
    R = atlas.shell_radii() if influence_radii is None else influence_radii
    return PunctureMap(atlas.world, tuple(R))


def _expand(r0: float, x: np.ndarray) -> np.ndarray:
    rho = np.linalg.norm(x, axis=-1, keepdims=True)
    return x * (r0 / (r0 - rho))


def _contract(r0: float, y: np.ndarray) -> np.ndarray:
    rho = np.linalg.norm(y, axis=-1, keepdims=True)
    return y * (r0 / (r0 + rho))


def forward(pm: PunctureMap, p) -> np.ndarray:
    """phi: Int(X) -> R^n - Q. Accepts a point or any stack of points."""
    w = pm.world
    p = np.asarray(p, dtype=float)
    if p.shape[-1] != w.dim:
        raise DomainError(f"points have dimension {p.shape[-1]}, expected {w.dim}")
    if np.any(clearance_many(w, p) < MIN_CLEARANCE * w.work_radius):
        raise DomainError("forward needs points in the open interior (clearance >= 1e-12 r0)")
    shape = p.shape
    p = p.reshape(-1, w.dim)
    x = p.copy()
    for c, r, R in zip(w.centers, w.radii, pm.influence_radii):
        v = p - c
        d = np.linalg.norm(v, axis=-1)
        hit = d <= R
        if np.any(hit):
            g = R * (d[hit] - r) / (R - r)
            x[hit] = c + v[hit] * (g / d[hit])[:, None]
    return _expand(w.work_radius, x).reshape(shape)


def inverse(pm: PunctureMap, y) -> np.ndarray:
    """phi^-1: R^n - Q -> Int(X)."""
    w = pm.world
    y = np.asarray(y, dtype=float)
    if y.shape[-1] != w.dim:
        raise DomainError(f"points have dimension {y.shape[-1]}, expected {w.dim}")
    for q in pm.punctures:
        if np.any(np.all(y == q, axis=-1)):
            raise DomainError(f"point {q.tolist()} is a puncture")
    shape = y.shape
    z = _contract(w.work_radius, y.reshape(-1, w.dim))
    out = z.copy()
    for c, r, R in zip(w.centers, w.radii, pm.influence_radii):
        v = z - c
        d = np.linalg.norm(v, axis=-1)
        hit = d <= R
        if np.any(hit):
            if np.any(d[hit] == 0):
                raise DomainError("point maps onto an obstacle centre (numerically a puncture)")
            back = r + d[hit] * (R - r) / R
            out[hit] = c + v[hit] * (back / d[hit])[:, None]
    return out.reshape(shape)


def _distinct_config(c) -> np.ndarray:
    c = as_config(c)
    if not is_distinct(c):
        raise CollisionError("configuration has coinciding points")
    return c


def config_forward(pm: PunctureMap, c) -> np.ndarray:
    return forward(pm, _distinct_config(c))


def config_inverse(pm: PunctureMap, c) -> np.ndarray:
    return inverse(pm, _distinct_config(c))
