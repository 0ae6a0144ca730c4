"""Ordered configuration spaces F(X, k).

A configuration is a ``(k, n)`` float array whose rows are pairwise distinct
points. Distinctness is exact: there is no separation margin in the space
itself, margins are only queried.
"""

from __future__ import annotations

import itertools
from typing import Sequence

import numpy as np

from .world import DimensionError, SphereWorld, contains_many


class CollisionError(ValueError):
    pass


def as_config(points, dim: int | None = None) -> np.ndarray:
    c = np.array(points, dtype=float)
    if c.ndim != 2 or c.shape[0] < 1:
        raise DimensionError(f"configuration must be a non-empty list of points, got shape {c.shape}")
    if dim is not None and c.shape[1] != dim:
        raise DimensionError(f"configuration points have dimension {c.shape[1]}, expected {dim}")
    if not np.all(np.isfinite(c)):
        raise ValueError("configuration coordinates must be finite")
    return c


def is_distinct(c: np.ndarray) -> bool:
    k = c.shape[0]
    if k < 2:
        return True
    # exact comparison through lexicographic sort of rows
    rows = np.unique(c, axis=0)
    return rows.shape[0] == k


def in_free_configuration_space(world: SphereWorld, c) -> bool:
    c = as_config(c, world.dim)
    return bool(np.all(contains_many(world, c))) and is_distinct(c)


def pairwise_distances(c: np.ndarray) -> np.ndarray:
    """Distances for i < j, flattened. Works on stacks ``(..., k, n)``."""
    k = c.shape[-2]
    i, j = np.triu_indices(k, 1)
    return np.linalg.norm(c[..., i, :] - c[..., j, :], axis=-1)


def separation(c) -> float:
    """Minimum pairwise distance; +inf for a single robot."""
    c = as_config(c)
    if c.shape[0] == 1:
        return float("inf")
    s = float(pairwise_distances(c).min())
    if s == 0.0:
        raise CollisionError("configuration has coinciding points")
    return s


def separation_many(cs: np.ndarray) -> np.ndarray:
    """Per-sample separation for a stack ``(S, k, n)``."""
    if cs.shape[-2] == 1:
        return np.full(cs.shape[:-2], np.inf)
    return pairwise_distances(cs).min(axis=-1)


def check_permutation(sigma: Sequence[int], k: int) -> tuple[int, ...]:
    sigma = tuple(int(s) for s in sigma)
    if sorted(sigma) != list(range(k)):
        raise ValueError(f"{sigma} is not a permutation of 0..{k - 1}")
    return sigma


def compose(tau: Sequence[int], sigma: Sequence[int]) -> tuple[int, ...]:
    """tau o sigma, as 0-based index tuples."""
    return tuple(tau[s] for s in sigma)


def permute(c, sigma: Sequence[int]) -> np.ndarray:
    """Relabel robots: the point of robot i moves to slot sigma[i].

    This is a left action, permute(permute(c, s), t) == permute(c, compose(t, s)).
    Works on any array whose second-to-last axis indexes robots.
    """
    c = np.asarray(c)
    sigma = check_permutation(sigma, c.shape[-2])
    out = np.empty_like(c)
    out[..., list(sigma), :] = c
    return out


def project(c, r: int) -> np.ndarray:
    """Keep the first r robots (1 <= r < k)."""
    c = as_config(c)
    k = c.shape[0]
    if not 1 <= r < k:
        raise ValueError(f"projection rank r={r} must satisfy 1 <= r < k={k}")
    return c[:r].copy()


def all_permutations(k: int):
    return itertools.permutations(range(k))
