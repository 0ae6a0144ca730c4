"""Empirical continuity of rule sections.

For random pairs (A, B) and nearby pairs (A', B') in the same rule domain with
the same tie structure, estimate

    L = sup_t |path(t) - path'(t)| / (|A - A'| + |B - B'|)

on a common time grid, and flag rules whose estimate exceeds ``FLAG_LIMIT``.
"""

from __future__ import annotations

import numpy as np

from .paths import evaluate_specs
from .planner import E_AXIS, Planner, separate
from .sampling import random_configuration
from .transport import TransportedPlanner, transported_section

FLAG_LIMIT = 1e6
GRID = 65


def tied_configuration(rng: np.random.Generator, planner: Planner, scale: float = 10.0) -> np.ndarray:
    """Random configuration with a random number of shared e-levels."""
    n, k = planner.n, planner.k
    c = rng.uniform(-scale, scale, size=(k, n))
    levels = int(rng.integers(1, k + 1))
    values = rng.uniform(-scale, scale, levels)
    assign = np.concatenate([np.arange(levels), rng.integers(0, levels, k - levels)])
    c[:, E_AXIS] = values[rng.permutation(assign)]
    return c


def _tie_signature(planner: Planner, c: np.ndarray) -> tuple:
    sep = separate(c, planner.punctures)
    e = c[:, E_AXIS]
    groups = tuple(tuple(np.flatnonzero(e == v)) for v in np.unique(e))
    return groups, tuple(np.argsort(sep[:, E_AXIS], kind="stable"))


def _perturbation(rng: np.random.Generator, planner: Planner, c: np.ndarray) -> np.ndarray:
    """Random direction that moves every tie group rigidly along e."""
    d = rng.normal(size=c.shape)
    e = c[:, E_AXIS]
    for v in np.unique(e):
        idx = e == v
        d[idx, E_AXIS] = 0.0 if v in planner.punctures[:, E_AXIS] else rng.normal()
    return d


def _specs(planner, A, B):
    if isinstance(planner, TransportedPlanner):
        return transported_section(planner, A, B)
    return planner.section(A, B)


def _estimate(planner, A, B, A2, B2) -> float:
    p = evaluate_specs(_specs(planner, A, B), GRID)
    q = evaluate_specs(_specs(planner, A2, B2), GRID)
    dev = float(np.linalg.norm(p - q, axis=-1).max())
    delta = float(np.linalg.norm(A - A2) + np.linalg.norm(B - B2))
    return dev / delta


def _rule_of(planner, A, B) -> str:
    return planner.select(A, B).id


def probe_continuity(planner, trials: int, delta: float, rng: np.random.Generator) -> dict:
    if not delta > 0:
        raise ValueError("delta must be positive")
    inner = planner.inner if isinstance(planner, TransportedPlanner) else planner
    per_rule: dict[str, dict] = {}
    skipped = 0
    for _ in range(trials):
        if isinstance(planner, TransportedPlanner):
            A = random_configuration(rng, planner.world, planner.k, boundary_prob=0.0)
            B = random_configuration(rng, planner.world, planner.k, boundary_prob=0.0)
            dA, dB = rng.normal(size=A.shape), rng.normal(size=B.shape)
        else:
            A, B = tied_configuration(rng, inner), tied_configuration(rng, inner)
            dA, dB = _perturbation(rng, inner, A), _perturbation(rng, inner, B)
        s = delta / (np.linalg.norm(dA) + np.linalg.norm(dB))
        A2, B2 = A + s * dA, B + s * dB
        try:
            rid = _rule_of(planner, A, B)
            same = rid == _rule_of(planner, A2, B2)
        except ValueError:
            same = False
        if same and not isinstance(planner, TransportedPlanner):
            same = _tie_signature(inner, A) == _tie_signature(inner, A2) and _tie_signature(
                inner, B
            ) == _tie_signature(inner, B2)
        if not same:
            skipped += 1
            continue
        L = _estimate(planner, A, B, A2, B2)
        entry = per_rule.setdefault(rid, {"trials": 0, "max_lipschitz": 0.0})
        entry["trials"] += 1
        entry["max_lipschitz"] = max(entry["max_lipschitz"], L)
    for entry in per_rule.values():
        entry["flagged"] = entry["max_lipschitz"] > FLAG_LIMIT
    report = {
        "mode": inner.mode,
        "m": inner.m,
        "experimental": inner.experimental,
        "trials": trials,
        "skipped": skipped,
        "delta": delta,
        "rules": dict(sorted(per_rule.items())),
        "clean": not any(e["flagged"] for e in per_rule.values()),
    }
    if inner.mode == "merged" and not isinstance(planner, TransportedPlanner) and inner.k >= 2:
        report["tradeoff_pairs"] = tradeoff_probe(inner, delta, rng)
    return report


def tradeoff_probe(planner: Planner, delta: float, rng: np.random.Generator, count: int = 5) -> list[dict]:
    """Pairs whose level counts trade off at constant sum, so they share a merged rule.

    (A, B): robots 0 and 1 tied in A, apart by delta/2 in B.
    (A', B'): robots 0 and 1 apart by delta/2 in A, tied in B.
    """
    k = planner.k
    out = []
    for _ in range(count):
        A = rng.uniform(-10, 10, size=(k, planner.n))
        B = rng.uniform(-10, 10, size=(k, planner.n))
        A[1, E_AXIS] = A[0, E_AXIS]
        B[1, E_AXIS] = B[0, E_AXIS] + delta / 2
        A2, B2 = A.copy(), B.copy()
        A2[1, E_AXIS] += delta / 2
        B2[1, E_AXIS] = B2[0, E_AXIS]
        r1, r2 = planner.select(A, B).id, planner.select(A2, B2).id
        out.append({"rule": r1, "same_rule": r1 == r2, "lipschitz": _estimate(planner, A, B, A2, B2)})
    return out

