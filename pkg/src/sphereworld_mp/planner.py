"""Motion planners with finitely many local rules on F(R^n, k) and F(R^n - Q, k).

Every section is the same five-phase "spread" motion, run along the first
coordinate axis e (levels) and the second axis u (lanes):

1. separate  -- break ties between robots sharing an e-level by small e-offsets
2. lane      -- move every robot's u-coordinate to its lane
3. travel    -- move all other coordinates to the separated goal
4. unlane    -- move u back to the separated goal values
5. merge     -- undo the goal separation

All phases are straight per-robot segments between six waypoint
configurations. Rule domains are indexed by the number of distinct e-levels
of the start and goal (strict mode), or by their sum (merged mode). With
punctures, the levels of the punctures take part in the count, lanes sit above
every puncture and straight segments that come within ``eps`` of a puncture
get a tent-shaped detour; the detour incidence pattern is part of the rule.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .configuration import CollisionError, as_config, is_distinct
from .paths import DEFAULT_SAMPLES, PiecewisePath, SegmentSpec, sample_path

E_AXIS = 0
U_AXIS = 1
PHASES = ("separate", "lane", "travel", "unlane", "merge")
# tent peaks are kept this far from the phase ends so phase endpoints never move
TENT_MARGIN = 0.1


class PlannerError(RuntimeError):
    pass


class PlannerInputError(ValueError):
    pass


@dataclass(frozen=True)
class LocalRule:
    id: str
    key: tuple
    domain: Callable[[np.ndarray, np.ndarray], bool] = field(repr=False, compare=False)
    section: Callable[[np.ndarray, np.ndarray], list[SegmentSpec]] = field(repr=False, compare=False)


def strictly_increasing(v) -> bool:
    v = np.asarray(v, dtype=float)
    return bool(np.all(np.diff(v) > 0))


def lerp(a, b, s):
    """(1 - s) a + s b; exact at s = 0 and s = 1."""
    return (1.0 - s) * a + s * b


def count_levels(e: np.ndarray) -> int:
    return int(np.unique(e).shape[0])


def separate(c: np.ndarray, pins: np.ndarray) -> np.ndarray:
    """Offset robots along e so that no two robots, and no robot and pin, share an e-level.

    Inside a level, robots are ranked lexicographically by their full
    coordinates and shifted by rank * delta, delta = (smallest level gap) / (4k).
    Ranks start at 1 in a level that holds a pin, which stays put.
    """
    k = c.shape[0]
    e = c[:, E_AXIS]
    pe = pins[:, E_AXIS]
    levels = np.unique(np.concatenate([e, pe]))
    gap = float(np.diff(levels).min()) if len(levels) > 1 else 1.0
    delta = gap / (4 * k)
    out = c.copy()
    pinned = set(pe.tolist())
    for v in levels:
        idx = np.flatnonzero(e == v)
        if idx.size == 0:
            continue
        pts = c[idx]
        order = idx[np.lexsort(pts.T[::-1])]
        first = 1 if v in pinned else 0
        ranks = np.arange(first, first + idx.size, dtype=float)
        out[order, E_AXIS] = v + ranks * delta
    return out


@dataclass(frozen=True)
class Planner:
    n: int
    k: int
    punctures: np.ndarray
    mode: str = "strict"
    rules: tuple[LocalRule, ...] = field(default=(), repr=False)
    eps: float = 0.0
    detour_axis: int = E_AXIS
    lane_base: float = 0.0

    @property
    def m(self) -> int:
        return self.punctures.shape[0]

    @property
    def experimental(self) -> bool:
        return self.mode == "merged" or self.m > 0

    @property
    def beta(self) -> float:
        return self.eps

    @property
    def rule_count(self) -> int:
        return len(self.rules)

    def describe(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "m": self.m,
            "mode": self.mode,
            "rules": self.rule_count,
            "experimental": self.experimental,
        }

    # ---- domain indexing -------------------------------------------------

    def levels(self, c: np.ndarray) -> int:
        return count_levels(np.concatenate([c[:, E_AXIS], self.punctures[:, E_AXIS]]))

    def waypoints(self, A: np.ndarray, B: np.ndarray) -> list[np.ndarray]:
        A_sep = separate(A, self.punctures)
        B_sep = separate(B, self.punctures)
        ranks = np.argsort(np.argsort(A_sep[:, E_AXIS], kind="stable"), kind="stable")
        lanes = self.lane_base + ranks.astype(float)
        A_lane = A_sep.copy()
        A_lane[:, U_AXIS] = lanes
        B_lane = B_sep.copy()
        B_lane[:, U_AXIS] = lanes
        return [A, A_sep, A_lane, B_lane, B_sep, B]

    def detours(self, a: np.ndarray, b: np.ndarray):
        """Tent parameters (magnitude*sign, centre) per robot and puncture for segment a -> b."""
        if self.m == 0:
            return None
        d = b - a  # (k, n)
        v = self.punctures[None, :, :] - a[:, None, :]  # (k, m, n)
        dd = np.einsum("kn,kn->k", d, d)
        proj = np.einsum("kmn,kn->km", v, d)
        with np.errstate(invalid="ignore", divide="ignore"):
            tau = np.where(dd[:, None] > 0, proj / dd[:, None], 0.0)
        tau = np.clip(tau, 0.0, 1.0)
        closest = a[:, None, :] + tau[..., None] * d[:, None, :] - self.punctures[None, :, :]
        clear = np.linalg.norm(closest, axis=-1)
        mag = self.beta * np.maximum(0.0, 1.0 - clear / self.eps)
        sign = np.where(closest[..., self.detour_axis] < 0, -1.0, 1.0)
        centre = np.clip(tau, TENT_MARGIN, 1.0 - TENT_MARGIN)
        return mag * sign, centre

    def detour_pattern(self, wps: list[np.ndarray]) -> tuple[int, ...]:
        if self.m == 0:
            return ()
        hit = np.zeros(self.k, dtype=bool)
        for a, b in zip(wps[:-1], wps[1:]):
            amp, _ = self.detours(a, b)
            hit |= np.any(amp != 0, axis=1)
        return tuple(int(h) for h in hit)

    def key(self, A: np.ndarray, B: np.ndarray) -> tuple:
        la, lb = self.levels(A), self.levels(B)
        base = (la, lb) if self.mode == "strict" else (la + lb,)
        if self.m == 0:
            return base
        return base + (self.detour_pattern(self.waypoints(A, B)),)

    def rule_id(self, key: tuple) -> str:
        if self.mode == "strict":
            rid = f"strict/{key[0]}-{key[1]}"
            rest = key[2:]
        else:
            rid = f"merged/{key[0]}"
            rest = key[1:]
        if rest:
            rid += "/detour=" + "".join(str(b) for b in rest[0])
        return rid

    # ---- sections ----------------------------------------------------------

    def _phase_fn(self, a: np.ndarray, b: np.ndarray):
        det = self.detours(a, b)
        axis = self.detour_axis

        def fn(tau: np.ndarray) -> np.ndarray:
            tau = np.asarray(tau, dtype=float)
            s = tau[:, None, None]
            out = lerp(a[None], b[None], s)
            if det is not None:
                amp, centre = det
                active = amp != 0
                if np.any(active):
                    t = tau[:, None, None]
                    c = centre[None]
                    tent = np.where(t <= c, t / c, (1.0 - t) / (1.0 - c))
                    out[:, :, axis] += np.sum(np.where(active[None], amp[None] * tent, 0.0), axis=2)
            return out

        return fn

    def section(self, A, B, rule_id: str | None = None, t0: float = 0.0, t1: float = 1.0) -> list[SegmentSpec]:
        A, B = self.check_input(A), self.check_input(B)
        rid = rule_id if rule_id is not None else self.rule_id(self.key(A, B))
        wps = self.waypoints(A, B)
        step = (t1 - t0) / len(PHASES)
        specs = []
        for j, name in enumerate(PHASES):
            lo = t0 + j * step
            hi = t1 if j == len(PHASES) - 1 else t0 + (j + 1) * step
            specs.append(SegmentSpec(rid, name, lo, hi, self._phase_fn(wps[j], wps[j + 1])))
        return specs

    def check_input(self, c) -> np.ndarray:
        c = as_config(c, self.n)
        if c.shape[0] != self.k:
            raise PlannerInputError(f"configuration has {c.shape[0]} robots, planner expects {self.k}")
        if not is_distinct(c):
            raise CollisionError("configuration has coinciding points")
        for q in self.punctures:
            if np.any(np.all(c == q, axis=1)):
                raise PlannerInputError(f"configuration contains the puncture {q.tolist()}")
        return c

    def matching_rules(self, A, B) -> list[LocalRule]:
        return [r for r in self.rules if r.domain(A, B)]

    def select(self, A, B) -> LocalRule:
        key = self.key(A, B)
        for rule in self.rules:
            if rule.key == key:
                return rule
        raise PlannerError(f"no rule covers the pair with domain key {key}")


def plan(planner: Planner, A, B, samples_per_segment: int = DEFAULT_SAMPLES) -> PiecewisePath:
    A, B = planner.check_input(A), planner.check_input(B)
    rule = planner.select(A, B)
    return sample_path(rule.section(A, B), samples_per_segment)


def _attach_rules(p: Planner) -> Planner:
    if p.m == 0:
        lo, hi = 1, p.k
    else:
        lo = count_levels(p.punctures[:, E_AXIS])
        hi = lo + p.k
    if p.mode == "strict":
        bases = [(a, b) for a in range(lo, hi + 1) for b in range(lo, hi + 1)]
    else:
        bases = [(j,) for j in range(2 * lo, 2 * hi + 1)]
    patterns = [()] if p.m == 0 else [(pat,) for pat in itertools.product((0, 1), repeat=p.k)]
    rules = []
    for base in bases:
        for pat in patterns:
            key = base + pat
            rid = p.rule_id(key)

            def domain(A, B, key=key):
                return p.key(as_config(A), as_config(B)) == key

            def section(A, B, rid=rid):
                return p.section(A, B, rule_id=rid)

            rules.append(LocalRule(rid, key, domain, section))
    object.__setattr__(p, "rules", tuple(rules))
    return p


def _check_mode(mode: str) -> None:
    if mode not in ("strict", "merged"):
        raise ValueError(f"mode must be 'strict' or 'merged', got {mode!r}")


def spread_planner(n: int, k: int, mode: str = "strict") -> Planner:
    """Planner on F(R^n, k): k*k rules (strict) or 2k - 1 rules (merged)."""
    if n < 2 or k < 1:
        raise ValueError("spread planner needs n >= 2 and k >= 1")
    _check_mode(mode)
    return _attach_rules(Planner(n, k, np.zeros((0, n)), mode))


def default_eps(punctures: np.ndarray, lane_base: float) -> float:
    d = [lane_base - float(punctures[:, U_AXIS].max())]
    m = punctures.shape[0]
    for i in range(m):
        for j in range(i + 1, m):
            d.append(float(np.linalg.norm(punctures[i] - punctures[j])))
    return 0.5 * min(d)


def punctured_planner(n: int, k: int, punctures, mode: str = "strict", eps: float | None = None) -> Planner:
    """Planner on F(R^n - Q, k); with no punctures this is exactly `spread_planner`."""
    q = np.asarray(punctures, dtype=float).reshape(-1, n)
    if q.shape[0] == 0:
        return spread_planner(n, k, mode)
    if n < 2 or k < 1:
        raise ValueError("punctured planner needs n >= 2 and k >= 1")
    _check_mode(mode)
    if not is_distinct(q):
        raise ValueError("punctures must be pairwise distinct")
    q = q.copy()
    q.setflags(write=False)
    lane_base = float(q[:, U_AXIS].max()) + 1.0
    eps = default_eps(q, lane_base) if eps is None else float(eps)
    axis = 2 if n >= 3 else E_AXIS
    return _attach_rules(Planner(n, k, q, mode, eps=eps, detour_axis=axis, lane_base=lane_base))


def rule_census(planner: Planner, pairs) -> dict:
    """Count how often each rule fires over ``pairs``; every rule is listed."""
    counts = {r.id: 0 for r in planner.rules}
    for A, B in pairs:
        counts[planner.select(as_config(A), as_config(B)).id] += 1
    return {"total": planner.rule_count, "counts": counts}


def witness_config(n: int, k: int, levels: int) -> np.ndarray:
    """A configuration of k robots with exactly ``levels`` distinct e-values."""
    if not 1 <= levels <= k:
        raise ValueError(f"need 1 <= levels <= k, got {levels}")
    c = np.zeros((k, n))
    c[:, E_AXIS] = np.minimum(np.arange(k), levels - 1)
    c[:, U_AXIS] = np.arange(k)
    return c


def witness_pairs(planner: Planner) -> list[tuple[np.ndarray, np.ndarray]]:
    """One (A, B) pair per base domain of an unpunctured planner."""
    if planner.m:
        raise ValueError("witness construction is for planners without punctures")
    n, k = planner.n, planner.k
    pairs = []
    if planner.mode == "strict":
        for la in range(1, k + 1):
            for lb in range(1, k + 1):
                pairs.append((witness_config(n, k, la), witness_config(n, k, lb) + 10.0))
    else:
        for j in range(2, 2 * k + 1):
            la = min(k, j - 1)
            pairs.append((witness_config(n, k, la), witness_config(n, k, j - la) + 10.0))
    return pairs
