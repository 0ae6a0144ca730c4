"""Sampled piecewise paths in configuration space."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .configuration import separation_many

# fn maps local times tau in [0, 1] (shape (S,)) to configurations (S, k, n)
SegmentFn = Callable[[np.ndarray], np.ndarray]

DEFAULT_SAMPLES = 256
MAX_SAMPLES = 1 << 20


@dataclass(frozen=True)
class SegmentSpec:
    """An unsampled segment: a closed-form map from local time to configurations."""

    rule_id: str
    phase: str
    t0: float
    t1: float
    fn: SegmentFn


@dataclass(frozen=True)
class Segment:
    rule_id: str
    phase: str
    t0: float
    t1: float
    samples: np.ndarray  # (S, k, n)
    tau: np.ndarray | None = None  # local sample times in [0, 1]; None means uniform

    @property
    def local_times(self) -> np.ndarray:
        if self.tau is None:
            return np.linspace(0.0, 1.0, len(self.samples))
        return self.tau

    @property
    def times(self) -> np.ndarray:
        return self.t0 + self.local_times * (self.t1 - self.t0)


@dataclass(frozen=True)
class PiecewisePath:
    segments: tuple[Segment, ...]

    @property
    def start(self) -> np.ndarray:
        return self.segments[0].samples[0]

    @property
    def end(self) -> np.ndarray:
        return self.segments[-1].samples[-1]

    @property
    def rule_ids(self) -> list[str]:
        seen = []
        for s in self.segments:
            if s.rule_id not in seen:
                seen.append(s.rule_id)
        return seen

    def all_samples(self) -> np.ndarray:
        return np.concatenate([s.samples for s in self.segments])

    def sample_count(self) -> int:
        return sum(len(s.samples) for s in self.segments)

    def to_json(self) -> dict:
        return {
            "segments": [
                {
                    "rule_id": s.rule_id,
                    "phase": s.phase,
                    "t0": s.t0,
                    "t1": s.t1,
                    "tau": s.local_times.tolist(),
                    "samples": s.samples.tolist(),
                }
                for s in self.segments
            ]
        }

    @classmethod
    def from_json(cls, d: dict) -> "PiecewisePath":
        segs = tuple(
            Segment(
                s["rule_id"],
                s.get("phase", s["rule_id"]),
                float(s["t0"]),
                float(s["t1"]),
                np.asarray(s["samples"], dtype=float),
                None if "tau" not in s else np.asarray(s["tau"], dtype=float),
            )
            for s in d["segments"]
        )
        return cls(segs)


def max_step(samples: np.ndarray) -> float:
    """Largest per-robot displacement between consecutive samples."""
    if len(samples) < 2:
        return 0.0
    return float(np.linalg.norm(np.diff(samples, axis=0), axis=-1).max())


def guard_ok(samples: np.ndarray) -> bool:
    """Inter-sample guard: every step is under half the smallest separation seen."""
    sep = float(separation_many(samples).min())
    return max_step(samples) < 0.5 * sep


def sample_segment(piece: SegmentSpec, n_samples: int, refine: bool = True) -> Segment:
    """Sample on a uniform grid, then bisect every interval that breaks the guard."""
    tau = np.linspace(0.0, 1.0, max(int(n_samples), 2))
    samples = piece.fn(tau)
    while refine and len(tau) < MAX_SAMPLES:
        sep = float(separation_many(samples).min())
        steps = np.linalg.norm(np.diff(samples, axis=0), axis=-1).max(axis=-1)
        bad = np.flatnonzero(~(steps < 0.5 * sep))
        if bad.size == 0 or not sep > 0:
            break
        mid = 0.5 * (tau[bad] + tau[bad + 1])
        new = piece.fn(mid)
        tau = np.insert(tau, bad + 1, mid)
        samples = np.insert(samples, bad + 1, new, axis=0)
    return Segment(piece.rule_id, piece.phase, piece.t0, piece.t1, samples, tau)


def sample_path(specs: Sequence[SegmentSpec], n_samples: int = DEFAULT_SAMPLES, refine: bool = True) -> PiecewisePath:
    return PiecewisePath(tuple(sample_segment(s, n_samples, refine) for s in specs))


def evaluate_specs(specs: Sequence[SegmentSpec], n_samples: int) -> np.ndarray:
    """All segments on one fixed grid, concatenated; used to compare two paths pointwise."""
    tau = np.linspace(0.0, 1.0, n_samples)
    return np.concatenate([s.fn(tau) for s in specs])
