"""Quantum-jump trajectories of a photon through a lossy splitter array.

Each splitter is a discrete MCWF step. With the photon present, the jump
probability is ``gamma + sin^2(theta)`` (absorption plus reflection). A jump
sends the state to vacuum and the trajectory stops; otherwise the input
``|10>`` passes unchanged to the next splitter. Because there is a single
photon, ``<sigma+ sigma->`` is just the has-photon flag.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .arrays import zeno_angle
from .rng import DEFAULT_SEED, check_seed, parallel_map, stream
from .stats import EnsembleStats


def jump_probability(gamma: float, theta: float) -> float:
    """Per-splitter jump probability ``gamma + sin^2(theta)``."""
    if not gamma >= 0:
        raise ValueError(f"gamma must be >= 0, got {gamma!r}")
    dp = gamma + math.sin(theta) ** 2
    if dp > 1.0:
        raise ValueError(
            f"gamma + sin^2(theta) = {dp:.6g} exceeds 1; not a valid jump probability"
        )
    return dp


@dataclass(frozen=True)
class McwfSpec:
    n_splitters: int
    gamma: float
    theta: float | None = None
    n_trajectories: int = 5000
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if int(self.n_splitters) != self.n_splitters or self.n_splitters < 1:
            raise ValueError(f"n_splitters must be an integer >= 1, got {self.n_splitters!r}")
        if int(self.n_trajectories) != self.n_trajectories or self.n_trajectories < 1:
            raise ValueError(
                f"n_trajectories must be an integer >= 1, got {self.n_trajectories!r}"
            )
        check_seed(self.seed)
        if self.theta is None:
            object.__setattr__(self, "theta", zeno_angle(self.n_splitters))
        jump_probability(self.gamma, self.theta)

    @property
    def jump_probability(self) -> float:
        return jump_probability(self.gamma, self.theta)


@dataclass(frozen=True)
class TrajectoryRecord:
    """Survival flags ``P1(n)`` for n = 1..N and the 1-based jump position."""

    survival: np.ndarray
    jump_at: Optional[int] = None

    @classmethod
    def from_jump(cls, n_splitters: int, jump_at: Optional[int]) -> TrajectoryRecord:
        survival = np.ones(n_splitters, dtype=np.int8)
        if jump_at is not None:
            survival[jump_at - 1 :] = 0
        survival.setflags(write=False)
        return cls(survival, jump_at)


def run_trajectory(spec: McwfSpec, rng: np.random.Generator) -> TrajectoryRecord:
    """One realisation. Draws stop at the first jump."""
    dp = spec.jump_probability
    for n in range(1, spec.n_splitters + 1):
        if rng.random() < dp:
            return TrajectoryRecord.from_jump(spec.n_splitters, n)
    return TrajectoryRecord.from_jump(spec.n_splitters, None)


def trajectory(spec: McwfSpec, index: int = 0) -> TrajectoryRecord:
    """Trajectory ``index`` of the ensemble defined by ``spec``."""
    return run_trajectory(spec, stream(spec.seed, index))


def run_ensemble(spec: McwfSpec, workers: int = 1) -> EnsembleStats:
    """Per-step mean survival and standard error over ``n_trajectories``.

    Bit-identical for a given seed whatever the worker count.
    """
    records = parallel_map(lambda i: trajectory(spec, i), range(spec.n_trajectories), workers)
    return EnsembleStats.from_samples(np.stack([r.survival for r in records]))


def find_jump_seed(
    spec: McwfSpec, jump_at: int, start: int = 0, limit: int = 100_000
) -> int:
    """Smallest seed >= ``start`` whose first trajectory jumps at ``jump_at``."""
    for seed in range(start, start + limit):
        rec = run_trajectory(spec, stream(seed, 0))
        if rec.jump_at == jump_at:
            return seed
    raise LookupError(f"no seed in [{start}, {start + limit}) jumps at {jump_at}")


def bernoulli_p1(n, gamma: float, theta: float):
    """Exact ensemble mean ``(1 - gamma - sin^2 theta)^n`` of the jump process."""
    return (1.0 - jump_probability(gamma, theta)) ** np.asarray(n, dtype=float)


def analytic_p1_absorption(n, n_splitters: int, gamma: float):
    """Exponential law ``exp(-(gamma + sin^2(pi/2N)) n)``."""
    n = np.asarray(n, dtype=float)
    if np.any(n < 0) or np.any(n > n_splitters):
        raise ValueError(f"step must lie in [0, {n_splitters}]")
    rate = gamma + math.sin(zeno_angle(n_splitters)) ** 2
    return np.exp(-rate * n)
