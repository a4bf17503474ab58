"""Transmission of a single photon through ideal and dispersed arrays.

An array of ``N`` splitters with angles ``theta_j`` passes the photon with
probability ``prod_j cos^2(theta_j)``. The ideal choice is
``theta = pi / 2N`` for every splitter; the dispersed array draws each angle
from a normal distribution centred there.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .rng import DEFAULT_SEED, check_seed, parallel_map, stream
from .stats import EnsembleStats


def zeno_angle(n_splitters: int) -> float:
    """The angle ``pi / 2N`` that makes the array transparent as N grows."""
    if n_splitters < 1:
        raise ValueError(f"n_splitters must be >= 1, got {n_splitters}")
    return math.pi / (2 * n_splitters)


def ideal_p1(n_splitters: int, theta: float | None = None) -> float:
    """``cos(theta)^(2N)``, with ``theta = pi/2N`` unless given."""
    if n_splitters < 1:
        raise ValueError(f"n_splitters must be >= 1, got {n_splitters}")
    if theta is None:
        theta = zeno_angle(n_splitters)
    return math.cos(theta) ** (2 * n_splitters)


@dataclass(frozen=True)
class DispersionSpec:
    n_splitters: int
    sigma: float
    n_samples: int = 5000
    seed: int = DEFAULT_SEED
    mean_theta: float | None = None

    def __post_init__(self):
        if int(self.n_splitters) != self.n_splitters or self.n_splitters < 1:
            raise ValueError(f"n_splitters must be an integer >= 1, got {self.n_splitters!r}")
        if not self.sigma >= 0 or not math.isfinite(self.sigma):
            raise ValueError(f"sigma must be finite and >= 0, got {self.sigma!r}")
        if int(self.n_samples) != self.n_samples or self.n_samples < 1:
            raise ValueError(f"n_samples must be an integer >= 1, got {self.n_samples!r}")
        check_seed(self.seed)
        if self.mean_theta is None:
            object.__setattr__(self, "mean_theta", zeno_angle(self.n_splitters))


def sample_thetas(spec: DispersionSpec, rng: np.random.Generator) -> np.ndarray:
    """Draw one angle per splitter. Negative draws are kept; cos^2 is even."""
    if spec.sigma == 0:
        return np.full(spec.n_splitters, spec.mean_theta)
    return rng.normal(spec.mean_theta, spec.sigma, size=spec.n_splitters)


def dispersion_p1(thetas) -> float:
    thetas = np.asarray(thetas, dtype=float)
    if thetas.size == 0:
        raise ValueError("need at least one angle")
    return float(np.prod(np.cos(thetas) ** 2))


def dispersion_ensemble(spec: DispersionSpec, workers: int = 1) -> EnsembleStats:
    """Mean and standard error of the end-of-array probability over samples.

    Sample ``i`` always uses stream ``(seed, i)``.
    """

    def one(i: int) -> float:
        return dispersion_p1(sample_thetas(spec, stream(spec.seed, i)))

    values = parallel_map(one, range(spec.n_samples), workers)
    return EnsembleStats.from_samples(np.array(values))


def dispersion_expectation(n_splitters: int, sigma: float) -> float:
    """Closed-form ensemble mean for angles ~ Normal(pi/2N, sigma^2).

    Uses ``E[cos 2theta] = cos(2 theta_bar) exp(-2 sigma^2)`` per splitter.
    """
    if n_splitters < 1:
        raise ValueError(f"n_splitters must be >= 1, got {n_splitters}")
    if not sigma >= 0:
        raise ValueError(f"sigma must be >= 0, got {sigma!r}")
    per_splitter = 0.5 * (1.0 + math.cos(math.pi / n_splitters) * math.exp(-2.0 * sigma**2))
    return per_splitter**n_splitters
