"""Per-step ensemble mean and standard error, mergeable across batches."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class EnsembleStats:
    """Running moments of a vector-valued observable.

    ``count``, ``mean`` and ``m2`` (sum of squared deviations) are per step.
    ``stderr`` uses the population variance, which for 0/1 survival data is
    ``sqrt(p (1 - p) / M)``.
    """

    count: np.ndarray
    mean: np.ndarray
    m2: np.ndarray

    @classmethod
    def from_samples(cls, samples) -> EnsembleStats:
        """Statistics of an ``(M, steps)`` array (or 1-D array of scalars)."""
        x = np.asarray(samples, dtype=float)
        if x.ndim == 1:
            x = x[:, None]
        if x.ndim != 2 or x.shape[0] == 0:
            raise ValueError("need a non-empty (samples, steps) array")
        mean = x.mean(axis=0)
        m2 = ((x - mean) ** 2).sum(axis=0)
        count = np.full(x.shape[1], x.shape[0], dtype=np.int64)
        return cls(count, mean, m2)

    @property
    def variance(self) -> np.ndarray:
        return self.m2 / self.count

    @property
    def stderr(self) -> np.ndarray:
        return np.sqrt(np.maximum(self.variance, 0.0) / self.count)

    def merge(self, other: EnsembleStats) -> EnsembleStats:
        """Pool two ensembles (Chan et al. parallel update)."""
        if self.mean.shape != other.mean.shape:
            raise ValueError("cannot merge ensembles with different step counts")
        n = self.count + other.count
        delta = other.mean - self.mean
        mean = self.mean + delta * (other.count / n)
        m2 = self.m2 + other.m2 + delta**2 * (self.count * other.count / n)
        return EnsembleStats(n, mean, m2)

    def __len__(self) -> int:
        return self.mean.size
