"""Truncated two-mode Fock space for a single beam splitter.

States live on the two output modes ``c`` (transmitted) and ``d`` (reflected)
with a cutoff on the *total* photon number. Basis vectors are ordered by
ascending total photon number and, inside a block, by descending ``n_c``::

    (0,0), (1,0), (0,1), (2,0), (1,1), (0,2), ...

The beam splitter acts on creation operators as

    a^dag -> cos(theta) c^dag - sin(theta) d^dag
    b^dag -> sin(theta) c^dag + cos(theta) d^dag

so an input ``|k, m>`` (k photons on ``a``, m on ``b``) is labelled with the
same basis index as the output ``|n_c, n_d>``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

__all__ = [
    "FockCutoff",
    "TwoModeState",
    "PortMixture",
    "ProductMixture",
    "basis_index",
    "basis_states",
    "beam_splitter_matrix",
    "apply_beam_splitter",
    "trace_out_reflected",
    "thermal_mixture",
    "vacuum_mixture",
    "tensor_with_ancilla",
]


@dataclass(frozen=True)
class FockCutoff:
    """Maximum total photon number kept in the two-mode space."""

    n_max: int = 2

    def __post_init__(self):
        if int(self.n_max) != self.n_max or self.n_max < 1:
            raise ValueError(f"n_max must be an integer >= 1, got {self.n_max!r}")

    @property
    def dim(self) -> int:
        return (self.n_max + 1) * (self.n_max + 2) // 2


def _as_cutoff(cutoff: FockCutoff | int) -> FockCutoff:
    return cutoff if isinstance(cutoff, FockCutoff) else FockCutoff(int(cutoff))


def basis_index(n_c: int, n_d: int, cutoff: FockCutoff | int = 2) -> int:
    """Position of ``|n_c, n_d>`` in the canonical ordering."""
    cutoff = _as_cutoff(cutoff)
    if n_c < 0 or n_d < 0 or n_c + n_d > cutoff.n_max:
        raise ValueError(
            f"photon counts ({n_c}, {n_d}) outside cutoff n_max={cutoff.n_max}"
        )
    total = n_c + n_d
    return total * (total + 1) // 2 + n_d


def basis_states(cutoff: FockCutoff | int = 2) -> list[tuple[int, int]]:
    cutoff = _as_cutoff(cutoff)
    return [
        (total - n_d, n_d)
        for total in range(cutoff.n_max + 1)
        for n_d in range(total + 1)
    ]


@dataclass(frozen=True)
class TwoModeState:
    """Pure state on modes (c, d), amplitudes in canonical basis order."""

    cutoff: FockCutoff
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex)
        if amps.shape != (self.cutoff.dim,):
            raise ValueError(
                f"expected {self.cutoff.dim} amplitudes for n_max={self.cutoff.n_max}, "
                f"got shape {amps.shape}"
            )
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def number_state(cls, n_c: int, n_d: int, cutoff: FockCutoff | int = 2) -> TwoModeState:
        cutoff = _as_cutoff(cutoff)
        amps = np.zeros(cutoff.dim, dtype=complex)
        amps[basis_index(n_c, n_d, cutoff)] = 1.0
        return cls(cutoff, amps)

    def amplitude(self, n_c: int, n_d: int) -> complex:
        return complex(self.amplitudes[basis_index(n_c, n_d, self.cutoff)])

    def norm_squared(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)


@dataclass(frozen=True)
class PortMixture:
    """Photon-number distribution of a single mode.

    ``probs[k]`` is the probability of ``k`` photons; ``leaked`` is the mass
    that truncation has dropped so far. The two together always sum to one.
    """

    probs: np.ndarray
    leaked: float = 0.0

    def __post_init__(self):
        probs = np.array(self.probs, dtype=float)
        if probs.ndim != 1 or probs.size == 0:
            raise ValueError("probs must be a non-empty 1-D vector")
        if np.any(probs < 0) or self.leaked < 0:
            raise ValueError("probabilities must be non-negative")
        probs.setflags(write=False)
        object.__setattr__(self, "probs", probs)
        object.__setattr__(self, "leaked", float(self.leaked))

    @property
    def n_max(self) -> int:
        return self.probs.size - 1

    def p(self, k: int) -> float:
        """Probability of exactly ``k`` photons (zero beyond the cutoff)."""
        return float(self.probs[k]) if 0 <= k <= self.n_max else 0.0

    def total(self) -> float:
        return float(self.probs.sum()) + self.leaked


def vacuum_mixture(n_max: int = 1) -> PortMixture:
    probs = np.zeros(n_max + 1)
    probs[0] = 1.0
    return PortMixture(probs)


@lru_cache(maxsize=256)
def _beam_splitter_matrix(theta: float, n_max: int) -> np.ndarray:
    cutoff = FockCutoff(n_max)
    c, s = math.cos(theta), math.sin(theta)
    u = np.zeros((cutoff.dim, cutoff.dim))
    for k, m in basis_states(cutoff):
        col = basis_index(k, m, cutoff)
        in_fact = math.factorial(k) * math.factorial(m)
        # (c a' - s d')^k (s c' + c d')^m |00>, expanded binomially
        for i in range(k + 1):
            a_term = math.comb(k, i) * c**i * (-s) ** (k - i)
            for j in range(m + 1):
                b_term = math.comb(m, j) * s**j * c ** (m - j)
                n_c = i + j
                n_d = k + m - n_c
                out_fact = math.factorial(n_c) * math.factorial(n_d)
                u[basis_index(n_c, n_d, cutoff), col] += (
                    a_term * b_term * math.sqrt(out_fact / in_fact)
                )
    u.setflags(write=False)
    return u


def beam_splitter_matrix(theta: float, cutoff: FockCutoff | int = 2) -> np.ndarray:
    """Real orthogonal matrix of the beam splitter on the truncated basis.

    Column ``basis_index(k, m)`` holds the output for input ``|k, m>``. The
    matrix is block diagonal in total photon number, so truncation never
    loses norm here. The returned array is read-only and cached.
    """
    if not math.isfinite(theta):
        raise ValueError(f"theta must be finite, got {theta!r}")
    return _beam_splitter_matrix(float(theta), _as_cutoff(cutoff).n_max)


def apply_beam_splitter(
    state: TwoModeState, theta: float, unitary: np.ndarray | None = None
) -> TwoModeState:
    """Send ``state`` through a beam splitter of angle ``theta``.

    A precomputed ``unitary`` may be passed to skip the lookup; its shape
    must match the state's cutoff.
    """
    if unitary is None:
        unitary = beam_splitter_matrix(theta, state.cutoff)
    elif unitary.shape != (state.cutoff.dim, state.cutoff.dim):
        raise ValueError(
            f"unitary of shape {unitary.shape} does not match cutoff n_max={state.cutoff.n_max}"
        )
    return TwoModeState(state.cutoff, unitary @ state.amplitudes)


def trace_out_reflected(state: TwoModeState) -> PortMixture:
    """Reduced photon-number distribution of mode ``c``.

    Photon-number conservation makes the reduced state diagonal, so the
    distribution is the whole story.
    """
    n_max = state.cutoff.n_max
    weights = np.abs(state.amplitudes) ** 2
    probs = np.zeros(n_max + 1)
    for idx, (n_c, _) in enumerate(basis_states(state.cutoff)):
        probs[n_c] += weights[idx]
    return PortMixture(probs)


def thermal_mixture(nbar: float, n_max: int = 1, renormalize: bool = False) -> PortMixture:
    """Bose-Einstein distribution ``nbar^k / (1+nbar)^(k+1)`` up to ``n_max`` photons.

    Without ``renormalize`` the tail beyond ``n_max`` is reported as ``leaked``.
    """
    if not nbar >= 0:
        raise ValueError(f"nbar must be >= 0, got {nbar!r}")
    if n_max < 0:
        raise ValueError(f"n_max must be >= 0, got {n_max!r}")
    k = np.arange(n_max + 1)
    probs = nbar**k / (1.0 + nbar) ** (k + 1)
    if renormalize:
        return PortMixture(probs / probs.sum())
    # exact tail of the geometric series
    tail = (nbar / (1.0 + nbar)) ** (n_max + 1)
    return PortMixture(probs, leaked=tail)


@dataclass(frozen=True)
class ProductMixture:
    """Weighted set of two-mode number states ``|n_c, n_d>``.

    ``leaked`` is cumulative: the weights plus ``leaked`` sum to one.
    """

    cutoff: FockCutoff
    weights: dict[tuple[int, int], float] = field(default_factory=dict)
    leaked: float = 0.0

    def total(self) -> float:
        return sum(self.weights.values()) + self.leaked


def tensor_with_ancilla(
    port: PortMixture, ancilla: PortMixture, cutoff: FockCutoff | int = 2
) -> ProductMixture:
    """Product of the port distribution (mode ``a``) and an ancilla (mode ``b``).

    Components whose total photon number exceeds the cutoff are dropped into
    ``leaked``, together with the ancilla's own truncated tail.
    """
    cutoff = _as_cutoff(cutoff)
    weights: dict[tuple[int, int], float] = {}
    dropped = 0.0
    for k, pk in enumerate(port.probs):
        if pk == 0.0:
            continue
        for m, qm in enumerate(ancilla.probs):
            w = pk * qm
            if w == 0.0:
                continue
            if k + m > cutoff.n_max:
                dropped += w
            else:
                weights[(k, m)] = weights.get((k, m), 0.0) + w
    port_mass = float(port.probs.sum())
    leaked = port.leaked + port_mass * ancilla.leaked + dropped
    return ProductMixture(cutoff, weights, leaked)
