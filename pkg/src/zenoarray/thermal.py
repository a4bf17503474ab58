"""Single photon through an array whose open ports carry weak thermal light.

The exact path works in the truncated Fock space: at every splitter the
transmitted-port distribution is tensored with a fresh thermal ancilla,
rotated by the beam splitter, and the reflected mode is traced out. The
closed-form single-step coefficients and the ``alpha^N cos^2N(theta)``
law are provided for comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arrays import zeno_angle
from .fock import (
    FockCutoff,
    PortMixture,
    TwoModeState,
    apply_beam_splitter,
    beam_splitter_matrix,
    tensor_with_ancilla,
    thermal_mixture,
    trace_out_reflected,
)


@dataclass(frozen=True)
class ThermalArraySpec:
    n_splitters: int
    nbar: float
    theta: float | None = None
    cutoff: FockCutoff = FockCutoff(2)
    ancilla_n_max: int = 1
    renormalize_ancilla: bool = False

    def __post_init__(self):
        if int(self.n_splitters) != self.n_splitters or self.n_splitters < 1:
            raise ValueError(f"n_splitters must be an integer >= 1, got {self.n_splitters!r}")
        if not self.nbar >= 0 or not math.isfinite(self.nbar):
            raise ValueError(f"nbar must be finite and >= 0, got {self.nbar!r}")
        if self.ancilla_n_max < 0:
            raise ValueError(f"ancilla_n_max must be >= 0, got {self.ancilla_n_max!r}")
        if not isinstance(self.cutoff, FockCutoff):
            object.__setattr__(self, "cutoff", FockCutoff(int(self.cutoff)))
        if self.theta is None:
            object.__setattr__(self, "theta", zeno_angle(self.n_splitters))

    def ancilla(self) -> PortMixture:
        return thermal_mixture(self.nbar, self.ancilla_n_max, self.renormalize_ancilla)

    @property
    def alpha(self) -> float:
        """Vacuum weight of the ancilla."""
        return self.ancilla().p(0)

    @property
    def beta(self) -> float:
        """One-photon weight of the ancilla."""
        return self.ancilla().p(1)


@dataclass(frozen=True)
class StepCoefficients:
    """Photon-number distribution (0, 1, 2) after one thermal splitter."""

    a0: float
    a1: float
    a2: float


def step_coefficients(alpha: float, beta: float, theta: float) -> StepCoefficients:
    if alpha < 0 or beta < 0:
        raise ValueError("alpha and beta must be non-negative")
    c2 = math.cos(theta) ** 2
    s2 = math.sin(theta) ** 2
    both = 2.0 * beta * c2 * s2
    return StepCoefficients(
        a0=alpha * s2 + both,
        a1=alpha * c2 + beta * math.cos(2 * theta) ** 2,
        a2=both,
    )


def propagate_step(
    port: PortMixture, ancilla: PortMixture, theta: float, cutoff: FockCutoff
) -> PortMixture:
    """One splitter: tensor with ``ancilla``, rotate, trace out ``d``."""
    unitary = beam_splitter_matrix(theta, cutoff)
    product = tensor_with_ancilla(port, ancilla, cutoff)
    probs = np.zeros(cutoff.n_max + 1)
    for (k, m), w in product.weights.items():
        out = apply_beam_splitter(TwoModeState.number_state(k, m, cutoff), theta, unitary)
        probs += w * trace_out_reflected(out).probs
    return PortMixture(probs, product.leaked)


def propagate_thermal_array(spec: ThermalArraySpec) -> list[PortMixture]:
    """Distributions at ports ``c_1 .. c_N`` for a photon entering ``a_1``."""
    ancilla = spec.ancilla()
    port = PortMixture(np.eye(spec.cutoff.n_max + 1)[1])
    out = []
    for _ in range(spec.n_splitters):
        port = propagate_step(port, ancilla, spec.theta, spec.cutoff)
        out.append(port)
    return out


def thermal_p1_approx(n_splitters: int, theta: float, alpha: float) -> float:
    """``alpha^N cos^2N(theta)``: ancilla photons ignored entirely."""
    if n_splitters < 1:
        raise ValueError(f"n_splitters must be >= 1, got {n_splitters}")
    if not 0 <= alpha <= 1:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha!r}")
    return (alpha * math.cos(theta) ** 2) ** n_splitters
