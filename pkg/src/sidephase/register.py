"""Coherent single-qubit errors across an ensemble register.

A small real error vector e = (ex, ey, ez) perturbs the identity into the
exact unitary U = (I + i e.sigma)/sqrt(1 + |e|^2).  Applied to |0>, it
mixes in |1> with probability p = (ex^2 + ey^2)/(1 + |e|^2); averaging
over a register whose members drew different e gives a partially
decohered mean state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .qubit import DensityMatrix, fidelity

__all__ = [
    "ErrorSampler",
    "EnsembleErrorReport",
    "error_unitary",
    "perturbed_ground_state",
    "error_probability",
    "error_phase",
    "ground_fidelity",
    "ensemble_average_state",
]

GROUND = DensityMatrix(1.0 + 0.0j, 0.0j, 0.0j, 0.0j)


def _norm_factor(e: tuple[float, float, float]) -> float:
    ex, ey, ez = e
    return 1.0 + ex * ex + ey * ey + ez * ez


def error_unitary(e: tuple[float, float, float]) -> np.ndarray:
    """(I + i (ex sx + ey sy + ez sz)) / sqrt(1 + |e|^2), exactly unitary."""
    ex, ey, ez = e
    scale = 1.0 / math.sqrt(_norm_factor(e))
    return scale * np.array(
        [
            [1.0 + 1j * ez, 1j * ex + ey],
            [1j * ex - ey, 1.0 - 1j * ez],
        ]
    )


def perturbed_ground_state(e: tuple[float, float, float]) -> DensityMatrix:
    """U |0><0| U-dagger as a validated density matrix."""
    column = error_unitary(e)[:, 0]
    rho = np.outer(column, column.conj())
    return DensityMatrix(rho[0, 0], rho[0, 1], rho[1, 0], rho[1, 1])


def error_probability(e: tuple[float, float, float]) -> float:
    """Excited-state admixture p = (ex^2 + ey^2)/(1 + |e|^2)."""
    ex, ey, _ = e
    return (ex * ex + ey * ey) / _norm_factor(e)


def error_phase(e: tuple[float, float, float]) -> float:
    """Transverse-component phase, atan2(ex ey + ez, ex ez - ey).

    Defined as 0 when both arguments vanish (purely x-type errors).
    """
    ex, ey, ez = e
    num = ex * ey + ez
    den = ex * ez - ey
    if num == 0.0 and den == 0.0:
        return 0.0
    return math.atan2(num, den)


def ground_fidelity(e: tuple[float, float, float]) -> float:
    """Overlap of the perturbed state with |0>; equals 1 - p."""
    return fidelity(perturbed_ground_state(e), GROUND)


@dataclass(frozen=True)
class ErrorSampler:
    """Zero-mean Gaussian error vectors with per-axis widths sigma.

    Register copy i draws from its own stream spawned from (seed, i), the
    same splitting scheme the trajectory simulator uses, so sampling can
    be partitioned arbitrarily without changing any draw.
    """

    sigma: tuple[float, float, float]
    seed: int

    def __post_init__(self) -> None:
        if any(s < 0.0 for s in self.sigma):
            raise ValueError("sigma components must be nonnegative")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must fit in 64 bits")

    def sample(self, index: int) -> tuple[float, float, float]:
        seq = np.random.SeedSequence(entropy=self.seed, spawn_key=(index,))
        draws = np.random.default_rng(seq).standard_normal(3)
        return (
            self.sigma[0] * draws[0],
            self.sigma[1] * draws[1],
            self.sigma[2] * draws[2],
        )


@dataclass(frozen=True)
class EnsembleErrorReport:
    """Register-averaged state and error-probability statistics."""

    state: DensityMatrix
    n: int
    mean_error_probability: float
    stderr_error_probability: float
    offdiag_magnitude: float

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "mean_p": self.mean_error_probability,
            "stderr_p": self.stderr_error_probability,
            "avg_offdiag_magnitude": self.offdiag_magnitude,
            "diag": [self.state.rho00.real, self.state.rho11.real],
        }


def ensemble_average_state(sampler: ErrorSampler, n: int) -> EnsembleErrorReport:
    """Average n perturbed ground states drawn through the sampler.

    Slots are index-addressed and the reduction is a fixed-order pass,
    mirroring the trajectory ensemble.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    entries = np.empty((n, 2, 2), dtype=complex)
    probabilities = np.empty(n)
    for i in range(n):
        e = sampler.sample(i)
        state = perturbed_ground_state(e)
        entries[i] = state.as_rows()
        probabilities[i] = error_probability(e)
    mean_state = entries.mean(axis=0)
    # enforce exact Hermiticity against rounding before validation
    rho01 = 0.5 * (mean_state[0, 1] + mean_state[1, 0].conjugate())
    averaged = DensityMatrix(
        mean_state[0, 0], rho01, rho01.conjugate(), mean_state[1, 1]
    )
    ddof = 1 if n > 1 else 0
    return EnsembleErrorReport(
        state=averaged,
        n=n,
        mean_error_probability=float(probabilities.mean()),
        stderr_error_probability=float(
            probabilities.std(ddof=ddof) / math.sqrt(n)
        ),
        offdiag_magnitude=abs(rho01),
    )
