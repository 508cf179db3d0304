"""Spin coherent states on the qubit chain and Poincare-sphere grids."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np


@dataclass(frozen=True)
class CoherentSpec:
    """Polar angle theta in [0, pi], azimuth phi in [0, 2*pi), radians."""

    theta: float
    phi: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.theta <= math.pi:
            raise ValueError(f"theta {self.theta} outside [0, pi]")
        if not 0.0 <= self.phi < 2.0 * math.pi:
            raise ValueError(f"phi {self.phi} outside [0, 2*pi)")

    @property
    def hemisphere(self) -> str:
        return "N" if self.theta <= math.pi / 2.0 else "S"


def build_coherent_state(spec: CoherentSpec, n_qubits: int) -> np.ndarray:
    """Product state with per-qubit amplitudes (cos(theta/2), sin(theta/2) e^{i phi}).

    The amplitude on basis index b depends only on its Hamming weight w:
    cos(theta/2)^(N-w) * (sin(theta/2) e^{i phi})^w.
    """
    if n_qubits < 1:
        raise ValueError("n_qubits must be >= 1")
    dim = 1 << n_qubits
    w = np.bitwise_count(np.arange(dim, dtype=np.uint64)).astype(np.int64)
    c = math.cos(spec.theta / 2.0)
    s = math.sin(spec.theta / 2.0)
    return (c ** (n_qubits - w)) * (s**w) * np.exp(1j * spec.phi * w)


def coherent_overlap(a: CoherentSpec, b: CoherentSpec, n_qubits: int) -> complex:
    """Closed-form <a|b> for N-qubit coherent states."""
    half_a, half_b = a.theta / 2.0, b.theta / 2.0
    single = math.cos(half_a) * math.cos(half_b) + (
        math.sin(half_a) * math.sin(half_b) * np.exp(1j * (b.phi - a.phi))
    )
    return complex(single**n_qubits)


@dataclass(frozen=True)
class SphereGrid:
    theta_min: float
    theta_max: float
    theta_step: float
    phi_min: float
    phi_max: float
    phi_step: float

    def __post_init__(self) -> None:
        if self.theta_step <= 0 or self.phi_step <= 0:
            raise ValueError("grid steps must be positive")

    @cached_property
    def thetas(self) -> tuple[float, ...]:
        return _axis_values(self.theta_min, self.theta_max, self.theta_step)

    @cached_property
    def phis(self) -> tuple[float, ...]:
        return _axis_values(self.phi_min, self.phi_max, self.phi_step)


def _axis_values(lo: float, hi: float, step: float) -> tuple[float, ...]:
    # Endpoint rule: include lo + i*step while it does not exceed hi beyond
    # 1e-9 of a step, so accumulated float error never drops or adds a point.
    values = []
    i = 0
    while (v := lo + i * step) <= hi + 1e-9 * step:
        values.append(v)
        i += 1
    return tuple(values)


def enumerate_grid(grid: SphereGrid) -> list[CoherentSpec]:
    """Theta-major, then phi; pole rows are kept even though degenerate."""
    if not grid.thetas or not grid.phis:
        raise ValueError("empty grid range")
    return [CoherentSpec(t, p) for t in grid.thetas for p in grid.phis]
