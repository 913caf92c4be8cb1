"""Bound-state energies from the quantization condition and fine-structure utilities."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import (
    EnergyValue,
    PhysicsConfig,
    QuantumState,
    convert_energy,
    make_state,
    require_matching_alpha,
)

__all__ = [
    "SpectrumRow",
    "energy",
    "quantization_a",
    "fine_structure_splitting",
    "sommerfeld_expansion",
    "spectroscopic_label",
    "valid_kappas",
    "spectrum_table",
]

# s p d f then alphabetical skipping j and the letters already used.
_L_SYMBOLS = "spdfghiklmnoqrtuvwxyz"


def energy(state: QuantumState, config: PhysicsConfig | None = None) -> EnergyValue:
    """Exact bound-state energy E/m0c^2 for one state.

    Evaluated in the cancellation-free form (n_r + gamma) / sqrt((n_r + gamma)^2
    + alpha^2), algebraically identical to [1 + alpha^2/(n_r + gamma)^2]^(-1/2).
    """
    config = config or PhysicsConfig(alpha=state.alpha)
    require_matching_alpha(state, config)
    big_n = state.n_r + state.gamma
    denom = math.hypot(big_n, config.alpha)
    return EnergyValue(value=big_n / denom, lam=config.alpha / denom)


def quantization_a(state: QuantumState, e: EnergyValue) -> float:
    """First Kummer parameter a = gamma - alpha*E/lambda; equals -n_r on the spectrum."""
    return state.gamma - state.alpha * e.value / e.lam


def fine_structure_splitting(
    n: int, kappa_a: int, kappa_b: int, config: PhysicsConfig | None = None
) -> float:
    """E(n, kappa_a) - E(n, kappa_b) in eV."""
    config = config or PhysicsConfig()
    e_a = energy(make_state(n, kappa_a, 0.5, config), config)
    e_b = energy(make_state(n, kappa_b, 0.5, config), config)
    return (e_a.value - e_b.value) * config.rest_energy_ev


def sommerfeld_expansion(n: int, j: float, config: PhysicsConfig | None = None) -> float:
    """O(alpha^4) expansion of E/m0c^2, used only as a validation oracle.

    1 - alpha^2/(2 n^2) - (alpha^4 / (2 n^4)) (n/(j + 1/2) - 3/4).
    """
    config = config or PhysicsConfig()
    if int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    if j < 0.5 or round(2 * j) != 2 * j or int(round(2 * j)) % 2 == 0:
        raise ValueError(f"j must be a positive half-odd integer, got {j}")
    a2 = config.alpha * config.alpha
    return 1.0 - a2 / (2.0 * n * n) - (a2 * a2 / (2.0 * n**4)) * (n / (j + 0.5) - 0.75)


def spectroscopic_label(n: int, l: int, j: float) -> str:
    """Conventional label such as '2p3/2'."""
    sym = _L_SYMBOLS[l] if l < len(_L_SYMBOLS) else f"(l={l})"
    return f"{n}{sym}{int(round(2 * j))}/2"


def valid_kappas(n: int) -> list[int]:
    """All kappa labelling bound states at principal quantum number n, sorted by (|kappa|, kappa)."""
    kappas = []
    for k in range(1, n + 1):
        kappas.append(-k)
        if k < n:  # kappa > 0 with n_r = 0 does not exist
            kappas.append(k)
    return sorted(kappas, key=lambda k: (abs(k), k))


@dataclass(frozen=True)
class SpectrumRow:
    """One line of the bound-state table."""

    n: int
    kappa: int
    l: int
    j: float
    n_r: int
    label: str
    e_over_mc2: float
    lam: float
    binding_ev: float


def spectrum_table(n_max: int, config: PhysicsConfig | None = None) -> list[SpectrumRow]:
    """Rows for every valid (n, kappa) with n <= n_max, sorted by (n, |kappa|, kappa)."""
    config = config or PhysicsConfig()
    if int(n_max) != n_max or n_max < 1:
        raise ValueError(f"n_max must be a positive integer, got {n_max}")
    rows = []
    for n in range(1, int(n_max) + 1):
        for kappa in valid_kappas(n):
            state = make_state(n, kappa, 0.5, config)
            e = energy(state, config)
            _, binding = convert_energy(e, config)
            rows.append(
                SpectrumRow(
                    n=n,
                    kappa=kappa,
                    l=state.l,
                    j=state.j,
                    n_r=state.n_r,
                    label=spectroscopic_label(n, state.l, state.j),
                    e_over_mc2=e.value,
                    lam=e.lam,
                    binding_ev=binding,
                )
            )
    return rows
