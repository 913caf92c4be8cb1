"""Physical constants, unit conventions and quantum-number bookkeeping.

Internally everything runs in natural units (hbar = c = m0 = 1): lengths are
reduced Compton wavelengths, energies are fractions of the rest energy m0*c^2.
Conversion to eV happens only at output boundaries via :func:`convert_energy`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "ALPHA_CODATA",
    "ELECTRON_REST_ENERGY_EV",
    "InvalidStateError",
    "PhysicsConfig",
    "QuantumState",
    "EnergyValue",
    "derive_gamma",
    "make_state",
    "convert_energy",
    "l_of_kappa",
    "j_of_kappa",
]

# CODATA 2018 fine-structure constant and electron rest energy.
ALPHA_CODATA = 7.2973525693e-3
ELECTRON_REST_ENERGY_EV = 510998.95


class InvalidStateError(ValueError):
    """Raised for quantum numbers that do not correspond to a bound state."""


def l_of_kappa(kappa: int) -> int:
    """Orbital quantum number encoded by kappa: l = kappa for kappa > 0, -kappa - 1 otherwise."""
    if kappa == 0:
        raise InvalidStateError("kappa = 0 does not label a Dirac state")
    return kappa if kappa > 0 else -kappa - 1


def j_of_kappa(kappa: int) -> float:
    """Total angular momentum j = |kappa| - 1/2."""
    if kappa == 0:
        raise InvalidStateError("kappa = 0 does not label a Dirac state")
    return abs(kappa) - 0.5


def derive_gamma(kappa: int, alpha: float) -> float:
    """Effective angular exponent sqrt(kappa^2 - alpha^2).

    Governs the r**(gamma-1) small-radius behaviour of the radial amplitudes.
    alpha = 0 is admitted as the free limit (gamma = |kappa|).
    """
    if kappa == 0:
        raise InvalidStateError("kappa = 0 does not label a Dirac state")
    if not 0.0 <= alpha < 1.0:
        raise ValueError(f"alpha must be in [0, 1), got {alpha}")
    if alpha >= abs(kappa):
        raise ValueError(f"alpha = {alpha} >= |kappa| = {abs(kappa)} makes gamma imaginary")
    return math.sqrt(kappa * kappa - alpha * alpha)


@dataclass(frozen=True)
class PhysicsConfig:
    """Dimensional context: fine-structure constant and rest energy.

    alpha = 0 is accepted so the free limit can be tabulated; wave-function
    and residual operations reject it because the decay rate vanishes there.
    """

    alpha: float = ALPHA_CODATA
    rest_energy_ev: float = ELECTRON_REST_ENERGY_EV

    def __post_init__(self):
        if not 0.0 <= self.alpha < 1.0:
            raise ValueError(f"alpha must be in [0, 1), got {self.alpha}")
        if not self.rest_energy_ev > 0.0:
            raise ValueError(f"rest_energy_ev must be positive, got {self.rest_energy_ev}")


@dataclass(frozen=True)
class QuantumState:
    """One bound-state label (n, kappa, m_j) with its derived quantum numbers.

    Built by :func:`make_state`; immutable afterwards.  ``alpha`` records the
    fine-structure constant used to derive ``gamma`` so downstream operations
    can detect configuration mismatches.
    """

    n: int
    kappa: int
    m_j: float
    n_r: int
    l: int
    j: float
    gamma: float
    alpha: float

    @property
    def is_nodeless(self) -> bool:
        """True for n_r = 0 states, whose second radial amplitude vanishes."""
        return self.n_r == 0


def make_state(n: int, kappa: int, m_j: float, config: PhysicsConfig | None = None) -> QuantumState:
    """Validate quantum numbers and populate the derived fields.

    Rejects kappa = 0, |kappa| > n and |m_j| > j.  States with kappa > 0 and
    n_r = 0 are rejected: both eta coefficients of the radial solution vanish
    there, so the would-be wave function is identically zero (the standard
    Dirac-Coulomb exclusion).
    """
    config = config or PhysicsConfig()
    if int(n) != n or n < 1:
        raise InvalidStateError(f"principal quantum number must be a positive integer, got {n}")
    if int(kappa) != kappa or kappa == 0:
        raise InvalidStateError(f"kappa must be a nonzero integer, got {kappa}")
    n = int(n)
    kappa = int(kappa)
    if abs(kappa) > n:
        raise InvalidStateError(f"|kappa| = {abs(kappa)} exceeds n = {n}")
    n_r = n - abs(kappa)
    if kappa > 0 and n_r == 0:
        raise InvalidStateError(
            f"state (n={n}, kappa={kappa}) does not exist: kappa > 0 requires n_r >= 1"
        )
    two_mj = 2.0 * m_j
    if round(two_mj) != two_mj or int(round(two_mj)) % 2 == 0:
        raise InvalidStateError(f"m_j must be a half-odd integer, got {m_j}")
    j = j_of_kappa(kappa)
    if abs(m_j) > j:
        raise InvalidStateError(f"|m_j| = {abs(m_j)} exceeds j = {j}")
    return QuantumState(
        n=n,
        kappa=kappa,
        m_j=float(m_j),
        n_r=n_r,
        l=l_of_kappa(kappa),
        j=j,
        gamma=derive_gamma(kappa, config.alpha),
        alpha=config.alpha,
    )


@dataclass(frozen=True)
class EnergyValue:
    """Total energy E/m0c^2 together with the decay rate lambda = sqrt(1 - E^2).

    Bound states have 0 < value < 1; value = 1 (lambda = 0) appears only in
    the alpha = 0 limit.
    """

    value: float
    lam: float

    def __post_init__(self):
        if not 0.0 < self.value <= 1.0:
            raise ValueError(f"E/m0c^2 must lie in (0, 1], got {self.value}")
        if self.lam < 0.0:
            raise ValueError(f"lambda must be nonnegative, got {self.lam}")
        closure = self.lam * self.lam + self.value * self.value
        if abs(closure - 1.0) > 64.0 * math.ulp(1.0):
            raise ValueError(f"lambda^2 + E^2 = {closure} violates the bound-state relation")


def convert_energy(e: EnergyValue, config: PhysicsConfig) -> tuple[float, float]:
    """Return (total, binding) in eV: total = E * m0c^2, binding = (1 - E) * m0c^2."""
    total = e.value * config.rest_energy_ev
    binding = (1.0 - e.value) * config.rest_energy_ev
    return total, binding


def require_matching_alpha(state: QuantumState, config: PhysicsConfig) -> None:
    """Guard against mixing a state with a config of different alpha."""
    if state.alpha != config.alpha:
        raise ValueError(
            f"state was built with alpha = {state.alpha} but config has alpha = {config.alpha}"
        )
