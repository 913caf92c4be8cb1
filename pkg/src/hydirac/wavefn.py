"""Closed-form radial amplitudes, the bi-spinor transform, and normalization.

Radial and angular factors are kept separate: both conjugate amplitudes
multiply the same spherical spinor, while the lower bi-spinor component
carries the flipped spinor and a constant phase, stored here as bookkeeping
flags rather than complex arrays.  All stored radial amplitudes are real.

Sign conventions (verified by the residual suite in :mod:`hydirac.verify`):

    psi_a(r) * Y_{kappa m}            with psi_a = sqrt(1+E) (g + gtilde)
    -i * psi_b(r) * Y_{-kappa m}      with psi_b = sqrt(1-E) (g - gtilde)

where g, gtilde are the conjugate radial amplitudes.  The closed forms are
un-normalized; :func:`normalize` supplies the constant by quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial.legendre import leggauss

from . import specfun
from .core import EnergyValue, QuantumState

__all__ = [
    "EtaCoefficients",
    "RadialProfile",
    "PSI_B_PHASE",
    "radial_phi",
    "radial_phi_tilde",
    "radial_phi_derivatives",
    "radial_phi_tilde_derivatives",
    "assemble_bispinor_radials",
    "bispinor_radials_via_eta",
    "conjugate_transform",
    "default_grid",
    "QuadratureSpec",
    "NormalizationResult",
    "QuadratureError",
    "norm_integral",
    "overlap_integral",
    "normalize",
    "tabulate",
]

# Constant phase of the lower bi-spinor component relative to its stored
# real radial amplitude (fixed by the parity relation applied with -kappa).
PSI_B_PHASE = -1j

RADIAL_KINDS = ("phi", "phi_tilde", "psi_a", "psi_b")


@dataclass(frozen=True)
class EtaCoefficients:
    """Radial mixing coefficients eta1 = alpha - kappa*lambda, eta2 = gamma*lambda - alpha*E.

    On the exact spectrum eta2 = -lambda * n_r, which is how it is evaluated
    here (cancellation-free; exactly zero for nodeless states).  eta1 vanishes
    only for the excluded kappa > 0, n_r = 0 labels.
    """

    eta1: float
    eta2: float

    @classmethod
    def from_state(cls, state: QuantumState, e: EnergyValue) -> "EtaCoefficients":
        return cls(eta1=state.alpha - state.kappa * e.lam, eta2=-e.lam * state.n_r)


def _require_positive_radii(r: np.ndarray) -> np.ndarray:
    arr = np.asarray(r, dtype=np.float64)
    if np.any(arr <= 0.0):
        raise ValueError("radii must be strictly positive")
    return arr


def _require_bound(e: EnergyValue) -> None:
    if not e.lam > 0.0:
        raise ValueError("wave functions need a bound state with lambda > 0 (alpha > 0)")


def _envelope(state: QuantumState, e: EnergyValue, r: np.ndarray) -> np.ndarray:
    return np.exp(-e.lam * r) * r ** (state.gamma - 1.0)


def _kummer_args(state: QuantumState) -> tuple[float, float]:
    return -float(state.n_r), 2.0 * state.gamma + 1.0


def radial_phi(state: QuantumState, e: EnergyValue, r):
    """First conjugate amplitude g(r) = exp(-lambda r) r^(gamma-1) F(-n_r, 2 gamma + 1, 2 lambda r)."""
    arr = _require_positive_radii(r)
    _require_bound(e)
    a, b = _kummer_args(state)
    out = _envelope(state, e, arr) * specfun.kummer_m(a, b, 2.0 * e.lam * arr)
    return out if np.ndim(r) else float(out[()])


def radial_phi_tilde(state: QuantumState, e: EnergyValue, r):
    """Second conjugate amplitude (eta2/eta1) exp(-lambda r) r^(gamma-1) F(-n_r + 1, b, rho).

    Identically zero for n_r = 0: quantization makes eta2 exactly zero, so the
    exponentially growing F(1, b, rho) is never evaluated.
    """
    arr = _require_positive_radii(r)
    _require_bound(e)
    if state.n_r == 0:
        out = np.zeros_like(arr)
        return out if np.ndim(r) else 0.0
    eta = EtaCoefficients.from_state(state, e)
    a, b = _kummer_args(state)
    out = (eta.eta2 / eta.eta1) * _envelope(state, e, arr) * specfun.kummer_m(a + 1.0, b, 2.0 * e.lam * arr)
    return out if np.ndim(r) else float(out[()])


def _series_with_derivatives(a: float, b: float, rho: np.ndarray, order: int):
    """F, dF/drho and optionally d2F/drho2 via contiguous relations."""
    f = specfun.kummer_m(a, b, rho)
    df = specfun.kummer_m_derivative(a, b, rho)
    if order < 2:
        return f, df, None
    c2 = a * (a + 1.0) / (b * (b + 1.0))
    d2f = np.zeros_like(rho) if c2 == 0.0 else c2 * specfun.kummer_m(a + 2.0, b + 2.0, rho)
    return f, df, d2f


def _amplitude_derivatives(
    state: QuantumState, e: EnergyValue, r: np.ndarray, a: float, b: float, prefactor: float, order: int
):
    """prefactor * envelope * F and its first (and second) radial derivatives."""
    rho = 2.0 * e.lam * r
    f, df, d2f = _series_with_derivatives(a, b, rho, order)
    env = prefactor * _envelope(state, e, r)
    c = (state.gamma - 1.0) / r - e.lam
    g = env * f
    gp = env * (c * f + 2.0 * e.lam * df)
    if order < 2:
        return g, gp, None
    cpp = c * c - (state.gamma - 1.0) / (r * r)
    gpp = env * (cpp * f + 4.0 * e.lam * c * df + 4.0 * e.lam * e.lam * d2f)
    return g, gp, gpp


def radial_phi_derivatives(state: QuantumState, e: EnergyValue, r, order: int = 2):
    """(g, g', g'') from the Kummer contiguous relations (g'' is None for order=1)."""
    arr = _require_positive_radii(np.atleast_1d(r))
    _require_bound(e)
    a, b = _kummer_args(state)
    return _amplitude_derivatives(state, e, arr, a, b, 1.0, order)


def radial_phi_tilde_derivatives(state: QuantumState, e: EnergyValue, r, order: int = 2):
    """(gtilde, gtilde', gtilde''), identically zero for nodeless states."""
    arr = _require_positive_radii(np.atleast_1d(r))
    _require_bound(e)
    if state.n_r == 0:
        z = np.zeros_like(arr)
        return z, z.copy(), (z.copy() if order >= 2 else None)
    eta = EtaCoefficients.from_state(state, e)
    a, b = _kummer_args(state)
    return _amplitude_derivatives(state, e, arr, a + 1.0, b, eta.eta2 / eta.eta1, order)


def assemble_bispinor_radials(state: QuantumState, e: EnergyValue, r):
    """Radial amplitudes of the bi-spinor: (sqrt(1+E)(g + gt), sqrt(1-E)(g - gt)).

    The factor -i and the flipped spinor Y_{-kappa m} of the lower component
    are bookkeeping flags (:data:`PSI_B_PHASE`), not stored values.
    """
    g = np.atleast_1d(radial_phi(state, e, r))
    gt = np.atleast_1d(radial_phi_tilde(state, e, r))
    psi_a = math.sqrt(1.0 + e.value) * (g + gt)
    psi_b = math.sqrt(1.0 - e.value) * (g - gt)
    if np.ndim(r) == 0:
        return float(psi_a[0]), float(psi_b[0])
    return psi_a, psi_b


def bispinor_radials_via_eta(state: QuantumState, e: EnergyValue, r):
    """Same amplitudes through the eta-weighted series combination.

    (1/eta1) [eta1 F(a, b, rho) +/- eta2 F(a+1, b, rho)] times the envelope;
    an independent construction route used as a self-consistency check.
    """
    arr = _require_positive_radii(np.atleast_1d(r))
    _require_bound(e)
    eta = EtaCoefficients.from_state(state, e)
    a, b = _kummer_args(state)
    rho = 2.0 * e.lam * arr
    f1 = specfun.kummer_m(a, b, rho)
    f2 = np.zeros_like(arr) if state.n_r == 0 else specfun.kummer_m(a + 1.0, b, rho)
    env = _envelope(state, e, arr)
    psi_a = math.sqrt(1.0 + e.value) * env * (eta.eta1 * f1 + eta.eta2 * f2) / eta.eta1
    psi_b = math.sqrt(1.0 - e.value) * env * (eta.eta1 * f1 - eta.eta2 * f2) / eta.eta1
    if np.ndim(r) == 0:
        return float(psi_a[0]), float(psi_b[0])
    return psi_a, psi_b


def conjugate_transform(psi_a_radial, psi_b_radial, e: EnergyValue):
    """Invert the bi-spinor assembly back to the conjugate amplitudes.

    phi        = [psi_a / sqrt(1+E) + psi_b / sqrt(1-E)] / 2
    phi_tilde  = [psi_a / sqrt(1+E) - psi_b / sqrt(1-E)] / 2

    The relative sign is fixed by the parity relation applied with -kappa
    (sigma.rhat Y_{-kappa m} = -Y_{kappa m}); together with
    :func:`assemble_bispinor_radials` this is an exact mutual inverse.
    """
    if not 0.0 < e.value < 1.0:
        raise ValueError("conjugate transform requires a bound state with 0 < E < 1")
    sa = np.asarray(psi_a_radial, dtype=np.float64) / math.sqrt(1.0 + e.value)
    sb = np.asarray(psi_b_radial, dtype=np.float64) / math.sqrt(1.0 - e.value)
    return 0.5 * (sa + sb), 0.5 * (sa - sb)


def default_grid(state: QuantumState, points: int = 2000) -> np.ndarray:
    """Log-spaced radial grid from 1e-3/alpha to 50 n^2/alpha Compton lengths."""
    if points < 2:
        raise ValueError("grid needs at least 2 points")
    if not state.alpha > 0.0:
        raise ValueError("the alpha = 0 free limit has no bound-state length scale")
    return np.geomspace(1e-3 / state.alpha, 50.0 * state.n * state.n / state.alpha, points)


@dataclass(frozen=True)
class RadialProfile:
    """A sampled radial amplitude with its provenance and bookkeeping flags."""

    state: QuantumState
    kind: str
    grid: np.ndarray
    values: np.ndarray
    normalization: float = 1.0
    phase: complex = field(default=1.0 + 0.0j)
    angular_kappa: int = 0

    def __post_init__(self):
        if self.kind not in RADIAL_KINDS:
            raise ValueError(f"kind must be one of {RADIAL_KINDS}, got {self.kind!r}")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("radial profile contains non-finite values")
        if np.any(np.diff(self.grid) <= 0.0):
            raise ValueError("grid must be strictly increasing")


def tabulate(
    state: QuantumState, e: EnergyValue, kind: str, grid: np.ndarray, normalization: float = 1.0
) -> RadialProfile:
    """Sample one radial amplitude on a grid and package it with its flags."""
    grid = _require_positive_radii(grid)
    if kind == "phi":
        values = radial_phi(state, e, grid)
        phase, ang = 1.0 + 0.0j, state.kappa
    elif kind == "phi_tilde":
        values = radial_phi_tilde(state, e, grid)
        phase, ang = 1.0 + 0.0j, state.kappa
    elif kind == "psi_a":
        values = assemble_bispinor_radials(state, e, grid)[0]
        phase, ang = 1.0 + 0.0j, state.kappa
    elif kind == "psi_b":
        values = assemble_bispinor_radials(state, e, grid)[1]
        phase, ang = PSI_B_PHASE, -state.kappa
    else:
        raise ValueError(f"kind must be one of {RADIAL_KINDS}, got {kind!r}")
    return RadialProfile(
        state=state,
        kind=kind,
        grid=grid,
        values=normalization * values,
        normalization=normalization,
        phase=phase,
        angular_kappa=ang,
    )


class QuadratureError(RuntimeError):
    """Normalization quadrature failed to reach the required error bound."""

    def __init__(self, message: str, integral: float, error_bound: float):
        self.integral = integral
        self.error_bound = error_bound
        super().__init__(message)


@dataclass(frozen=True)
class QuadratureSpec:
    """Composite Gauss-Legendre rule on log-spaced panels over [r_min, r_max]."""

    r_min: float
    r_max: float
    panels: int = 240
    order: int = 16

    def __post_init__(self):
        if not 0.0 < self.r_min < self.r_max:
            raise ValueError("need 0 < r_min < r_max")
        if self.panels < 1 or self.order < 2:
            raise ValueError("need panels >= 1 and order >= 2")

    @classmethod
    def for_state(cls, state: QuantumState, **overrides) -> "QuadratureSpec":
        defaults = dict(
            r_min=1e-6 / state.alpha,
            r_max=50.0 * state.n * state.n / state.alpha,
        )
        defaults.update(overrides)
        return cls(**defaults)

    def nodes_and_weights(self) -> tuple[np.ndarray, np.ndarray]:
        """Nodes r_i and weights for integrals of the form \\int f(r) dr."""
        x, w = leggauss(self.order)
        edges = np.linspace(math.log(self.r_min), math.log(self.r_max), self.panels + 1)
        mid = 0.5 * (edges[:-1] + edges[1:])
        half = 0.5 * np.diff(edges)
        t = (mid[:, None] + half[:, None] * x[None, :]).ravel()
        r = np.exp(t)
        # d r = r d t absorbs the log-space substitution
        weights = (half[:, None] * w[None, :]).ravel() * r
        return r, weights


@dataclass(frozen=True)
class NormalizationResult:
    """Normalization constant with the achieved integral and its error bound."""

    constant: float
    integral: float
    error_bound: float


def norm_integral(
    state: QuantumState,
    e: EnergyValue,
    spec: QuadratureSpec,
    amplitude_scale: float = 1.0,
) -> float:
    """Quadrature of integral (psi_a^2 + psi_b^2) r^2 dr over [r_min, r_max]."""
    r, w = spec.nodes_and_weights()
    psi_a, psi_b = assemble_bispinor_radials(state, e, r)
    psi_a = amplitude_scale * psi_a
    psi_b = amplitude_scale * psi_b
    return float(np.sum(w * (psi_a * psi_a + psi_b * psi_b) * r * r))


def overlap_integral(
    state_1: QuantumState,
    e_1: EnergyValue,
    state_2: QuantumState,
    e_2: EnergyValue,
    spec: QuadratureSpec | None = None,
    norm_1: float = 1.0,
    norm_2: float = 1.0,
) -> float:
    """Radial overlap integral (psi_a psi_a' + psi_b psi_b') r^2 dr of two states.

    Vanishes for distinct states sharing kappa once both are normalized.
    """
    if spec is None:
        wide = max(state_1.n, state_2.n)
        spec = QuadratureSpec(
            r_min=1e-6 / state_1.alpha, r_max=50.0 * wide * wide / state_1.alpha
        )
    r, w = spec.nodes_and_weights()
    a1, b1 = assemble_bispinor_radials(state_1, e_1, r)
    a2, b2 = assemble_bispinor_radials(state_2, e_2, r)
    return float(norm_1 * norm_2 * np.sum(w * (a1 * a2 + b1 * b2) * r * r))


def normalize(
    state: QuantumState,
    e: EnergyValue,
    spec: QuadratureSpec | None = None,
    amplitude_scale: float = 1.0,
    error_tolerance: float = 1e-9,
) -> NormalizationResult:
    """Constant N such that the scaled bi-spinor radials integrate to one.

    The integral is evaluated twice (the second time with doubled panels and
    higher order); their difference is the reported error bound, and exceeding
    ``error_tolerance`` relative raises :class:`QuadratureError`.
    """
    _require_bound(e)
    spec = spec or QuadratureSpec.for_state(state)
    min_r_max = 25.0 * state.n * state.n / state.alpha
    if spec.r_max < min_r_max:
        raise ValueError(
            f"r_max = {spec.r_max} truncates the integrand tail; need >= {min_r_max}"
        )
    coarse = norm_integral(state, e, spec, amplitude_scale)
    refined_spec = QuadratureSpec(spec.r_min, spec.r_max, 2 * spec.panels, spec.order + 8)
    refined = norm_integral(state, e, refined_spec, amplitude_scale)
    err = abs(refined - coarse)
    if not refined > 0.0 or not np.isfinite(refined):
        raise QuadratureError(f"norm integral is not positive/finite: {refined}", refined, err)
    if err > error_tolerance * refined:
        raise QuadratureError(
            f"quadrature error bound {err / refined:.3e} exceeds {error_tolerance:.1e}",
            refined,
            err,
        )
    return NormalizationResult(constant=1.0 / math.sqrt(refined), integral=refined, error_bound=err)
