"""Spherical harmonics, spin-orbital coupling and spherical spinors.

Conventions are pinned once and verified by the test suite: Condon-Shortley
phase in the harmonics, the standard 1/2 (x) l coupling table, and spinor
component order (m_s = +1/2 on top).  In this convention the parity relation
reads (sigma . rhat) Y_{kappa m} = -Y_{-kappa m}.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import InvalidStateError, j_of_kappa, l_of_kappa

__all__ = [
    "L_MAX",
    "spherical_harmonic",
    "cg_coefficient",
    "spherical_spinor",
    "SphericalSpinor",
    "apply_sigma_dot_rhat",
    "sigma_dot_L_eigenvalue",
    "AngularOperatorResult",
    "operator_checks",
]

L_MAX = 25


def _norm_assoc_legendre(l: int, m: int, x: np.ndarray) -> np.ndarray:
    """Fully normalized associated Legendre P̄_l^m(x), m >= 0.

    Normalized so that Y_lm(theta, phi) = P̄_l^m(cos theta) exp(i m phi);
    the Condon-Shortley sign lives in the diagonal (m, m) step.  Stable
    upward recurrence in l.
    """
    s2 = np.maximum(1.0 - x * x, 0.0)
    s = np.sqrt(s2)
    # diagonal climb to (m, m)
    pmm = np.full_like(x, np.sqrt(1.0 / (4.0 * np.pi)))
    for k in range(1, m + 1):
        pmm = -np.sqrt((2.0 * k + 1.0) / (2.0 * k)) * s * pmm
    if l == m:
        return pmm
    pm1 = np.sqrt(2.0 * m + 3.0) * x * pmm
    if l == m + 1:
        return pm1
    for ll in range(m + 2, l + 1):
        a = np.sqrt((4.0 * ll * ll - 1.0) / (ll * ll - m * m))
        b = np.sqrt(((ll - 1.0) ** 2 - m * m) / (4.0 * (ll - 1.0) ** 2 - 1.0))
        pmm, pm1 = pm1, a * (x * pm1 - b * pmm)
    return pm1


def spherical_harmonic(l: int, m: int, theta, phi):
    """Orthonormal spherical harmonic Y_lm with Condon-Shortley phase.

    Vectorized over theta/phi; scalar inputs give a complex scalar.
    Supported range l <= 25.
    """
    if int(l) != l or l < 0:
        raise ValueError(f"l must be a nonnegative integer, got {l}")
    if l > L_MAX:
        raise ValueError(f"l = {l} exceeds the supported range l <= {L_MAX}")
    if int(m) != m or abs(m) > l:
        raise ValueError(f"m = {m} invalid for l = {l}")
    l, m = int(l), int(m)
    theta = np.asarray(theta, dtype=np.float64)
    phi = np.asarray(phi, dtype=np.float64)
    scalar = theta.ndim == 0 and phi.ndim == 0
    theta, phi = np.atleast_1d(theta), np.atleast_1d(phi)
    mm = abs(m)
    val = _norm_assoc_legendre(l, mm, np.cos(theta)) * np.exp(1j * mm * phi)
    if m < 0:
        val = (-1.0) ** mm * np.conj(val)
    return complex(val[0]) if scalar else val


def cg_coefficient(l: int, j: float, m_j: float, m_s: float) -> float:
    """Clebsch-Gordan coefficient <l, m_j - m_s; 1/2, m_s | j, m_j> for 1/2 (x) l.

    Closed-form table: for j = l + 1/2 the m_s = +1/2 entry is
    sqrt((l + m_j + 1/2) / (2l + 1)), and so on.
    """
    if int(l) != l or l < 0:
        raise ValueError(f"l must be a nonnegative integer, got {l}")
    if m_s not in (0.5, -0.5):
        raise ValueError(f"m_s must be +/-1/2, got {m_s}")
    if abs(m_j) > j:
        raise ValueError(f"|m_j| = {abs(m_j)} exceeds j = {j}")
    ll1 = 2.0 * l + 1.0
    if j == l + 0.5:
        if m_s > 0:
            return float(np.sqrt((l + m_j + 0.5) / ll1))
        return float(np.sqrt((l - m_j + 0.5) / ll1))
    if j == l - 0.5:
        if m_s > 0:
            return -float(np.sqrt((l - m_j + 0.5) / ll1))
        return float(np.sqrt((l + m_j + 0.5) / ll1))
    raise ValueError(f"(l, j) = ({l}, {j}) is not a valid 1/2 (x) l coupling")


def _spinor_coefficients(kappa: int, m_j: float) -> tuple[int, float, float]:
    l = l_of_kappa(kappa)
    j = j_of_kappa(kappa)
    if abs(m_j) > j:
        raise InvalidStateError(f"|m_j| = {abs(m_j)} exceeds j = {j} for kappa = {kappa}")
    c_up = cg_coefficient(l, j, m_j, +0.5) if abs(m_j - 0.5) <= l else 0.0
    c_dn = cg_coefficient(l, j, m_j, -0.5) if abs(m_j + 0.5) <= l else 0.0
    return l, c_up, c_dn


def spherical_spinor(kappa: int, m_j: float, theta, phi) -> np.ndarray:
    """Two-component spherical spinor Y_{kappa m_j}(theta, phi).

    Upper component carries m = m_j - 1/2, lower m = m_j + 1/2, both with the
    orbital quantum number determined by kappa.  Returns shape (2, ...).
    """
    l, c_up, c_dn = _spinor_coefficients(kappa, m_j)
    theta_a = np.atleast_1d(np.asarray(theta, dtype=np.float64))
    phi_a = np.atleast_1d(np.asarray(phi, dtype=np.float64))
    theta_b, phi_b = np.broadcast_arrays(theta_a, phi_a)
    up = np.zeros(theta_b.shape, dtype=complex)
    dn = np.zeros(theta_b.shape, dtype=complex)
    if c_up != 0.0:
        up = c_up * spherical_harmonic(l, int(m_j - 0.5), theta_b, phi_b).reshape(theta_b.shape)
    if c_dn != 0.0:
        dn = c_dn * spherical_harmonic(l, int(m_j + 0.5), theta_b, phi_b).reshape(theta_b.shape)
    out = np.stack([up, dn])
    if np.ndim(theta) == 0 and np.ndim(phi) == 0:
        return out[:, 0]
    return out


@dataclass(frozen=True)
class SphericalSpinor:
    """Callable (theta, phi) -> two-component complex amplitude for fixed (kappa, m_j)."""

    kappa: int
    m_j: float

    def __post_init__(self):
        _spinor_coefficients(self.kappa, self.m_j)

    def __call__(self, theta, phi) -> np.ndarray:
        return spherical_spinor(self.kappa, self.m_j, theta, phi)


def apply_sigma_dot_rhat(values: np.ndarray, theta, phi) -> np.ndarray:
    """Multiply a two-component amplitude by the unit radial spin matrix.

    The matrix [[cos t, sin t e^{-i p}], [sin t e^{i p}, -cos t]] squares to
    the identity; on spherical spinors it realizes the parity flip
    kappa -> -kappa with an overall minus sign.
    """
    values = np.asarray(values)
    ct = np.cos(np.asarray(theta, dtype=np.float64))
    st = np.sin(np.asarray(theta, dtype=np.float64))
    ep = np.exp(1j * np.asarray(phi, dtype=np.float64))
    up, dn = values[0], values[1]
    return np.stack([ct * up + st / ep * dn, st * ep * up - ct * dn])


def sigma_dot_L_eigenvalue(kappa: int) -> int:
    """Eigenvalue of sigma . L on Y_{kappa m_j}, in units of hbar: -(1 + kappa)."""
    if kappa == 0:
        raise InvalidStateError("kappa = 0 does not label a Dirac state")
    return -(1 + kappa)


@dataclass(frozen=True)
class AngularOperatorResult:
    """Measured eigenvalue / relation residual for one angular operator."""

    operator: str
    measured: float
    expected: float
    residual: float
    tolerance: float
    passed: bool


def _result(op: str, measured: float, expected: float, tol: float) -> AngularOperatorResult:
    res = abs(measured - expected)
    return AngularOperatorResult(op, measured, expected, res, tol, res <= tol)


def operator_checks(kappa: int, m_j: float, tol: float = 1e-12) -> list[AngularOperatorResult]:
    """Eigenvalue checks for L^2, J_z, J^2, K and K^2 in the coefficient algebra.

    Acts on the harmonic expansion of Y_{kappa m_j} rather than by numerical
    differentiation: L^2 and J_z = L_z + S_z multiply basis terms by exact
    eigenvalues; J^2 is applied through its 2x2 block on the two coupled
    components.  (The spinor is a J_z eigenfunction, not an L_z one.)
    """
    l, c_up, c_dn = _spinor_coefficients(kappa, m_j)
    j = j_of_kappa(kappa)
    sig_l = sigma_dot_L_eigenvalue(kappa)

    # J^2 = L^2 + S^2 + 2 L_z S_z + L+S- + L-S+ on the coupled pair
    ll = float(l * (l + 1))
    d1 = ll + 0.75 + (m_j - 0.5)
    d2 = ll + 0.75 - (m_j + 0.5)
    off = np.sqrt(max(ll - (m_j - 0.5) * (m_j + 0.5), 0.0))
    v = np.array([c_up, c_dn])
    j2_measured = float(v @ (np.array([[d1, off], [off, d2]]) @ v))

    # every basis term of the expansion carries L_z + S_z eigenvalue m_l + m_s
    jz_terms = []
    if c_up != 0.0:
        jz_terms.append((m_j - 0.5) + 0.5)
    if c_dn != 0.0:
        jz_terms.append((m_j + 0.5) - 0.5)
    jz_measured = sum(jz_terms) / len(jz_terms)

    # sigma.L = J^2 - L^2 - S^2 gives an independent route to its eigenvalue
    sig_l_from_j = j * (j + 1.0) - ll - 0.75

    # parity relation residual max |(sigma.rhat) Y_{kappa m} + Y_{-kappa m}|
    theta = np.linspace(0.05, np.pi - 0.05, 16)
    phi = np.linspace(0.0, 2.0 * np.pi, 16, endpoint=False)
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    flipped = apply_sigma_dot_rhat(spherical_spinor(kappa, m_j, tt, pp), tt, pp)
    parity_residual = float(np.max(np.abs(flipped + spherical_spinor(-kappa, m_j, tt, pp))))

    checks = [
        _result("L^2", ll, ll, tol),
        _result("J_z", jz_measured, m_j, tol),
        _result("J^2", j2_measured, j * (j + 1.0), tol),
        _result("sigma.L", sig_l_from_j, float(sig_l), tol),
        _result("K", float(-1 - sig_l), float(kappa), tol),
        _result("K^2", float(l * (l + 1) + sig_l + 1), float(kappa * kappa), tol),
        _result("parity", parity_residual, 0.0, tol),
        _result("norm", float(c_up * c_up + c_dn * c_dn), 1.0, tol),
    ]
    return checks
