"""Acceptance gate: every criterion at its stated tolerance.

Each test prints one `[acceptance] criterion N: PASS/FAIL` line (run pytest
with -s to see them all); the assertions carry the same conditions.
"""

import math
import time
from decimal import Decimal, getcontext

import numpy as np

from hydirac.angular import (
    apply_sigma_dot_rhat,
    sigma_dot_L_eigenvalue,
    spherical_spinor,
)
from hydirac.core import PhysicsConfig, convert_energy, l_of_kappa, make_state
from hydirac.specfun import kummer_m, kummer_m_derivative, pochhammer
from hydirac.spectrum import energy, fine_structure_splitting, sommerfeld_expansion, valid_kappas
from hydirac.verify import (
    DerivativeOracle,
    residual_second_order,
    residual_suite,
)
from hydirac.wavefn import (
    QuadratureSpec,
    assemble_bispinor_radials,
    conjugate_transform,
    default_grid,
    norm_integral,
    normalize,
    overlap_integral,
    radial_phi,
    radial_phi_tilde,
)

CFG = PhysicsConfig()


def _report(criterion: int, ok: bool, detail: str) -> None:
    print(f"[acceptance] criterion {criterion}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, f"criterion {criterion}: {detail}"


def states_up_to(n_max):
    out = []
    for n in range(1, n_max + 1):
        for kappa in valid_kappas(n):
            s = make_state(n, kappa, 0.5, CFG)
            out.append((s, energy(s, CFG)))
    return out


def test_criterion_1_ground_state_energy():
    getcontext().prec = 50
    a = Decimal("0.0072973525693")
    oracle = float((Decimal(1) - a * a).sqrt())  # independent high-precision sqrt(1 - alpha^2)
    e = energy(make_state(1, -1, 0.5, CFG), CFG)
    rel = abs(e.value - oracle) / oracle
    _, binding = convert_energy(e, CFG)
    ok = rel < 1e-12 and abs(binding - 13.6057) <= 0.0005
    _report(1, ok, f"relative error {rel:.2e}, binding {binding:.6f} eV")


def test_criterion_2_fine_structure():
    split = fine_structure_splitting(2, -2, 1, CFG)
    cross_check = abs(split / 4.53e-5 - 1.0)
    e_2s = energy(make_state(2, -1, 0.5, CFG), CFG).value
    e_2p12 = energy(make_state(2, 1, 0.5, CFG), CFG).value
    ok = cross_check < 0.02 and e_2s == e_2p12
    _report(2, ok, f"splitting {split:.4e} eV ({cross_check:.2%} off 4.53e-5), degeneracy bit-exact: {e_2s == e_2p12}")


def test_criterion_3_sommerfeld_expansion_agreement():
    bound = 5.0 * CFG.alpha**6
    worst = 0.0
    for s, e in states_up_to(5):
        worst = max(worst, abs(e.value - sommerfeld_expansion(s.n, s.j, CFG)))
    ok = worst < bound
    _report(3, ok, f"worst |E - expansion| = {worst:.2e} < {bound:.2e}")


def test_criterion_4_residual_suite_both_derivative_paths():
    start = time.perf_counter()
    worst_analytic = worst_fd = 0.0
    central = DerivativeOracle("central-difference", step_scale=1e-3)
    for s, e in states_up_to(4):
        for report in residual_suite(s, e, edge_trim=0.02):
            worst_analytic = max(worst_analytic, report.relative_norm)
        for report in residual_suite(s, e, oracle=central, edge_trim=0.02):
            worst_fd = max(worst_fd, report.relative_norm)
    elapsed = time.perf_counter() - start
    ok = worst_analytic < 1e-8 and worst_fd < 1e-6 and elapsed < 10.0
    _report(
        4,
        ok,
        f"worst analytic {worst_analytic:.2e} < 1e-8, worst finite-difference "
        f"{worst_fd:.2e} < 1e-6, runtime {elapsed:.2f}s < 10s",
    )


def test_criterion_5_gamma_necessity():
    s = make_state(1, -1, 0.5, CFG)
    e = energy(s, CFG)
    with_gamma = residual_second_order(s, e).relative_norm
    without_gamma = residual_second_order(s, e, include_spin_correction=False).relative_norm
    ok = without_gamma > 1e-3 and with_gamma < 1e-8
    _report(5, ok, f"residual with spin term {with_gamma:.2e}, deleted {without_gamma:.2e} > 1e-3")


def test_criterion_6_roundtrip_transform_8_ulp():
    worst = 0.0
    for s, e in states_up_to(4):
        r = default_grid(s)
        g = radial_phi(s, e, r)
        gt = radial_phi_tilde(s, e, r)
        g_rt, gt_rt = conjugate_transform(*assemble_bispinor_radials(s, e, r), e)
        scale = np.spacing(np.maximum(np.abs(g), np.abs(gt)))
        worst = max(
            worst,
            float(np.max(np.abs(g_rt - g) / scale)),
            float(np.max(np.abs(gt_rt - gt) / scale)),
        )
    ok = worst <= 8.0
    _report(6, ok, f"worst roundtrip deviation {worst:.2f} ulp <= 8")


def test_criterion_7_nodeless_state_structure():
    worst_phi_tilde = 0.0
    worst_ratio_spread = 0.0
    for s, e in states_up_to(4):
        if s.n_r != 0:
            continue
        r = default_grid(s)
        worst_phi_tilde = max(worst_phi_tilde, float(np.max(np.abs(radial_phi_tilde(s, e, r)))))
        psi_a, psi_b = assemble_bispinor_radials(s, e, r)
        ratio = psi_b / psi_a
        expected = math.sqrt((1.0 - e.value) / (1.0 + e.value))
        worst_ratio_spread = max(worst_ratio_spread, float(np.max(np.abs(ratio - expected))) / expected)
    ok = worst_phi_tilde == 0.0 and worst_ratio_spread < 1e-10
    _report(
        7,
        ok,
        f"max |phi_tilde| = {worst_phi_tilde}, psi_b/psi_a relative spread {worst_ratio_spread:.2e} < 1e-10",
    )


def test_criterion_8_angular_identities():
    theta = np.linspace(1e-3, math.pi - 1e-3, 32)
    phi = np.linspace(0.0, 2.0 * math.pi, 32, endpoint=False)
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    worst_parity = 0.0
    for kappa in [k for k in range(-6, 7) if k != 0]:
        j = abs(kappa) - 0.5
        for m_j in np.arange(-j, j + 1):
            flipped = apply_sigma_dot_rhat(spherical_spinor(kappa, m_j, tt, pp), tt, pp)
            target = -spherical_spinor(-kappa, m_j, tt, pp)
            worst_parity = max(worst_parity, float(np.max(np.abs(flipped - target))))

    k_squared_exact = all(
        kappa * kappa == l_of_kappa(kappa) * (l_of_kappa(kappa) + 1) + sigma_dot_L_eigenvalue(kappa) + 1
        for kappa in range(-25, 26)
        if kappa != 0
    )

    x, w = np.polynomial.legendre.leggauss(48)
    tq = np.arccos(x)
    pq = 2.0 * np.pi * np.arange(64) / 64.0
    ttq, ppq = np.meshgrid(tq, pq, indexing="ij")
    wq = np.broadcast_to((w * (2.0 * np.pi / 64.0))[:, None], ttq.shape)
    spinors = []
    for kappa in [k for k in range(-4, 5) if k != 0]:
        j = abs(kappa) - 0.5
        for m_j in np.arange(-j, j + 1):
            spinors.append(((kappa, m_j), spherical_spinor(kappa, m_j, ttq, ppq)))
    worst_ortho = 0.0
    for i, (key_i, s_i) in enumerate(spinors):
        for key_j, s_j in spinors[i:]:
            inner = np.sum(wq * np.sum(np.conj(s_i) * s_j, axis=0))
            expected = 1.0 if key_i == key_j else 0.0
            worst_ortho = max(worst_ortho, abs(inner - expected))

    ok = worst_parity < 1e-12 and k_squared_exact and worst_ortho < 1e-10
    _report(
        8,
        ok,
        f"parity {worst_parity:.2e} < 1e-12, K^2 identity exact: {k_squared_exact}, "
        f"orthonormality {worst_ortho:.2e} < 1e-10",
    )


def test_criterion_9_normalization_and_orthogonality():
    states = states_up_to(4)
    consts = {(s.n, s.kappa): normalize(s, e).constant for s, e in states}
    worst_norm = 0.0
    for s, e in states:
        independent = QuadratureSpec(
            r_min=0.5e-6 / CFG.alpha, r_max=60.0 * s.n * s.n / CFG.alpha, panels=517, order=21
        )
        integral = consts[(s.n, s.kappa)] ** 2 * norm_integral(s, e, independent)
        worst_norm = max(worst_norm, abs(integral - 1.0))
    worst_overlap = 0.0
    for s1, e1 in states:
        for s2, e2 in states:
            if s1.kappa == s2.kappa and s1.n < s2.n:
                worst_overlap = max(
                    worst_overlap,
                    abs(
                        overlap_integral(
                            s1,
                            e1,
                            s2,
                            e2,
                            norm_1=consts[(s1.n, s1.kappa)],
                            norm_2=consts[(s2.n, s2.kappa)],
                        )
                    ),
                )
    ok = worst_norm < 1e-9 and worst_overlap < 1e-8
    _report(
        9,
        ok,
        f"worst |integral - 1| = {worst_norm:.2e} < 1e-9 on independent grids, "
        f"worst same-kappa overlap {worst_overlap:.2e} < 1e-8",
    )


def test_criterion_10_special_functions():
    # polynomial cases vs Horner, measured in ulps of the conditioning scale
    worst_ulp = 0.0
    rho = np.linspace(0.0, 200.0, 201)
    for n_r in range(0, 11):
        b = 2.0 * math.sqrt(4.0 - CFG.alpha**2) + 1.0
        a = -float(n_r)
        coeffs = [pochhammer(a, k) / (pochhammer(b, k) * math.factorial(k)) for k in range(n_r + 1)]
        horner = np.zeros_like(rho)
        scale = np.zeros_like(rho)
        for c in reversed(coeffs):
            horner = horner * rho + c
            scale = scale * rho + abs(c)
        diff = np.abs(kummer_m(a, b, rho) - horner)
        worst_ulp = max(worst_ulp, float(np.max(diff / np.spacing(scale))))

    worst_exp = max(
        abs(kummer_m(1.0, 1.0, rho) / math.exp(rho) - 1.0) for rho in (0.5, 2.0, 10.0, 20.0)
    )

    # derivative path: 4th-order step halving of the central-difference check
    # (non-polynomial parameters; the stencil is exact on low-degree polynomials)
    a, b = 0.5, 1.7
    exact = kummer_m_derivative(a, b, 6.0)

    def central(h):
        return (
            kummer_m(a, b, 6.0 - 2 * h)
            - 8.0 * kummer_m(a, b, 6.0 - h)
            + 8.0 * kummer_m(a, b, 6.0 + h)
            - kummer_m(a, b, 6.0 + 2 * h)
        ) / (12.0 * h)

    ratio = abs(central(2e-2) - exact) / abs(central(1e-2) - exact)
    ok = worst_ulp <= 4.0 and worst_exp < 1e-12 and ratio >= 12.0
    _report(
        10,
        ok,
        f"Horner agreement {worst_ulp:.2f} ulp <= 4, exp identity {worst_exp:.2e} < 1e-12, "
        f"step-halving ratio {ratio:.1f} >= 12",
    )
