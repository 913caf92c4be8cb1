"""Kummer series machinery against independent brute-force oracles."""

import math

import numpy as np
import pytest

from hydirac.core import ALPHA_CODATA, derive_gamma
from hydirac.specfun import (
    MAX_TERMS,
    KummerConvergenceError,
    KummerParams,
    kummer_m,
    kummer_m_derivative,
    pochhammer,
)


def series_reference(a: float, b: float, rho: float, terms: int = 300) -> float:
    """Brute-force oracle: sum pochhammer-ratio terms computed independently."""
    total = 0.0
    for k in range(terms):
        num = 1.0
        den = 1.0
        for i in range(k):
            num *= a + i
            den *= b + i
        term = num / den * rho**k / math.factorial(k)
        total += term
        if num == 0.0 or (k > 1 and abs(term) < 1e-17 * abs(total)):
            break
    return total


def laguerre_reference(n: int, alpha: float, x: np.ndarray) -> np.ndarray:
    """Generalized Laguerre polynomial by the three-term recurrence (independent oracle)."""
    l_prev = np.ones_like(x)
    if n == 0:
        return l_prev
    l_cur = 1.0 + alpha - x
    for k in range(1, n):
        l_prev, l_cur = l_cur, ((2 * k + 1 + alpha - x) * l_cur - (k + alpha) * l_prev) / (k + 1)
    return l_cur


class TestPochhammer:
    def test_zeroth_is_one(self):
        assert pochhammer(5.0, 0) == 1.0

    def test_small_integer(self):
        assert pochhammer(3.0, 2) == 12.0

    def test_hits_zero_factor(self):
        assert pochhammer(-2.0, 3) == 0.0

    def test_overflow_saturates_with_warning(self):
        with pytest.warns(RuntimeWarning):
            assert math.isinf(pochhammer(1e300, 3))

    def test_rejects_negative_count(self):
        with pytest.raises(ValueError):
            pochhammer(1.0, -1)


class TestKummerSeries:
    def test_leading_term_at_origin(self):
        assert kummer_m(2.7, 3.0, 0.0) == 1.0
        assert kummer_m(-4.0, 3.0, 0.0) == 1.0

    def test_two_term_polynomial_by_hand(self):
        # F(-1, 3, 2) = 1 - 2/3
        assert kummer_m(-1.0, 3.0, 2.0) == pytest.approx(1.0 - 2.0 / 3.0, rel=1e-15)

    def test_exponential_identity(self):
        # F(a, a, rho) = exp(rho), checked against brute-force summation too
        assert kummer_m(1.0, 1.0, 1.0) == pytest.approx(math.e, rel=1e-12)
        assert kummer_m(1.0, 1.0, 1.0) == pytest.approx(series_reference(1.0, 1.0, 1.0), rel=1e-13)
        for rho in (0.5, 5.0, 12.5, 20.0):
            assert kummer_m(1.0, 1.0, rho) == pytest.approx(math.exp(rho), rel=1e-12)

    def test_against_brute_force_summation(self):
        for a, b, rho in [(-3.0, 2.2, 7.0), (0.5, 1.5, 3.0), (-7.0, 4.4, 40.0)]:
            assert kummer_m(a, b, rho) == pytest.approx(series_reference(a, b, rho), rel=1e-12)

    def test_validation(self):
        with pytest.raises(ValueError):
            kummer_m(1.0, -1.0, 1.0)
        with pytest.raises(ValueError):
            kummer_m(1.0, 1.0, -0.5)
        with pytest.raises(ValueError):
            kummer_m(1.0, 1.0, 1.0, tol=0.0)

    def test_nonconvergence_raises_with_diagnostics(self):
        with pytest.raises(KummerConvergenceError) as err:
            kummer_m(0.5, 1.5, 400.0)
        assert err.value.terms == MAX_TERMS
        assert math.isfinite(err.value.partial_sum)

    def test_scipy_cross_check(self):
        hyp1f1 = pytest.importorskip("scipy.special").hyp1f1
        rho = np.linspace(0.0, 30.0, 7)
        for a, b in [(-2.0, 3.1), (-5.0, 1.2), (0.25, 2.5)]:
            np.testing.assert_allclose(kummer_m(a, b, rho), hyp1f1(a, b, rho), rtol=1e-12)


class TestPolynomialAgreement:
    def test_horner_agreement_within_4_ulp_of_conditioning_scale(self):
        """Polynomial case equals Horner evaluation to <= 4 ulp.

        The ulp scale is the absolute-coefficient polynomial (the conditioning
        scale of the summation); near the polynomial's roots no summation
        order can do better than ulps of that scale.
        """
        rho = np.linspace(0.0, 200.0, 401)
        for n_r in range(0, 11):
            for kappa in (-1, 1, -3, 5, -10):
                gamma = derive_gamma(kappa, ALPHA_CODATA)
                a, b = -float(n_r), 2.0 * gamma + 1.0
                coeffs = [
                    pochhammer(a, k) / (pochhammer(b, k) * math.factorial(k))
                    for k in range(n_r + 1)
                ]
                horner = np.zeros_like(rho)
                scale = np.zeros_like(rho)
                for c in reversed(coeffs):
                    horner = horner * rho + c
                    scale = scale * rho + abs(c)
                diff = np.abs(kummer_m(a, b, rho) - horner)
                assert np.all(diff <= 4.0 * np.spacing(scale))

    def test_polynomial_term_count_is_exact(self):
        params = KummerParams.detect(-3.0, 2.0)
        assert params.polynomial_degree == 3
        assert KummerParams.detect(-3.0 + 1e-14, 2.0).polynomial_degree == 3
        assert KummerParams.detect(-3.1, 2.0).polynomial_degree is None
        assert KummerParams.detect(0.5, 2.0).polynomial_degree is None

    def test_laguerre_cross_check_ratio_is_rho_independent(self):
        """F(-n_r, b, rho) is proportional to L^(b-1)_{n_r}(rho).

        The ratio must not depend on rho and must equal n_r! / (b)_{n_r}.
        """
        rho = np.linspace(0.5, 60.0, 41)
        for n_r in range(1, 9):
            b = 2.0 * derive_gamma(-2, ALPHA_CODATA) + 1.0
            f = kummer_m(-float(n_r), b, rho)
            lag = laguerre_reference(n_r, b - 1.0, rho)
            mask = np.abs(lag) > 1e-6 * np.max(np.abs(lag))
            ratio = f[mask] / lag[mask]
            np.testing.assert_allclose(ratio, ratio[0], rtol=1e-10)
            expected = math.factorial(n_r) / pochhammer(b, n_r)
            assert ratio[0] == pytest.approx(expected, rel=1e-12)


class TestDerivative:
    def test_zero_when_constant(self):
        assert kummer_m_derivative(0.0, 3.0, 5.0) == 0.0

    def test_linear_polynomial_slope(self):
        # d/drho (1 - rho/3) = -1/3
        for rho in (0.0, 1.0, 17.0):
            assert kummer_m_derivative(-1.0, 3.0, rho) == pytest.approx(-1.0 / 3.0, rel=1e-15)

    def test_exponential_derivative(self):
        assert kummer_m_derivative(1.0, 1.0, 1.0) == pytest.approx(math.e, rel=1e-12)

    def test_matches_central_difference_with_second_order_convergence(self):
        a, b, rho = -4.0, 2.3, 6.0
        exact = kummer_m_derivative(a, b, rho)

        def central(h):
            return (kummer_m(a, b, rho + h) - kummer_m(a, b, rho - h)) / (2 * h)

        err_h = abs(central(1e-3) - exact)
        err_h2 = abs(central(5e-4) - exact)
        assert err_h / err_h2 >= 3.5  # O(h^2): halving h shrinks the error ~4x
