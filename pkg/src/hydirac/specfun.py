"""Confluent hypergeometric (Kummer) machinery for the radial amplitudes.

The bound-state quantization condition makes every production use of
F(a, b, rho) a finite polynomial (a = -n_r), which is summed exactly term by
term.  The adaptive series exists for general arguments and is capped at
``MAX_TERMS`` so misuse fails loudly instead of silently truncating.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from ._backend import kummer_m_array

__all__ = [
    "KummerParams",
    "KummerConvergenceError",
    "pochhammer",
    "kummer_m",
    "kummer_m_derivative",
    "MAX_TERMS",
    "DEFAULT_TOL",
]

MAX_TERMS = 500
DEFAULT_TOL = 1e-15
# |a - round(a)| below this (relative) marks a as the nonpositive integer -n_r.
INTEGER_DETECTION_RTOL = 1e-12


class KummerConvergenceError(RuntimeError):
    """Series did not converge within the term cap.

    Carries the partial sum and term count of the worst offender.
    """

    def __init__(self, a: float, b: float, rho: float, partial_sum: float, terms: int):
        self.partial_sum = partial_sum
        self.terms = terms
        super().__init__(
            f"Kummer series F({a}, {b}, rho={rho}) unconverged after {terms} terms; "
            f"partial sum {partial_sum!r}"
        )


@dataclass(frozen=True)
class KummerParams:
    """Series parameters with the polynomial case flagged.

    ``polynomial_degree`` is set exactly when ``a`` is a nonpositive integer
    within the detection tolerance; the series then terminates after
    degree + 1 terms.
    """

    a: float
    b: float
    polynomial_degree: int | None = None

    def __post_init__(self):
        if not self.b > 0.0:
            raise ValueError(f"b must be positive here (b = 2*gamma + 1 > 1), got {self.b}")

    @classmethod
    def detect(cls, a: float, b: float) -> "KummerParams":
        nearest = round(a)
        if nearest <= 0 and abs(a - nearest) < INTEGER_DETECTION_RTOL * (1.0 + abs(a)):
            return cls(a=a, b=b, polynomial_degree=int(-nearest))
        return cls(a=a, b=b, polynomial_degree=None)


def pochhammer(a: float, n: int) -> float:
    """Rising factorial (a)_n = a (a+1) ... (a+n-1), with (a)_0 = 1.

    Exact for integer inputs while the running product stays inside the
    double-precision integer range.  Overflow saturates to inf with a warning
    rather than raising.
    """
    if int(n) != n or n < 0:
        raise ValueError(f"n must be a nonnegative integer, got {n}")
    result = 1.0
    for k in range(int(n)):
        result *= a + k
    if math.isinf(result):
        warnings.warn(f"pochhammer({a}, {n}) overflowed double precision", RuntimeWarning)
    return result


def _as_rho_array(rho) -> tuple[np.ndarray, bool]:
    arr = np.asarray(rho, dtype=np.float64)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    if np.any(arr < 0.0):
        raise ValueError("rho must be nonnegative")
    return np.ascontiguousarray(arr), scalar


def _kernel_eval(a, b, arr, tol, fixed):
    """Run the backend kernel; kernels operate on flat 1-d buffers."""
    flat = arr.reshape(-1)
    values, nterms, converged = kummer_m_array(a, b, flat, tol, fixed, MAX_TERMS)
    return values.reshape(arr.shape), nterms, converged


def kummer_m(a: float, b: float, rho, tol: float = DEFAULT_TOL):
    """Confluent hypergeometric series F(a, b, rho) for rho >= 0.

    For a = -n_r (nonpositive integer within tolerance) exactly n_r + 1 terms
    are summed; otherwise terms are added until the latest one falls below
    tol * |partial sum|, with a hard cap of ``MAX_TERMS``.

    Accepts scalar or array ``rho``; raises :class:`KummerConvergenceError`
    on hitting the cap.
    """
    if not tol > 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    params = KummerParams.detect(a, b)
    arr, scalar = _as_rho_array(rho)
    fixed = -1 if params.polynomial_degree is None else params.polynomial_degree + 1
    values, nterms, converged = _kernel_eval(a, b, arr, tol, fixed)
    if not converged.all():
        i = int(np.argmin(converged))
        raise KummerConvergenceError(
            a, b, float(arr.reshape(-1)[i]), float(values.reshape(-1)[i]), int(nterms[i])
        )
    return float(values.reshape(-1)[0]) if scalar else values


def kummer_m_derivative(a: float, b: float, rho, tol: float = DEFAULT_TOL):
    """dF/drho via the contiguous relation (a/b) * F(a+1, b+1, rho).

    Short-circuits to zero when a = 0 (F is then the constant 1), which also
    avoids summing the exponentially growing F(1, b+1, rho).
    """
    if a == 0.0:
        arr, scalar = _as_rho_array(rho)
        return 0.0 if scalar else np.zeros_like(arr)
    return (a / b) * kummer_m(a + 1.0, b + 1.0, rho, tol)
