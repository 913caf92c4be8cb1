"""Pure-NumPy kernel for confluent-hypergeometric series evaluation.

Mirrors the compiled kernel in ``_kummer_cy.pyx`` operation for operation so
the two backends produce bit-identical results.
"""

from __future__ import annotations

import numpy as np


def kummer_m_array(a, b, rho, tol, fixed_terms, max_terms):
    """Sum the Kummer series F(a, b, rho_i) for every entry of ``rho``.

    fixed_terms >= 0: sum exactly that many terms (exact polynomial case).
    fixed_terms < 0:  adaptive; a term is added, then the series stops once
    its magnitude drops below tol * |partial sum|.

    Returns (values, nterms, converged); ``nterms[i]`` counts the summed
    terms, ``converged[i]`` is False where the cap ``max_terms`` was hit.
    """
    rho = np.ascontiguousarray(rho, dtype=np.float64)
    values = np.ones_like(rho)
    term = np.ones_like(rho)
    nterms = np.ones(rho.shape, dtype=np.int64)

    if fixed_terms >= 0:
        for k in range(fixed_terms - 1):
            term = term * ((a + k) / ((b + k) * (k + 1))) * rho
            values += term
        nterms[:] = max(fixed_terms, 1)
        return values, nterms, np.ones(rho.shape, dtype=bool)

    converged = np.zeros(rho.shape, dtype=bool)
    for k in range(max_terms - 1):
        term = term * ((a + k) / ((b + k) * (k + 1))) * rho
        active = ~converged
        if not active.any():
            break
        values[active] += term[active]
        nterms[active] += 1
        converged |= active & (np.abs(term) < tol * np.abs(values))
    return values, nterms, converged
