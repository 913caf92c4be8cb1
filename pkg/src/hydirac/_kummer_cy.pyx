# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernel for confluent-hypergeometric series evaluation.

Keeps the floating-point operation order of ``_kummer_py.kummer_m_array``
so both backends agree bit for bit.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def kummer_m_array(double a, double b, object rho, double tol,
                   long fixed_terms, long max_terms):
    """See ``_kummer_py.kummer_m_array`` for the contract."""
    rho_arr = np.ascontiguousarray(rho, dtype=np.float64)
    values_arr = np.ones_like(rho_arr)
    nterms_arr = np.ones(rho_arr.shape, dtype=np.int64)
    converged_arr = np.zeros(rho_arr.shape, dtype=np.uint8)

    cdef double[::1] r = rho_arr
    cdef double[::1] values = values_arr
    cdef long[::1] nterms = nterms_arr
    cdef unsigned char[::1] converged = converged_arr

    cdef Py_ssize_t i, n = r.shape[0]
    cdef long k
    cdef double term, s, coeff, x

    if fixed_terms >= 0:
        for i in range(n):
            x = r[i]
            term = 1.0
            s = 1.0
            for k in range(fixed_terms - 1):
                coeff = (a + k) / ((b + k) * (k + 1))
                term = term * coeff * x
                s += term
            values[i] = s
            nterms[i] = fixed_terms if fixed_terms > 1 else 1
            converged[i] = 1
        return values_arr, nterms_arr, converged_arr.view(np.bool_)

    for i in range(n):
        x = r[i]
        term = 1.0
        s = 1.0
        for k in range(max_terms - 1):
            coeff = (a + k) / ((b + k) * (k + 1))
            term = term * coeff * x
            s += term
            nterms[i] += 1
            if (term if term >= 0 else -term) < tol * (s if s >= 0 else -s):
                converged[i] = 1
                break
        values[i] = s
    return values_arr, nterms_arr, converged_arr.view(np.bool_)
