"""Import-time selection of the series-evaluation kernel.

The compiled extension is preferred; the NumPy twin is the fallback.
Set ``HYDIRAC_PURE_PYTHON=1`` to force the fallback (used by the benchmark
and the backend-agreement tests).
"""

from __future__ import annotations

import os

if os.environ.get("HYDIRAC_PURE_PYTHON"):
    from . import _kummer_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _kummer_cy as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        from . import _kummer_py as _impl

        BACKEND = "python"

kummer_m_array = _impl.kummer_m_array


def backend_name() -> str:
    """Which kernel is active: 'cython' or 'python'."""
    return BACKEND
