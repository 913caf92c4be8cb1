"""Benchmark the compiled series kernel against the pure-NumPy fallback.

Run from the repository root after building the extension:

    python benchmarks/bench_kummer.py

Workloads mirror production use: polynomial bound-state series over radial
grids, and the adaptive series for generic parameters.
"""

from __future__ import annotations

import sys
import time
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from hydirac import _kummer_py  # noqa: E402

try:
    from hydirac import _kummer_cy
except ImportError:
    _kummer_cy = None

WORKLOADS = [
    ("polynomial n_r=3", dict(a=-3.0, b=5.0, tol=1e-15, fixed_terms=4, max_terms=500)),
    ("polynomial n_r=10", dict(a=-10.0, b=21.0, tol=1e-15, fixed_terms=11, max_terms=500)),
    ("adaptive a=0.5", dict(a=0.5, b=1.7, tol=1e-15, fixed_terms=-1, max_terms=500)),
    ("adaptive exp", dict(a=1.0, b=1.0, tol=1e-15, fixed_terms=-1, max_terms=500)),
]

SIZES = [2_000, 20_000, 200_000]
REPEATS = 7


def best_time(fn, *args) -> float:
    best = float("inf")
    for _ in range(REPEATS):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def main() -> int:
    if _kummer_cy is None:
        print("compiled kernel not built; run `pip install -e .` first")
        return 1
    print(f"{'workload':>18} {'points':>8} {'python':>12} {'cython':>12} {'speedup':>8}")
    for label, params in WORKLOADS:
        for size in SIZES:
            rho = np.geomspace(1e-4, 40.0, size)
            args = (params["a"], params["b"], rho, params["tol"],
                    params["fixed_terms"], params["max_terms"])
            v_py = _kummer_py.kummer_m_array(*args)[0]
            v_cy = _kummer_cy.kummer_m_array(*args)[0]
            if not np.array_equal(v_py, v_cy):
                print(f"{label:>18} {size:>8}  BACKENDS DISAGREE")
                return 1
            t_py = best_time(_kummer_py.kummer_m_array, *args)
            t_cy = best_time(_kummer_cy.kummer_m_array, *args)
            print(
                f"{label:>18} {size:>8} {t_py * 1e3:>10.3f}ms {t_cy * 1e3:>10.3f}ms "
                f"{t_py / t_cy:>7.1f}x"
            )
    return 0


if __name__ == "__main__":
    sys.exit(main())
