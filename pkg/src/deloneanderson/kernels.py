"""Backend selection for the hot inertia kernel.

The compiled Cython extension is preferred; the pure-numpy fallback is
used when the extension was not built.  Both produce bit-identical
pivots (the extension is compiled without FMA contraction), so counting
results never depend on the backend.
"""

from __future__ import annotations

import numpy as np

try:
    from . import _inertia_cy as _impl

    BACKEND = "cython"
except ImportError:  # pragma: no cover - depends on build environment
    from . import _inertia_py as _impl

    BACKEND = "python"

from . import _inertia_py


def ldlt_negcount(band: np.ndarray, pivot_floor: float, backend: str | None = None):
    """Negative-pivot count of the LDL^T factorization of a symmetric band.

    ``band`` is modified in place (pass a copy).  ``backend`` forces
    "python" or "cython" (the latter only if built); default is the best
    available one.
    """
    band = np.ascontiguousarray(band, dtype=np.float64)
    if backend is None:
        return _impl.ldlt_negcount(band, pivot_floor)
    if backend == "python":
        return _inertia_py.ldlt_negcount(band, pivot_floor)
    if backend == "cython":
        if BACKEND != "cython":
            raise RuntimeError("compiled kernel not available in this install")
        return _impl.ldlt_negcount(band, pivot_floor)
    raise ValueError(f"unknown backend {backend!r}")
