"""Pure-numpy fallback for the banded LDL^T inertia kernel.

Same algorithm and same floating-point operation order as the compiled
twin in ``_inertia_cy.pyx``; the two backends must agree bit for bit.
"""

from __future__ import annotations

import numpy as np


def ldlt_negcount(band: np.ndarray, pivot_floor: float) -> tuple[int, bool]:
    """Count negative pivots of the LDL^T factorization of a symmetric band.

    ``band`` has shape (n, b+1) with ``band[j, 0]`` the diagonal entry
    A[j, j] and ``band[j, t]`` the sub-diagonal entry A[j+t, j].  The array
    is overwritten with the factorization workspace.

    Returns ``(negcount, ok)``.  ``ok`` is False when a pivot magnitude
    drops below ``pivot_floor`` (factorization abandoned; the caller is
    expected to retry with a jittered shift).
    """
    n, bp1 = band.shape
    b = bp1 - 1
    neg = 0
    for j in range(n):
        d = band[j, 0]
        if abs(d) < pivot_floor:
            return neg, False
        if d < 0.0:
            neg += 1
        w = b if b <= n - 1 - j else n - 1 - j
        if w > 0:
            col = band[j, 1 : w + 1]
            l = col / d
            for t in range(1, w + 1):
                band[j + t, 0 : w - t + 1] -= l[t - 1] * col[t - 1 : w]
    return neg, True
