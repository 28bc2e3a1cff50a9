# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled banded LDL^T inertia kernel.

Mirrors ``_inertia_py.ldlt_negcount`` operation for operation; compiled
with -ffp-contract=off so pivots match the numpy fallback bit for bit.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def ldlt_negcount(cnp.float64_t[:, ::1] band, double pivot_floor):
    cdef Py_ssize_t n = band.shape[0]
    cdef Py_ssize_t b = band.shape[1] - 1
    cdef Py_ssize_t j, t, s, w
    cdef int neg = 0
    cdef double d, lt, cs
    for j in range(n):
        d = band[j, 0]
        if -pivot_floor < d < pivot_floor:
            return neg, False
        if d < 0.0:
            neg += 1
        w = b if b <= n - 1 - j else n - 1 - j
        for t in range(1, w + 1):
            lt = band[j, t] / d
            for s in range(0, w - t + 1):
                cs = band[j, t + s]
                band[j + t, s] = band[j + t, s] - lt * cs
    return neg, True
