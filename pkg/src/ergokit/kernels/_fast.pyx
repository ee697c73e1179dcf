# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled closed-form shift kernels.

Same contract as ergokit.kernels.reference; see that module's docstring
for the index and weight conventions.  The inner loops run over the
declared supports only, with weights factored through power tables, so a
full Cesàro sweep costs one fused multiply-add per term.
"""

import numpy as np

from libc.math cimport pow as cpow

BACKEND_NAME = "cython"

ctypedef double complex cplx

ctypedef fused scalar_t:
    double
    cplx


def shift_power_apply(const cplx[::1] x, Py_ssize_t support, Py_ssize_t k,
                      double e, bint forward):
    """Apply the k-th closed-form shift power; returns (out, new_support)."""
    cdef Py_ssize_t n = x.shape[0]
    out_arr = np.zeros(n, dtype=np.complex128)
    cdef cplx[::1] out = out_arr
    cdef Py_ssize_t i, L
    if k == 0:
        for i in range(support):
            out[i] = x[i]
        return out_arr, support
    if forward:
        if support == 0:
            return out_arr, 0
        if e != 0.0:
            for i in range(k, support + k):
                out[i] = cpow((<double> (i + 1)) / (<double> (i + 1 - k)), e) * x[i - k]
        else:
            for i in range(k, support + k):
                out[i] = x[i - k]
        return out_arr, support + k
    L = support - k
    if L <= 0:
        return out_arr, 0
    if e != 0.0:
        for i in range(L):
            out[i] = cpow((<double> (i + 1 + k)) / (<double> (i + 1)), e) * x[i + k]
    else:
        for i in range(L):
            out[i] = x[i + k]
    return out_arr, L


def cesaro_shift_accumulate(const cplx[::1] x, Py_ssize_t support,
                            Py_ssize_t start, Py_ssize_t n, double e,
                            bint forward):
    """Mean of shift powers k = start..start+n-1; returns (out, new_support)."""
    cdef Py_ssize_t N = x.shape[0]
    acc_arr = np.zeros(N, dtype=np.complex128)
    cdef cplx[::1] acc = acc_arr
    if support == 0 or n < 1:
        return acc_arr, 0
    cdef Py_ssize_t k, i, L
    cdef const double[::1] pw = None
    cdef const double[::1] pwi = None
    cdef double dn = <double> n
    if e != 0.0:
        tab = support + start + n - 1 if forward else support
        pw_arr = np.arange(1.0, tab + 1.0) ** e
        pwi_arr = 1.0 / pw_arr
        pw = pw_arr
        pwi = pwi_arr
    if forward:
        for k in range(start, start + n):
            if k == 0:
                for i in range(support):
                    acc[i] = acc[i] + x[i]
            elif e != 0.0:
                for i in range(support):
                    acc[i + k] = acc[i + k] + (pw[i + k] * pwi[i]) * x[i]
            else:
                for i in range(support):
                    acc[i + k] = acc[i + k] + x[i]
        for i in range(support + start + n - 1):
            acc[i] = acc[i] / dn
        return acc_arr, support + start + n - 1
    for k in range(start, start + n):
        L = support - k
        if L <= 0:
            break
        if k == 0:
            for i in range(support):
                acc[i] = acc[i] + x[i]
        elif e != 0.0:
            for i in range(L):
                acc[i] = acc[i] + (pw[i + k] * pwi[i]) * x[i + k]
        else:
            for i in range(L):
                acc[i] = acc[i] + x[i + k]
    for i in range(support):
        acc[i] = acc[i] / dn
    return acc_arr, max(support - start, 0)


def shifted_dot_sweep(const scalar_t[::1] c, Py_ssize_t csup,
                      const scalar_t[::1] y, Py_ssize_t ysup,
                      Py_ssize_t kmax, double e, bint forward):
    """All shifted, weighted dot products for k = 0..kmax in one pass."""
    if scalar_t is double:
        out_arr = np.zeros(kmax + 1, dtype=np.float64)
    else:
        out_arr = np.zeros(kmax + 1, dtype=np.complex128)
    cdef scalar_t[::1] out = out_arr
    if csup == 0 or ysup == 0:
        return out_arr
    cdef const scalar_t[::1] A
    cdef const scalar_t[::1] B
    cdef Py_ssize_t Asup, Bsup
    if forward:
        A = y
        Asup = ysup
        B = c
        Bsup = csup
    else:
        A = c
        Asup = csup
        B = y
        Bsup = ysup
    if Asup > Bsup:
        Asup = Bsup
    a_np = np.asarray(A[:Asup])
    b_np = np.asarray(B[:Bsup])
    if e != 0.0:
        pw = np.arange(1.0, Bsup + 1.0) ** e
        a_np = a_np * (1.0 / pw[:Asup])
        b_np = b_np * pw
    cdef const scalar_t[::1] a = a_np
    cdef const scalar_t[::1] b = b_np
    cdef Py_ssize_t k, i, L, klim
    cdef scalar_t s
    klim = kmax if kmax < Bsup - 1 else Bsup - 1
    for k in range(klim + 1):
        L = Asup if Asup < Bsup - k else Bsup - k
        if L <= 0:
            break
        s = 0
        for i in range(L):
            s = s + a[i] * b[i + k]
        out[k] = s
    return out_arr
