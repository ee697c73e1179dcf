"""Pure NumPy implementations of the hot closed-form kernels.

This module and the compiled twin ``ergokit.kernels._fast`` implement the
same contract:

* Arrays are 0-based; entry ``i`` is coordinate ``i + 1`` of the sequence.
* The k-th power of the weighted *backward* shift with weight exponent
  ``e`` maps ``out[i] = ((i+1+k)/(i+1))**e * x[i+k]``.
* The k-th power of the weighted *forward* shift maps
  ``out[i] = ((i+1)/(i+1-k))**e * x[i-k]`` for ``i >= k``.
* ``e == 0.0`` is the plain shift; weights are skipped entirely so plain
  shifts move coordinates bit-for-bit.
* Every function is support-aware: entries at or beyond the declared
  support are exactly zero and are never read.

Single applications evaluate weights as ``pow(ratio, e)`` directly.
Sweeps and accumulations factor the weight through power tables
``(i+1)**e`` and their reciprocals, so the inner loops cost one multiply
per term instead of one ``pow``.  Callers must pre-check forward-shift
overflow (``support + k <= len(x)``); the kernels assume it.
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "numpy"

__all__ = [
    "BACKEND_NAME",
    "shift_power_apply",
    "cesaro_shift_accumulate",
    "shifted_dot_sweep",
]


def _power_tables(n: int, e: float) -> tuple[np.ndarray, np.ndarray]:
    idx = np.arange(1.0, n + 1.0)
    pw = idx**e
    return pw, 1.0 / pw


def shift_power_apply(x, support, k, e, forward):
    """Apply the k-th closed-form shift power to ``x``.

    Returns ``(out, new_support)`` with ``out`` a fresh array of the same
    length and dtype.
    """
    n = x.shape[0]
    out = np.zeros(n, dtype=x.dtype)
    support = int(support)
    k = int(k)
    if k == 0:
        out[:support] = x[:support]
        return out, support
    if forward:
        if support == 0:
            return out, 0
        if e != 0.0:
            j = np.arange(float(k + 1), float(support + k + 1))
            out[k : support + k] = ((j / (j - k)) ** e) * x[:support]
        else:
            out[k : support + k] = x[:support]
        return out, support + k
    L = support - k
    if L <= 0:
        return out, 0
    if e != 0.0:
        j = np.arange(1.0, float(L + 1))
        out[:L] = (((j + k) / j) ** e) * x[k:support]
    else:
        out[:L] = x[k:support]
    return out, L


def cesaro_shift_accumulate(x, support, start, n, e, forward):
    """Mean of shift powers: ``(1/n) * sum_{k=start}^{start+n-1} S^k x``.

    ``start`` is 0 or 1.  Returns ``(out, new_support)``.
    """
    N = x.shape[0]
    acc = np.zeros(N, dtype=x.dtype)
    support = int(support)
    start = int(start)
    n = int(n)
    if support == 0 or n < 1:
        return acc, 0
    if forward:
        pw, pwi = _power_tables(support + start + n - 1, e) if e != 0.0 else (None, None)
        src = x[:support]
        for k in range(start, start + n):
            if k == 0:
                acc[:support] += src
            elif e != 0.0:
                acc[k : support + k] += (pw[k : support + k] * pwi[:support]) * src
            else:
                acc[k : support + k] += src
        acc /= n
        return acc, support + start + n - 1
    pw, pwi = _power_tables(support, e) if e != 0.0 else (None, None)
    for k in range(start, start + n):
        L = support - k
        if L <= 0:
            break
        if k == 0:
            acc[:support] += x[:support]
        elif e != 0.0:
            acc[:L] += (pw[k:support] * pwi[:L]) * x[k:support]
        else:
            acc[:L] += x[k:support]
    acc /= n
    return acc, max(support - start, 0)


def shifted_dot_sweep(c, csup, y, ysup, kmax, e, forward):
    """All shifted, weighted dot products in one pass.

    backward: ``out[k] = sum_i c[i] * ((i+1+k)/(i+1))**e * y[i+k]``
    forward:  ``out[k] = sum_i c[i+k] * ((i+1+k)/(i+1))**e * y[i]``

    for ``k = 0..kmax``.  This is the common core of Cesàro traces of
    diagonal polynomials, orbit norm profiles and functional pairings
    along an orbit.
    """
    csup = int(csup)
    ysup = int(ysup)
    kmax = int(kmax)
    dtype = np.result_type(c.dtype, y.dtype)
    out = np.zeros(kmax + 1, dtype=dtype)
    if csup == 0 or ysup == 0:
        return out
    if forward:
        # same correlation with the roles of c and y swapped
        c, y = y, c
        csup, ysup = ysup, csup
    csup = min(csup, ysup)  # entries past ysup never pair with anything
    if e != 0.0:
        pw, pwi = _power_tables(ysup, e)
        a = c[:csup] * pwi[:csup]
        b = y[:ysup] * pw[:ysup]
    else:
        a = c[:csup]
        b = y[:ysup]
    for k in range(min(kmax, ysup - 1) + 1):
        L = min(csup, ysup - k)
        if L <= 0:
            break
        out[k] = np.dot(a[:L], b[k : k + L])
    return out
