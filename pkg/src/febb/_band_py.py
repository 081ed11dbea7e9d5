"""Pure-numpy band factorization kernels.

Fallback twin of the compiled module ``febb._band``: identical algorithm,
identical operation-level arithmetic (every update is elementwise, so the
results are bitwise equal to the C loops compiled with FP contraction off).

Storage: row ``i`` of ``work`` holds matrix columns ``i-kl .. i+ku+kl`` at
local index ``j - i + kl`` (the ``+kl`` tail is pivoting fill).

Status codes returned by ``factor``: 0 ok; ``j+1`` means column ``j`` had an
exactly zero pivot column; ``-(j+1)`` means the chosen pivot magnitude fell
below 1e-300.
"""

import numpy as np
from numpy.lib.stride_tricks import as_strided

TINY_PIVOT = 1e-300


def factor(work: np.ndarray, n: int, kl: int, ku: int, piv: np.ndarray) -> int:
    s0, s1 = work.strides
    for k in range(n):
        imax = min(k + kl, n - 1)
        rows = np.arange(k, imax + 1)
        col = work[rows, k - rows + kl]
        p = int(np.argmax(np.abs(col)))  # first maximum: smallest row index
        vmax = abs(col[p])
        if vmax == 0.0:
            return k + 1
        if vmax < TINY_PIVOT:
            return -(k + 1)
        p += k
        piv[k] = p
        hi = min(k + ku + kl, n - 1)
        if p != k:
            a = work[k, kl : kl + hi - k + 1]
            b = work[p, k - p + kl : hi - p + kl + 1]
            tmp = a.copy()
            a[:] = b
            b[:] = tmp
        pivval = work[k, kl]
        ni = imax - k
        nc = hi - k
        if ni > 0:
            sub = rows[1:]
            locs = k - sub + kl
            mult = work[sub, locs] / pivval
            work[sub, locs] = mult
            if nc > 0:
                u = work[k, kl + 1 : kl + 1 + nc]
                # skewed view: V[i, c] = work[k+1+i, (c - i) + kl], the
                # parallelogram of global columns k+1..hi in rows k+1..imax
                v = as_strided(work[k + 1 :, kl :], shape=(ni, nc),
                               strides=(s0 - s1, s1))
                v -= mult[:, None] * u[None, :]
    return 0


def solve_factored(work: np.ndarray, n: int, kl: int, ku: int,
                   piv: np.ndarray, x: np.ndarray) -> None:
    for k in range(n):
        p = piv[k]
        if p != k:
            x[k], x[p] = x[p], x[k]
        imax = min(k + kl, n - 1)
        if imax > k:
            rows = np.arange(k + 1, imax + 1)
            x[rows] -= work[rows, k - rows + kl] * x[k]
    for k in range(n - 1, -1, -1):
        xk = x[k] / work[k, kl]
        x[k] = xk
        lo = max(0, k - ku - kl)
        if lo < k:
            rows = np.arange(lo, k)
            x[rows] -= work[rows, k - rows + kl] * xk
