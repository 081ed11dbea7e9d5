# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled band factorization kernels.

Twin of ``febb._band_py`` (see its docstring for the storage layout and
status codes); plain C loops over the same elementwise updates, so results
are bitwise identical to the fallback.
"""


def factor(double[:, ::1] work, Py_ssize_t n, Py_ssize_t kl, Py_ssize_t ku,
           long long[::1] piv):
    cdef Py_ssize_t k, i, c, p, imax, hi
    cdef double vmax, v, pivval, mult, tmp
    cdef int status = 0
    with nogil:
        for k in range(n):
            imax = k + kl
            if imax > n - 1:
                imax = n - 1
            p = k
            vmax = work[k, kl]
            if vmax < 0.0:
                vmax = -vmax
            for i in range(k + 1, imax + 1):
                v = work[i, k - i + kl]
                if v < 0.0:
                    v = -v
                if v > vmax:
                    vmax = v
                    p = i
            if vmax == 0.0:
                status = <int> (k + 1)
                break
            if vmax < 1e-300:
                status = <int> (-(k + 1))
                break
            piv[k] = p
            hi = k + ku + kl
            if hi > n - 1:
                hi = n - 1
            if p != k:
                for c in range(k, hi + 1):
                    tmp = work[k, c - k + kl]
                    work[k, c - k + kl] = work[p, c - p + kl]
                    work[p, c - p + kl] = tmp
            pivval = work[k, kl]
            for i in range(k + 1, imax + 1):
                mult = work[i, k - i + kl] / pivval
                work[i, k - i + kl] = mult
                for c in range(k + 1, hi + 1):
                    work[i, c - i + kl] -= mult * work[k, c - k + kl]
    return status


def solve_factored(double[:, ::1] work, Py_ssize_t n, Py_ssize_t kl,
                   Py_ssize_t ku, long long[::1] piv, double[::1] x):
    cdef Py_ssize_t k, i, p, imax, lo
    cdef double xk, tmp
    with nogil:
        for k in range(n):
            p = piv[k]
            if p != k:
                tmp = x[k]
                x[k] = x[p]
                x[p] = tmp
            imax = k + kl
            if imax > n - 1:
                imax = n - 1
            xk = x[k]
            for i in range(k + 1, imax + 1):
                x[i] -= work[i, k - i + kl] * xk
        for k in range(n - 1, -1, -1):
            xk = x[k] / work[k, kl]
            x[k] = xk
            lo = k - ku - kl
            if lo < 0:
                lo = 0
            for i in range(lo, k):
                x[i] -= work[i, k - i + kl] * xk
