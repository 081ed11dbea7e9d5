import csv
import pathlib

import numpy as np
import pytest

import febb

DATA = pathlib.Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def benchmark_spec():
    """Unit benchmark cantilever: P=1 N, E=1 Pa, L=1 m, W=T=L/10."""
    return febb.BeamSpec(1.0, 0.1, 0.1, 1.0, 1.0)


def load_spot_oracle():
    with open(DATA / "spot_oracle.csv", newline="") as f:
        rows = list(csv.reader(f))
    return {k: float(v) for k, v in rows[1:]}


def load_sweep_oracle():
    with open(DATA / "sweep_oracle.csv", newline="") as f:
        rows = list(csv.reader(f))
    return [(float(a), float(e), float(r)) for a, e, r in rows[1:]]


def dense_gauss_solve(a, b):
    """Brute-force dense Gaussian elimination with partial pivoting.

    Independent oracle for the banded solver; no shared code.
    """
    a = np.array(a, dtype=float)
    b = np.array(b, dtype=float)
    n = a.shape[0]
    for k in range(n):
        p = k + int(np.argmax(np.abs(a[k:, k])))
        if a[p, k] == 0.0:
            raise ZeroDivisionError("singular")
        if p != k:
            a[[k, p]] = a[[p, k]]
            b[[k, p]] = b[[p, k]]
        for i in range(k + 1, n):
            l = a[i, k] / a[k, k]
            a[i, k + 1:] -= l * a[k, k + 1:]
            b[i] -= l * b[k]
    x = np.zeros(n)
    for k in range(n - 1, -1, -1):
        x[k] = (b[k] - a[k, k + 1:] @ x[k + 1:]) / a[k, k]
    return x


def reconstruct_dense(fact):
    """Rebuild the factored matrix by reversing the elimination.

    Applies U, then for k = n-1..0 the stored column-k multipliers and the
    step-k row swap, to each basis vector; exact inverse of the pivoted
    solve, so the result equals A up to factorization roundoff.
    """
    n, kl, ku, work, piv = fact.n, fact.kl, fact.ku, fact.work, fact.piv
    out = np.zeros((n, n))
    for j in range(n):
        y = np.zeros(n)
        y[j] = 1.0
        # y = U y
        for k in range(n):
            hi = min(k + ku + kl, n - 1)
            acc = 0.0
            for c in range(k, hi + 1):
                acc += work[k, c - k + kl] * y[c]
            y[k] = acc
        # y = P0^T L0 ... P_{n-1}^T L_{n-1} y
        for k in range(n - 1, -1, -1):
            imax = min(k + kl, n - 1)
            for i in range(k + 1, imax + 1):
                y[i] += work[i, k - i + kl] * y[k]
            p = piv[k]
            if p != k:
                y[k], y[p] = y[p], y[k]
        out[:, j] = y
    return out


def hand_assembled_dense(spec, params, n, beta_mode="corrected",
                         clamp_mode="accurate"):
    """Bending system rebuilt entry by entry from the quadrature oracle.

    Never touches the production stencil weights: each matrix entry comes
    from applying the direct piecewise-linear Caputo quadrature to a basis
    deflection vector (fictitious values pinned to the boundary ones by
    clipping), scaled back to deflection space.
    """
    from math import gamma

    m, dx, alpha = params.m, params.dx, params.alpha
    a = np.zeros((n + 1, n + 1))
    rhs = np.zeros(n + 1)
    a[0, 0] = 1.0
    if clamp_mode == "accurate":
        a[1, 0], a[1, 1], a[1, 2] = -3.0, 4.0, -1.0
    else:
        a[1, 1] = 1.0
    ei = spec.modulus * spec.second_moment
    if beta_mode == "corrected":
        beta = -gamma(2.0 - alpha) * params.ell ** (alpha - 1.0) * ei / (
            2.0 * gamma(3.0 - alpha) * dx ** (1.0 + alpha))
    else:
        beta = -params.ell ** (alpha - 1.0) * ei / (
            gamma(3.0 - alpha) * dx ** (1.0 + alpha))
    scale = gamma(3.0 - alpha) * dx ** (1.0 + alpha)
    for c in range(1, n):  # equation of node c in row c + 1
        r = c + 1
        for j in range(n + 1):
            w = np.zeros(n + 1)
            w[j] = 1.0

            def wval(k):
                return w[min(max(k, 0), n)]

            d2 = [(wval(k - 1) - 2.0 * wval(k) + wval(k + 1)) / dx**2
                  for k in range(c - m, c + m + 1)]
            left = febb.direct_quadrature_left(
                np.array(d2[m::-1]), alpha, m, dx)
            right = febb.direct_quadrature_left(
                np.array(d2[m:]), alpha, m, dx)
            entry = scale * (left + right)
            if entry != 0.0:
                a[r, j] = entry
        rhs[r] = spec.load * (spec.length - c * dx) / beta
    return a, rhs
