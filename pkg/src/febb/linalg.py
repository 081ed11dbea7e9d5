"""Banded LU with row partial pivoting.

Matrices are stored by diagonals: row ``i`` keeps columns ``i-kl .. i+ku``;
the factorization works on a widened copy whose extra ``kl`` columns absorb
pivoting fill (U's bandwidth grows to ``kl + ku``).  Pivot ties break to the
smallest row index, so factors are bitwise reproducible.

The elimination inner loops live in the compiled module ``febb._band`` when
it built, else in the numpy twin ``febb._band_py``; both produce identical
bits.  Set ``FEBB_PURE_PYTHON=1`` to force the fallback.
"""

import os
from dataclasses import dataclass

import numpy as np

from .errors import NumericError, SingularMatrixError

if os.environ.get("FEBB_PURE_PYTHON"):
    from . import _band_py as _kernels
    USING_COMPILED = False
else:
    try:
        from . import _band as _kernels  # type: ignore[attr-defined]
        USING_COMPILED = True
    except ImportError:
        from . import _band_py as _kernels
        USING_COMPILED = False

__all__ = ["BandedMatrix", "PivotedFactorization", "lu_factor", "lu_solve",
           "residual_norm", "USING_COMPILED"]


class BandedMatrix:
    """Square banded matrix, dimension ``n``, bandwidths ``kl``/``ku``."""

    def __init__(self, n: int, kl: int, ku: int):
        if n < 1 or kl < 0 or ku < 0:
            raise ValueError(f"bad band shape n={n} kl={kl} ku={ku}")
        self.n = n
        self.kl = kl
        self.ku = ku
        self.data = np.zeros((n, kl + ku + 1))

    def _loc(self, i: int, j: int) -> int:
        off = j - i
        if off < -self.kl or off > self.ku:
            raise IndexError(f"({i},{j}) outside band kl={self.kl} ku={self.ku}")
        return off + self.kl

    def set(self, i: int, j: int, value: float) -> None:
        self.data[i, self._loc(i, j)] = value

    def add(self, i: int, j: int, value: float) -> None:
        self.data[i, self._loc(i, j)] += value

    def get(self, i: int, j: int) -> float:
        off = j - i
        if off < -self.kl or off > self.ku:
            return 0.0
        return float(self.data[i, off + self.kl])

    def add_many(self, rows: np.ndarray, cols: np.ndarray, value: float) -> None:
        """Accumulate one scalar at several (row, col) positions."""
        np.add.at(self.data, (rows, cols - rows + self.kl), value)

    def matvec(self, x: np.ndarray) -> np.ndarray:
        y = np.zeros(self.n)
        for off in range(-self.kl, self.ku + 1):
            r0 = max(0, -off)
            r1 = min(self.n, self.n - off)
            if r0 < r1:
                rows = np.arange(r0, r1)
                y[r0:r1] += self.data[rows, off + self.kl] * x[r0 + off:r1 + off]
        return y

    def norm_inf(self) -> float:
        return float(np.abs(self.data).sum(axis=1).max())

    def to_dense(self) -> np.ndarray:
        a = np.zeros((self.n, self.n))
        for i in range(self.n):
            lo = max(0, i - self.kl)
            hi = min(self.n - 1, i + self.ku)
            for j in range(lo, hi + 1):
                a[i, j] = self.data[i, j - i + self.kl]
        return a

    @classmethod
    def from_dense(cls, a: np.ndarray, kl: int, ku: int) -> "BandedMatrix":
        n = a.shape[0]
        if a.shape != (n, n):
            raise ValueError("matrix must be square")
        bm = cls(n, kl, ku)
        for i in range(n):
            for j in range(max(0, i - kl), min(n - 1, i + ku) + 1):
                bm.set(i, j, float(a[i, j]))
        return bm


@dataclass(frozen=True)
class PivotedFactorization:
    """LU factors of a banded matrix, in band storage with pivoting fill.

    ``work`` row ``i`` covers columns ``i-kl .. i+ku+kl`` (local index
    ``j - i + kl``): unit-lower multipliers below the diagonal, U on and
    above.  ``piv[k]`` is the row swapped into position ``k`` at step ``k``.
    """

    n: int
    kl: int
    ku: int
    work: np.ndarray
    piv: np.ndarray


def lu_factor(a: BandedMatrix) -> PivotedFactorization:
    n, kl, ku = a.n, a.kl, a.ku
    work = np.zeros((n, 2 * kl + ku + 1))
    work[:, : kl + ku + 1] = a.data
    piv = np.zeros(n, dtype=np.int64)
    status = _kernels.factor(work, n, kl, ku, piv)
    if status > 0:
        raise SingularMatrixError(f"zero pivot column at column {status - 1}")
    if status < 0:
        raise NumericError(f"pivot below 1e-300 at column {-status - 1}")
    return PivotedFactorization(n, kl, ku, work, piv)


def lu_solve(f: PivotedFactorization, b: np.ndarray) -> np.ndarray:
    b = np.asarray(b, dtype=float)
    if b.shape != (f.n,):
        raise ValueError(f"rhs length {b.shape} does not match n={f.n}")
    x = b.copy()
    _kernels.solve_factored(f.work, f.n, f.kl, f.ku, f.piv, x)
    return x


def residual_norm(a: BandedMatrix, x: np.ndarray, b: np.ndarray) -> float:
    x = np.asarray(x, dtype=float)
    b = np.asarray(b, dtype=float)
    if x.shape != (a.n,) or b.shape != (a.n,):
        raise ValueError("dimension mismatch")
    return float(np.abs(a.matvec(x) - b).max())
