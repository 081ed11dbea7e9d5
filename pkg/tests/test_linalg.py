import numpy as np
import pytest

from conftest import dense_gauss_solve, reconstruct_dense
from febb import (BandedMatrix, NumericError, SingularMatrixError, lu_factor,
                  lu_solve, residual_norm)
from febb.linalg import USING_COMPILED


def random_banded(rng, n, kl, ku, dominant=True):
    a = BandedMatrix(n, kl, ku)
    a.data[:] = rng.standard_normal((n, kl + ku + 1))
    if dominant:
        a.data[:, kl] += 2.0 * (kl + ku + 1)
    return a


class TestFactor:
    def test_identity(self):
        a = BandedMatrix(4, 1, 1)
        for i in range(4):
            a.set(i, i, 1.0)
        f = lu_factor(a)
        assert np.array_equal(f.piv, np.arange(4))
        assert np.allclose(reconstruct_dense(f), np.eye(4))

    def test_forced_pivot_swap(self):
        a = BandedMatrix(2, 1, 1)
        a.set(0, 1, 1.0)
        a.set(1, 0, 1.0)
        f = lu_factor(a)
        assert f.piv[0] == 1
        assert np.allclose(reconstruct_dense(f), [[0, 1], [1, 0]], atol=0)

    def test_reconstruction_seeded_band(self):
        rng = np.random.default_rng(123)
        a = random_banded(rng, 50, 5, 5)
        dense = a.to_dense()
        f = lu_factor(a)
        err = np.abs(reconstruct_dense(f) - dense).max()
        assert err <= 1e-13 * np.abs(dense).max()

    def test_singular_column_raises(self):
        a = BandedMatrix(3, 1, 1)
        a.set(0, 0, 1.0)
        a.set(2, 2, 1.0)  # column 1 entirely zero
        with pytest.raises(SingularMatrixError):
            lu_factor(a)

    def test_subnormal_pivot_raises(self):
        a = BandedMatrix(2, 0, 0)
        a.set(0, 0, 1e-308)
        a.set(1, 1, 1.0)
        with pytest.raises(NumericError):
            lu_factor(a)

    def test_deterministic_bitwise(self):
        rng = np.random.default_rng(5)
        a = random_banded(rng, 40, 3, 4)
        f1 = lu_factor(a)
        f2 = lu_factor(a)
        assert np.array_equal(f1.work, f2.work)
        assert np.array_equal(f1.piv, f2.piv)

    def test_pivot_tie_break_smallest_row(self):
        # column 0 holds equal magnitudes in rows 0 and 1: no swap expected
        a = BandedMatrix(2, 1, 1)
        a.set(0, 0, -2.0)
        a.set(1, 0, 2.0)
        a.set(0, 1, 1.0)
        a.set(1, 1, 3.0)
        assert lu_factor(a).piv[0] == 0


class TestSolve:
    def test_identity_returns_rhs(self):
        a = BandedMatrix(5, 0, 0)
        for i in range(5):
            a.set(i, i, 1.0)
        b = np.arange(5.0)
        assert np.array_equal(lu_solve(lu_factor(a), b), b)

    def test_zero_rhs(self):
        rng = np.random.default_rng(9)
        a = random_banded(rng, 12, 2, 2)
        assert np.array_equal(lu_solve(lu_factor(a), np.zeros(12)),
                              np.zeros(12))

    def test_against_dense_gauss_oracle(self):
        rng = np.random.default_rng(31)
        a = random_banded(rng, 8, 2, 3)
        b = rng.standard_normal(8)
        x = lu_solve(lu_factor(a), b)
        x_ref = dense_gauss_solve(a.to_dense(), b)
        assert np.abs(x - x_ref).max() <= 1e-12

    def test_dimension_mismatch(self):
        a = BandedMatrix(4, 1, 1)
        for i in range(4):
            a.set(i, i, 2.0)
        with pytest.raises(ValueError):
            lu_solve(lu_factor(a), np.zeros(5))


class TestResidualNorm:
    def test_exact_solution_small(self):
        rng = np.random.default_rng(2)
        a = random_banded(rng, 20, 3, 3)
        x = rng.standard_normal(20)
        b = a.matvec(x)
        assert residual_norm(a, x, b) <= 1e-12 * np.abs(b).max()

    def test_zero_guess(self):
        rng = np.random.default_rng(4)
        a = random_banded(rng, 10, 2, 2)
        b = rng.standard_normal(10)
        assert residual_norm(a, np.zeros(10), b) == np.abs(b).max()

    def test_perturbation_bound(self):
        rng = np.random.default_rng(6)
        a = random_banded(rng, 15, 2, 2)
        x = rng.standard_normal(15)
        b = a.matvec(x)
        x2 = x.copy()
        x2[7] += 1e-6
        assert residual_norm(a, x2, b) <= a.norm_inf() * 1e-6 * (1 + 1e-12)


class TestBandedMatrix:
    def test_get_outside_band_is_zero(self):
        a = BandedMatrix(5, 1, 1)
        a.set(2, 3, 4.0)
        assert a.get(2, 3) == 4.0
        assert a.get(0, 4) == 0.0

    def test_set_outside_band_raises(self):
        a = BandedMatrix(5, 1, 1)
        with pytest.raises(IndexError):
            a.set(0, 3, 1.0)

    def test_dense_round_trip(self):
        rng = np.random.default_rng(8)
        a = random_banded(rng, 9, 2, 1, dominant=False)
        d = a.to_dense()
        again = BandedMatrix.from_dense(d, 2, 1)
        assert np.array_equal(again.to_dense(), d)

    def test_matvec_matches_dense(self):
        rng = np.random.default_rng(10)
        a = random_banded(rng, 30, 4, 2, dominant=False)
        x = rng.standard_normal(30)
        assert np.allclose(a.matvec(x), a.to_dense() @ x, rtol=1e-13)


@pytest.mark.skipif(not USING_COMPILED, reason="compiled core not built")
class TestBackendEquivalence:
    def test_bitwise_identical_results(self):
        import febb._band as cband
        import febb._band_py as pband

        rng = np.random.default_rng(77)
        for n, kl, ku in ((30, 3, 3), (80, 7, 4), (60, 0, 2)):
            a = random_banded(rng, n, kl, ku)
            b = rng.standard_normal(n)
            results = []
            for kern in (cband, pband):
                work = np.zeros((n, 2 * kl + ku + 1))
                work[:, : kl + ku + 1] = a.data
                piv = np.zeros(n, dtype=np.int64)
                assert kern.factor(work, n, kl, ku, piv) == 0
                x = b.copy()
                kern.solve_factored(work, n, kl, ku, piv, x)
                results.append((work, piv, x))
            for got, ref in zip(results[0], results[1]):
                assert np.array_equal(got, ref)
