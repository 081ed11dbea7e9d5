import math

import numpy as np
import pytest

from febb import (apply_rc_slope_derivative, direct_quadrature_left,
                  left_caputo_stencil, right_caputo_stencil, trapezoid_coeffs)

ALPHAS = (0.1, 0.3, 0.5, 0.8, 1.0)
MS = (2, 3, 5, 8)


def printed_left_table(alpha, m):
    """Left-stencil weights as printed (both corrected entries), offset->w.

    The reference tables carry two typos fixed here: the offset -1 entry for
    m > 2 needs +3**(2-a), and the offset -(m-1) entry for m > 2 needs
    -2*m**(2-a).  Both follow from the composition and the a=1 limit.
    """
    p = 2.0 - alpha
    tab = {
        -m - 1: (m - 1) ** p - (m + alpha - 2) * m ** (1 - alpha),
        -m: ((m - 2) ** p if m > 2 else 0.0) - 4 * (m - 1) ** p
            + 2 * (m + alpha - 2) * m ** (1 - alpha) + m**p,
        0: 2**p - 4,
        1: 1.0,
    }
    if m == 2:
        tab[-1] = (-2 * 0.0 + 5 * (m - 1) ** p
                   - (m + alpha - 2) * m ** (1 - alpha) - 2 * m**p + 1)
    else:
        tab[-1] = 6 - 4 * 2**p + 3**p
        tab[-m + 1] = ((m - 3) ** p if m > 3 else 0.0) - 4 * (m - 2) ** p \
            + 6 * (m - 1) ** p - (m + alpha - 2) * m ** (1 - alpha) - 2 * m**p
    if m > 3:
        for k in range(2, m - 1):
            tab[-k] = ((k - 2) ** p if k > 2 else 0.0) - 4 * (k - 1) ** p \
                + 6 * k**p - 4 * (k + 1) ** p + (k + 2) ** p
    return tab


class TestTrapezoidCoeffs:
    def test_half_order_m2(self):
        c = trapezoid_coeffs(0.5, 2)
        assert c == pytest.approx([1.0, 0.828427, 0.292893], abs=1e-6)

    def test_order_one_collapses(self):
        assert trapezoid_coeffs(1.0, 3) == pytest.approx([1, 0, 0, 0], abs=0)

    def test_leading_weight_is_one(self):
        assert trapezoid_coeffs(0.5, 2)[0] == 1.0

    def test_constant_integrand_sum(self):
        # sum c[k] must integrate a constant exactly: (2-a) * m**(1-a)
        for alpha in (0.2, 0.5, 0.9):
            for m in MS:
                c = trapezoid_coeffs(alpha, m)
                assert c.sum() == pytest.approx(
                    (2 - alpha) * m ** (1 - alpha), rel=1e-13)

    @pytest.mark.parametrize("alpha", (0.0, -0.2, 1.0001, 2.0))
    def test_rejects_bad_order(self, alpha):
        with pytest.raises(ValueError):
            trapezoid_coeffs(alpha, 4)

    @pytest.mark.parametrize("m", (0, 1, -3))
    def test_rejects_bad_half_width(self, m):
        with pytest.raises(ValueError):
            trapezoid_coeffs(0.5, m)


class TestStencils:
    def test_far_right_weight_is_one(self):
        for alpha in ALPHAS:
            assert left_caputo_stencil(alpha, 4).weight(1) == 1.0

    def test_center_weight_half_order(self):
        v = left_caputo_stencil(0.5, 4)
        assert v.weight(0) == pytest.approx(2**1.5 - 4, abs=1e-12)
        assert v.weight(0) == pytest.approx(-1.171573, abs=1e-6)

    def test_classical_limit_exact(self):
        for m in MS:
            for stencil in (left_caputo_stencil(1.0, m),
                            right_caputo_stencil(1.0, m)):
                for off, w in zip(stencil.offsets, stencil.weights):
                    expect = {-1: 1.0, 0: -2.0, 1: 1.0}.get(int(off), 0.0)
                    assert w == expect

    def test_mirror_symmetry_exact(self):
        for alpha in (0.3, 0.7):
            for m in MS:
                v1 = left_caputo_stencil(alpha, m)
                v2 = right_caputo_stencil(alpha, m)
                assert np.array_equal(v2.offsets, -v1.offsets[::-1])
                assert np.array_equal(v2.weights, v1.weights[::-1])
                for k in range(-m - 1, m + 2):
                    assert v2.weight(k) == v1.weight(-k)

    def test_matches_printed_table(self):
        for alpha in (0.3, 0.7, 1.0):
            for m in MS:
                v1 = left_caputo_stencil(alpha, m)
                tab = printed_left_table(alpha, m)
                for off, w in zip(v1.offsets, v1.weights):
                    assert w == pytest.approx(tab.get(int(off), 0.0),
                                              abs=1e-12), (alpha, m, off)

    def test_annihilates_constants_and_linears(self):
        for alpha in ALPHAS:
            for m in MS:
                for stencil in (left_caputo_stencil(alpha, m),
                                right_caputo_stencil(alpha, m)):
                    w = stencil.weights
                    d = stencil.offsets.astype(float)
                    assert abs(w.sum()) < 1e-12
                    assert abs(w @ d) < 1e-12


class TestApplyRcSlopeDerivative:
    def test_constant_gives_zero(self):
        for alpha in (0.4, 1.0):
            s = np.full(2 * 3 + 3, 7.5)
            assert apply_rc_slope_derivative(s, alpha, 3, 0.1) == pytest.approx(
                0.0, abs=1e-12)

    def test_quadratic_exact(self):
        # 5x4 (alpha, m) grid, terminal span h = m*dx = 1; linear and
        # constant parts and an off-center origin must drop out exactly
        for alpha in ALPHAS:
            for m in MS:
                dx = 1.0 / m
                a2, b, c, x0 = 1.25, 0.4, -0.7, 0.3
                x = x0 + np.arange(-m - 1, m + 2) * dx
                w = a2 * x**2 + b * x + c
                got = apply_rc_slope_derivative(w, alpha, m, dx)
                assert got == pytest.approx(2 * a2, rel=1e-12), (alpha, m)

    def test_cubic_at_origin_classical(self):
        dx, m = 0.01, 2
        x = np.arange(-m - 1, m + 2) * dx
        got = apply_rc_slope_derivative(x**3, 1.0, m, dx)
        assert abs(got) <= 1e-4

    def test_classical_equals_central_difference(self):
        rng = np.random.default_rng(11)
        s = rng.standard_normal(2 * 4 + 3)
        dx = 0.05
        got = apply_rc_slope_derivative(s, 1.0, 4, dx)
        cd = (s[4 + 1 - 1] - 2 * s[4 + 1] + s[4 + 1 + 1]) / dx**2
        assert got == pytest.approx(cd, rel=1e-12)

    def test_rejects_wrong_sample_count(self):
        with pytest.raises(ValueError):
            apply_rc_slope_derivative(np.zeros(5), 0.5, 3, 0.1)
        with pytest.raises(ValueError):
            apply_rc_slope_derivative(np.zeros(9), 0.5, 3, 0.0)


class TestDirectQuadrature:
    def test_constant_curvature(self):
        # 2 * h**(1-a) / Gamma(2-a) with h = m*dx = 1
        got = direct_quadrature_left(np.full(5, 2.0), 0.5, 4, 0.25)
        assert got == pytest.approx(2.0 / math.gamma(1.5), rel=1e-12)
        assert got == pytest.approx(2.256758, abs=1e-6)

    def test_zero_curvature(self):
        assert direct_quadrature_left(np.zeros(4), 0.7, 3, 0.1) == 0.0

    def test_agrees_with_coefficient_contraction(self):
        rng = np.random.default_rng(3)
        for alpha in (0.1, 0.3, 0.5, 0.8, 0.99):
            for m in MS:
                g = rng.standard_normal(m + 1)
                dx = 10 ** rng.uniform(-3, 0)
                direct = direct_quadrature_left(g, alpha, m, dx)
                c = trapezoid_coeffs(alpha, m)
                contracted = float(c @ g) * dx ** (1 - alpha) / math.gamma(
                    3 - alpha)
                assert direct == pytest.approx(contracted, rel=1e-12), (alpha, m)

    def test_order_one_limit_is_local_sample(self):
        g = np.array([4.2, -1.0, 0.5])
        assert direct_quadrature_left(g, 1.0, 2, 0.1) == 4.2
        near = direct_quadrature_left(g, 0.999999, 2, 0.1)
        assert near == pytest.approx(4.2, rel=1e-4)
