"""Discrete Riesz-Caputo machinery for the beam slope.

The non-local bending operator acts on the slope w' through a symmetric pair
of Caputo derivatives with terminals ``x - h`` and ``x + h``, ``h = m*dx``:

    D[w'](x) = (Gamma(2-a)/2) * (leftCaputo[w'](x) - rightCaputo[w'](x))

Each one-sided derivative is an integral of w'' against the kernel
``|x - tau|**(-a) / Gamma(1-a)``.  The discretization interpolates w''
piecewise-linearly on the grid (product trapezoidal rule, weights ``c[k]``)
and replaces each w'' sample by the three-point central difference of w.
Composing the two stages gives one finite stencil per side:

    left  support: offsets -m-1 .. +1     (weights v1)
    right support: offsets -1   .. m+1    (v2, exact mirror of v1)

Both stencils annihilate constants and linears, and at a = 1 collapse to the
classical ``[1, -2, 1]`` second difference.

``direct_quadrature_left`` integrates the same piecewise-linear interpolant
in closed form per subinterval, straight from the kernel antiderivatives; it
is the independent check on the closed-form weights and never touches them.
"""

from dataclasses import dataclass
from math import gamma

import numpy as np

__all__ = [
    "CaputoStencil",
    "trapezoid_coeffs",
    "left_caputo_stencil",
    "right_caputo_stencil",
    "apply_rc_slope_derivative",
    "direct_quadrature_left",
]


def _check_order(alpha: float) -> None:
    if not (0.0 < alpha <= 1.0):
        raise ValueError(f"fractional order must lie in (0, 1], got {alpha}")


def _check_half_width(m: int) -> None:
    if not (isinstance(m, (int, np.integer)) and m >= 2):
        raise ValueError(f"stencil half-width must be an integer >= 2, got {m}")


def _pw(base: float, expo: float) -> float:
    # 0**p := 0 for the p > 0 exponents used here
    return 0.0 if base == 0.0 else base**expo


def trapezoid_coeffs(alpha: float, m: int) -> np.ndarray:
    """Product-trapezoidal weights c[0..m] on w'' samples.

    ``c[k]`` multiplies the sample k grid steps from the evaluation node
    toward the terminal; the common factor ``dx**(1-a) / Gamma(3-a)`` is kept
    out of the weights.
    """
    _check_order(alpha)
    _check_half_width(m)
    p = 2.0 - alpha
    c = np.empty(m + 1)
    c[0] = 1.0
    for k in range(1, m):
        c[k] = _pw(k - 1.0, p) - 2.0 * k**p + (k + 1.0) ** p
    c[m] = _pw(m - 1.0, p) - (m + alpha - 2.0) * m ** (1.0 - alpha)
    return c


@dataclass(frozen=True)
class CaputoStencil:
    """Finite-weight form of one one-sided Caputo derivative of the slope.

    ``weights[i]`` belongs to node offset ``offsets[i]``; contracting with
    deflection samples and scaling by ``dx**(-1-a) / Gamma(3-a)`` gives the
    left Caputo derivative of w' (for ``side == "left"``) or the negated
    right one (``side == "right"``).
    """

    side: str
    alpha: float
    m: int
    offsets: np.ndarray
    weights: np.ndarray

    def weight(self, offset: int) -> float:
        """Weight at a node offset (0 outside the support)."""
        lo = int(self.offsets[0])
        if lo <= offset <= int(self.offsets[-1]):
            return float(self.weights[offset - lo])
        return 0.0


def left_caputo_stencil(alpha: float, m: int) -> CaputoStencil:
    """Deflection-space weights of the left Caputo slope derivative.

    Built by composing :func:`trapezoid_coeffs` with the central second
    difference ``[1, -2, 1]`` at every sampled node (terminal included), so
    the support runs from offset ``-m-1`` to ``+1``.
    """
    c = trapezoid_coeffs(alpha, m)
    w = np.zeros(m + 3)  # offsets -m-1 .. +1, index d + m + 1
    for k in range(m + 1):
        base = m - k  # index of offset -k-1
        w[base] += c[k]
        w[base + 1] -= 2.0 * c[k]
        w[base + 2] += c[k]
    return CaputoStencil("left", alpha, m, np.arange(-m - 1, 2), w)


def right_caputo_stencil(alpha: float, m: int) -> CaputoStencil:
    """Mirror of the left stencil: weight at +k equals the left weight at -k.

    The contraction approximates the negated right Caputo derivative, i.e.
    ``(1/Gamma(1-a)) * integral of w''(tau) (tau-x)**(-a)`` over the right
    terminal interval, in the same scaling as the left stencil.
    """
    left = left_caputo_stencil(alpha, m)
    return CaputoStencil("right", alpha, m, -left.offsets[::-1],
                         left.weights[::-1].copy())


def apply_rc_slope_derivative(samples, alpha: float, m: int, dx: float) -> float:
    """Riesz-Caputo derivative of the slope at the center of ``samples``.

    ``samples`` holds deflections at offsets ``-m-1 .. m+1`` (length
    ``2m + 3``).  Includes the symmetric-combination prefactor
    ``Gamma(2-a)/2``, so at a = 1 the value equals the plain central second
    difference; on quadratics it is exactly ``2*a2*(m*dx)**(1-a)``.
    """
    _check_order(alpha)
    _check_half_width(m)
    if dx <= 0.0:
        raise ValueError(f"grid step must be positive, got {dx}")
    s = np.asarray(samples, dtype=float)
    if s.shape != (2 * m + 3,):
        raise ValueError(f"need {2 * m + 3} samples for m={m}, got {s.shape}")
    v1 = left_caputo_stencil(alpha, m)
    v2 = right_caputo_stencil(alpha, m)
    total = float(v1.weights @ s[: m + 3])
    total += float(v2.weights @ s[m : 2 * m + 3])
    pref = 0.5 * gamma(2.0 - alpha) / gamma(2.0)
    return pref * dx ** (-1.0 - alpha) / gamma(3.0 - alpha) * total


def direct_quadrature_left(second_derivative_samples, alpha: float, m: int,
                           dx: float) -> float:
    """Left Caputo slope derivative by exact piecewise-linear quadrature.

    ``second_derivative_samples[k]`` is w'' at k grid steps from the
    evaluation point toward the terminal (k = 0..m).  Each subinterval of the
    linear interpolant is integrated in closed form against the kernel
    ``(x - tau)**(-a)``; the a = 1 limit of the quadrature is the sample at
    the evaluation point.  Serves as the independent oracle for
    :func:`trapezoid_coeffs`.
    """
    _check_order(alpha)
    _check_half_width(m)
    if dx <= 0.0:
        raise ValueError(f"grid step must be positive, got {dx}")
    g = np.asarray(second_derivative_samples, dtype=float)
    if g.shape != (m + 1,):
        raise ValueError(f"need {m + 1} samples for m={m}, got {g.shape}")
    if alpha == 1.0:
        return float(g[0])
    p1 = 1.0 - alpha
    p2 = 2.0 - alpha
    total = 0.0
    for k in range(m):
        i1 = ((k + 1.0) ** p1 - k**p1) / p1          # int s^-a ds
        i2 = ((k + 1.0) ** p2 - k**p2) / p2          # int s^(1-a) ds
        total += g[k] * i1 + (g[k + 1] - g[k]) * (i2 - k * i1)
    return dx**p1 / gamma(p1) * total
