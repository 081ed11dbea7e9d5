"""Size-effect parameter identification from bending-stiffness data.

An AFM bending test reports the apparent modulus backed out of the classical
stiffness formula, ``E_nl = 4 L**3/(W T**3) * P/w``.  The model predicts the
same quantity from its numerical tip deflection, which makes ``E_nl``
exactly linear in the true modulus E:

    predict(L, W, T; alpha, ell, E) = E * rho(L; alpha, ell)

with ``rho`` a stiffness ratio independent of W, T, P and E.  Fitting is an
exhaustive grid search over ell (shared) and one alpha per cross-section
group, with the inner E solved in closed form.
"""

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .beam import BeamSpec, FractionalParams, solve_deflection, tip_deflection
from .errors import ConfigError

__all__ = [
    "ExperimentRecord", "SeriesGroup", "FitResult", "choose_half_width",
    "predict_enl", "optimal_modulus", "objective", "fit",
]


@dataclass(frozen=True)
class ExperimentRecord:
    """One measured sample (SI units: lengths m, modulus Pa)."""

    length: float
    width: float
    thickness: float
    modulus_nl: float

    def __post_init__(self):
        for name in ("length", "width", "thickness", "modulus_nl"):
            v = getattr(self, name)
            if not (v > 0.0 and np.isfinite(v)):
                raise ValueError(f"{name} must be positive and finite, got {v}")


@dataclass(frozen=True)
class SeriesGroup:
    """Records sharing one cross-section (W, T), lengths varying."""

    width: float
    thickness: float
    records: tuple

    def __post_init__(self):
        if len(self.records) < 2:
            raise ValueError("a series group needs at least 2 records")
        for r in self.records:
            if (abs(r.width - self.width) > 1e-9 * self.width
                    or abs(r.thickness - self.thickness) > 1e-9 * self.thickness):
                raise ValueError("record cross-section differs from the group's")


@dataclass(frozen=True)
class FitResult:
    alpha_per_group: tuple
    ell: float
    modulus: float
    objective: float


def choose_half_width(length: float, ell: float, m_min: int = 10,
                      m_max: int = 2000) -> int:
    """Smallest admissible m: L/(ell/m) integral (1e-9) and N >= 2m+2.

    Experimental lengths are generally incommensurate with a fixed step, so
    the terminal resolution is chosen per (L, ell) pair.
    """
    if ell <= 0.0 or length <= 0.0:
        raise ValueError("length and ell must be positive")
    for m in range(m_min, m_max + 1):
        f = length * m / ell
        n = round(f)
        if abs(f - n) <= 1e-9 * max(1.0, abs(f)) and n >= 2 * m + 2:
            return m
    raise ConfigError(
        f"no admissible grid for L={length} ell={ell} with m in "
        f"[{m_min}, {m_max}]")


def _tip(length: float, alpha: float, ell: float, m: int,
         modulus: float, load: float) -> float:
    # section constants cancel from the stiffness ratio; any positive W, T do
    spec = BeamSpec(length, 1.0, 1.0, modulus, load)
    params = FractionalParams(alpha, ell, m)
    return tip_deflection(solve_deflection(spec, params))


def stiffness_ratio(length: float, alpha: float, ell: float,
                    m_min: int = 10, m_max: int = 2000) -> float:
    """Model stiffness per unit modulus: predict_enl at E = 1.

    Equals ``4 L**3/(W T**3) * P / |w|`` with unit modulus; W, T and P drop
    out exactly (w scales with P/(E*I)).
    """
    m = choose_half_width(length, ell, m_min, m_max)
    tip = _tip(length, alpha, ell, m, 1.0, 1.0)
    if tip == 0.0:
        raise ConfigError(f"zero tip deflection at L={length} alpha={alpha} "
                          f"ell={ell}")
    # unit section here has I = 1/12, so 4L^3/(W T^3) * P/|w| = L^3/(3 I |w|)
    return 4.0 * length**3 / abs(tip)


def predict_enl(length: float, width: float, thickness: float, alpha: float,
                ell: float, modulus: float, load: float = 1.0,
                m_min: int = 10, m_max: int = 2000) -> float:
    """Apparent (non-local) modulus of one geometry under the model.

    Classical stiffness formula applied to the numerical deflection computed
    at modulus E; exactly proportional to E and independent of the probe
    load.
    """
    m = choose_half_width(length, ell, m_min, m_max)
    spec = BeamSpec(length, width, thickness, modulus, load)
    params = FractionalParams(alpha, ell, m)
    tip = tip_deflection(solve_deflection(spec, params))
    if tip == 0.0:
        raise ConfigError(f"zero tip deflection at L={length} alpha={alpha} "
                          f"ell={ell}")
    return 4.0 * length**3 / (width * thickness**3) * load / abs(tip)


def optimal_modulus(ratios, measured) -> float:
    """Closed-form minimizer of sum (E*r_i - e_i)**2 over E."""
    r = np.asarray(ratios, dtype=float)
    e = np.asarray(measured, dtype=float)
    if r.size == 0 or r.size != e.size:
        raise ValueError("need equally many ratios and measurements, >= 1")
    if not (r > 0.0).all():
        raise ValueError("stiffness ratios must be positive")
    return float((r @ e) / (r @ r))


def objective(groups, alpha_per_group, ell: float, modulus: float,
              m_min: int = 10, m_max: int = 2000) -> float:
    """Pooled squared residual of predicted vs measured moduli (Pa^2)."""
    if len(alpha_per_group) != len(groups):
        raise ValueError("one alpha per group required")
    total = 0.0
    for g, alpha in zip(groups, alpha_per_group):
        for rec in g.records:
            pred = predict_enl(rec.length, rec.width, rec.thickness, alpha,
                               ell, modulus, m_min=m_min, m_max=m_max)
            total += (pred - rec.modulus_nl) ** 2
    return total


def _ratio_table(groups, alpha_grid, ell, m_min, m_max, threads):
    """rho[(g, i_rec, i_alpha)] for one ell, or None if ell inadmissible."""
    lengths = sorted({rec.length for g in groups for rec in g.records})
    try:
        for length in lengths:
            choose_half_width(length, ell, m_min, m_max)
    except ConfigError:
        return None
    jobs = [(length, alpha) for length in lengths for alpha in alpha_grid]

    def run(job):
        length, alpha = job
        return stiffness_ratio(length, alpha, ell, m_min, m_max)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            vals = list(pool.map(run, jobs))
    else:
        vals = [run(j) for j in jobs]
    return dict(zip(jobs, vals))


def fit(groups, alpha_grid, ell_grid, m_min: int = 10, m_max: int = 2000,
        threads: int = 1) -> FitResult:
    """Exhaustive search over ell and per-group alpha with closed-form E.

    Ties break deterministically to the smallest ell, then the
    lexicographically smallest alpha combination (grids are scanned in
    ascending order and only strict improvements are kept).  ell values for
    which some record admits no grid are skipped; if none survive, raises.
    """
    if not groups:
        raise ValueError("need at least one series group")
    alpha_grid = sorted(alpha_grid)
    ell_grid = sorted(ell_grid)
    if not alpha_grid or not ell_grid:
        raise ValueError("alpha and ell grids must be non-empty")

    e_all = np.concatenate(
        [np.array([r.modulus_nl for r in g.records]) for g in groups])
    best = None
    for ell in ell_grid:
        table = _ratio_table(groups, alpha_grid, ell, m_min, m_max, threads)
        if table is None:
            continue
        rho = [
            np.array([[table[(rec.length, alpha)] for rec in g.records]
                      for alpha in alpha_grid])
            for g in groups
        ]
        for combo in itertools.product(range(len(alpha_grid)),
                                       repeat=len(groups)):
            r = np.concatenate([rho[g][ia] for g, ia in enumerate(combo)])
            e_star = float((r @ e_all) / (r @ r))
            obj = float(((e_star * r - e_all) ** 2).sum())
            if best is None or obj < best[0]:
                best = (obj, ell, combo, e_star)
    if best is None:
        raise ConfigError("no admissible (L, ell) combination in the grids")
    obj, ell, combo, e_star = best
    alphas = tuple(alpha_grid[i] for i in combo)
    return FitResult(alphas, ell, e_star, obj)
