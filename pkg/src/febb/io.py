"""File formats: experiment CSV ingestion, result CSV emission, config files.

All files are deterministic: fixed headers, fixed row order, 17 significant
digits in scientific notation, no timestamps.  Experimental data travel in
micrometers/GPa and are converted to SI at this boundary only.
"""

import csv

from .errors import ConfigError
from .identify import ExperimentRecord, SeriesGroup

EXPERIMENT_HEADER = ("L_um", "W_um", "T_um", "E_nl_GPa")
PROFILE_HEADER = ("x_m", "w_m", "kappa", "M2_Nm", "F3_N", "sigma_top_Pa")
SWEEP_HEADER = ("alpha", "ell_m", "ratio")
CONVERGENCE_HEADER = ("dx_m", "tip_m", "observed_order")
RECORDS_HEADER = ("group", "L_um", "W_um", "T_um", "E_nl_GPa",
                  "E_nl_pred_GPa", "residual_GPa")
SUMMARY_HEADER = ("group", "W_um", "T_um", "alpha", "ell_um", "E_GPa",
                  "objective_GPa2")

UM = 1e-6
GPA = 1e9


def fmt(x: float) -> str:
    """17 significant digits, scientific notation."""
    return "%.16e" % float(x)


def load_experiment_csv(path) -> list:
    """Parse measured stiffness data into cross-section groups.

    Header must be exactly ``L_um,W_um,T_um,E_nl_GPa``.  Records are
    converted to SI, grouped by (W, T) at 1e-9 relative tolerance, groups
    sorted by thickness (then width) ascending, records by length ascending.
    Every group needs at least two lengths.
    """
    try:
        with open(path, newline="") as f:
            rows = list(csv.reader(f))
    except OSError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    if not rows or tuple(c.strip() for c in rows[0]) != EXPERIMENT_HEADER:
        got = ",".join(rows[0]) if rows else "<empty file>"
        raise ConfigError(
            f"{path}:0: header must be {','.join(EXPERIMENT_HEADER)!r}, "
            f"got {got!r}")
    records = []
    for lineno, row in enumerate(rows[1:], start=1):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if len(row) != 4:
            raise ConfigError(f"{path}:{lineno}: expected 4 cells, got {len(row)}")
        try:
            l_um, w_um, t_um, e_gpa = (float(c) for c in row)
        except ValueError as exc:
            raise ConfigError(f"{path}:{lineno}: non-numeric cell ({exc})") from exc
        try:
            records.append(ExperimentRecord(l_um * UM, w_um * UM, t_um * UM,
                                            e_gpa * GPA))
        except ValueError as exc:
            raise ConfigError(f"{path}:{lineno}: {exc}") from exc
    if not records:
        raise ConfigError(f"{path}: no data rows")

    keys = []          # representative (W, T) per group, discovery order
    buckets = []
    for rec in records:
        for key, bucket in zip(keys, buckets):
            if (abs(rec.width - key[0]) <= 1e-9 * key[0]
                    and abs(rec.thickness - key[1]) <= 1e-9 * key[1]):
                bucket.append(rec)
                break
        else:
            keys.append((rec.width, rec.thickness))
            buckets.append([rec])
    order = sorted(range(len(keys)), key=lambda i: (keys[i][1], keys[i][0]))
    groups = []
    for i in order:
        bucket = sorted(buckets[i], key=lambda r: r.length)
        if len(bucket) < 2:
            raise ConfigError(
                f"{path}: group W={keys[i][0] / UM:g}um T={keys[i][1] / UM:g}um "
                f"has {len(bucket)} record(s); need >= 2")
        groups.append(SeriesGroup(keys[i][0], keys[i][1], tuple(bucket)))
    return groups


def write_experiment_csv(path, groups) -> None:
    with open(path, "w", newline="") as f:
        f.write(",".join(EXPERIMENT_HEADER) + "\n")
        for g in groups:
            for r in g.records:
                f.write(",".join(fmt(v) for v in
                                 (r.length / UM, r.width / UM,
                                  r.thickness / UM, r.modulus_nl / GPA)) + "\n")


def write_profile_csv(path, profiles) -> None:
    with open(path, "w", newline="") as f:
        f.write(",".join(PROFILE_HEADER) + "\n")
        for i in range(len(profiles.x)):
            f.write(",".join(fmt(v) for v in
                             (profiles.x[i], profiles.w[i], profiles.kappa[i],
                              profiles.moment[i], profiles.shear[i],
                              profiles.sigma_top[i])) + "\n")


def write_sweep_csv(path, rows) -> None:
    """rows: iterable of (alpha, ell, ratio), already in output order."""
    with open(path, "w", newline="") as f:
        f.write(",".join(SWEEP_HEADER) + "\n")
        for alpha, ell, ratio in rows:
            f.write(f"{fmt(alpha)},{fmt(ell)},{fmt(ratio)}\n")


def write_convergence_csv(path, rows) -> None:
    """rows: iterable of (dx, tip, order-or-None)."""
    with open(path, "w", newline="") as f:
        f.write(",".join(CONVERGENCE_HEADER) + "\n")
        for dx, tip, order in rows:
            tail = "nan" if order is None else fmt(order)
            f.write(f"{fmt(dx)},{fmt(tip)},{tail}\n")


def write_fit_csvs(records_path, summary_path, groups, result,
                   predictions) -> None:
    """Per-record comparison plus the fitted-parameter summary.

    ``predictions[gi][ri]`` is the predicted modulus (Pa) for record ri of
    group gi at the fitted parameters.
    """
    with open(records_path, "w", newline="") as f:
        f.write(",".join(RECORDS_HEADER) + "\n")
        for gi, g in enumerate(groups):
            for ri, r in enumerate(g.records):
                pred = predictions[gi][ri]
                f.write(f"{gi}," + ",".join(fmt(v) for v in
                        (r.length / UM, r.width / UM, r.thickness / UM,
                         r.modulus_nl / GPA, pred / GPA,
                         (pred - r.modulus_nl) / GPA)) + "\n")
    with open(summary_path, "w", newline="") as f:
        f.write(",".join(SUMMARY_HEADER) + "\n")
        for gi, g in enumerate(groups):
            f.write(f"{gi}," + ",".join(fmt(v) for v in
                    (g.width / UM, g.thickness / UM,
                     result.alpha_per_group[gi], result.ell / UM,
                     result.modulus / GPA,
                     result.objective / GPA**2)) + "\n")


def parse_config_file(path) -> dict:
    """Flat key=value file; '#' starts a comment; blank lines ignored."""
    out = {}
    try:
        with open(path) as f:
            lines = f.readlines()
    except OSError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, value = line.split("=", 1)
        out[key.strip()] = value.strip()
    return out
