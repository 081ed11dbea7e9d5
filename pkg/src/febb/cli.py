"""Command-line front end: solve | sweep | convergence | identify.

Configuration precedence: command-line flag > config file (flat key=value,
``--config``) > built-in default.  The default beam is the unit benchmark
cantilever (L=1 m, W=T=0.1 m, E=1 Pa, P=1 N).  ``FEBB_THREADS`` caps the
worker pool used by sweep and identify; outputs are byte-identical for any
thread count.

Exit codes: 0 success, 2 configuration/data error, 3 numerical failure.
"""

import argparse
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from . import beam, identify, io
from .errors import ConfigError, NumericError

DEFAULTS = {
    "L": "1.0", "W": "0.1", "T": "0.1", "E": "1.0", "P": "1.0",
    "alpha": "1.0", "ell": "0.06", "m": "60",
    "beta_mode": "corrected", "clamp_mode": "accurate",
    "dx": "0.001",
    "alphas": "0.4,0.5,0.6,0.7,0.8,0.9,0.99",
    # sweep presets: 2*ell <= T, then 2*ell <= L (the exact half-length case
    # never admits N >= 2m+2 and is left out)
    "ells": "0.01,0.02,0.03,0.04,0.05,0.1,0.2,0.3,0.4",
    "refinements": "4",
    "m_min": "10", "m_max": "2000",
    "identify_alphas": ",".join("%.2f" % (0.05 * k) for k in range(1, 21)),
    "identify_ells": ",".join("%.0e" % (1e-5 * k) for k in range(1, 21)),
}

CONFIG_KEYS = set(DEFAULTS) | {"data", "out"}

OUT_DEFAULTS = {"solve": "profile.csv", "sweep": "sweep.csv",
                "convergence": "convergence.csv", "identify": "fit_records.csv"}


def _threads() -> int:
    raw = os.environ.get("FEBB_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError as exc:
        raise ConfigError(f"FEBB_THREADS must be an integer, got {raw!r}") from exc


def _float(cfg, key) -> float:
    try:
        return float(cfg[key])
    except ValueError as exc:
        raise ConfigError(f"{key} must be a number, got {cfg[key]!r}") from exc


def _int(cfg, key) -> int:
    try:
        return int(cfg[key])
    except ValueError as exc:
        raise ConfigError(f"{key} must be an integer, got {cfg[key]!r}") from exc


def _floats(cfg, key) -> list:
    try:
        vals = [float(tok) for tok in cfg[key].split(",") if tok.strip()]
    except ValueError as exc:
        raise ConfigError(f"{key} must be a comma list of numbers, "
                          f"got {cfg[key]!r}") from exc
    if not vals:
        raise ConfigError(f"{key} must not be empty")
    return vals


def build_config(args: argparse.Namespace) -> dict:
    cfg = dict(DEFAULTS)
    cfg["out"] = OUT_DEFAULTS[args.mode]
    if args.mode == "identify":
        cfg["alphas"] = cfg.pop("identify_alphas")
        cfg["ells"] = cfg.pop("identify_ells")
    else:
        cfg.pop("identify_alphas")
        cfg.pop("identify_ells")
    if args.config is not None:
        if not os.path.exists(args.config):
            raise ConfigError(f"config file not found: {args.config}")
        for key, value in io.parse_config_file(args.config).items():
            if key not in CONFIG_KEYS:
                raise ConfigError(f"{args.config}: unknown key {key!r}")
            if key in ("identify_alphas", "identify_ells"):
                raise ConfigError(f"{args.config}: set 'alphas'/'ells' instead "
                                  f"of {key!r}")
            cfg[key] = value
    overrides = {
        "L": args.L, "W": args.W, "T": args.T, "E": args.E, "P": args.P,
        "alpha": args.alpha, "ell": args.ell, "m": args.m,
        "beta_mode": args.beta_mode, "clamp_mode": args.clamp_mode,
        "out": args.out, "data": args.data,
        "dx": getattr(args, "dx", None),
        "alphas": getattr(args, "alphas", None),
        "ells": getattr(args, "ells", None),
        "refinements": getattr(args, "refinements", None),
        "m_min": getattr(args, "m_min", None),
        "m_max": getattr(args, "m_max", None),
    }
    for key, value in overrides.items():
        if value is not None:
            cfg[key] = value
    if cfg["beta_mode"] not in beam.BETA_MODES:
        raise ConfigError(f"beta_mode must be one of {beam.BETA_MODES}")
    if cfg["clamp_mode"] not in beam.CLAMP_MODES:
        raise ConfigError(f"clamp_mode must be one of {beam.CLAMP_MODES}")
    return cfg


def _beam_spec(cfg) -> beam.BeamSpec:
    try:
        return beam.BeamSpec(_float(cfg, "L"), _float(cfg, "W"),
                             _float(cfg, "T"), _float(cfg, "E"),
                             _float(cfg, "P"))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def run_solve(cfg) -> int:
    spec = _beam_spec(cfg)
    try:
        params = beam.FractionalParams(_float(cfg, "alpha"), _float(cfg, "ell"),
                                       _int(cfg, "m"))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    field = beam.solve_deflection(spec, params, cfg["beta_mode"],
                                  cfg["clamp_mode"])
    io.write_profile_csv(cfg["out"], beam.postprocess(field))
    print(f"solve: N={field.grid.n} dx={field.grid.dx:g} "
          f"tip={beam.tip_deflection(field):.12e} -> {cfg['out']}")
    return 0


def _sweep_column(spec, ell, dx, alphas, beta_mode, clamp_mode):
    m = int(round(ell / dx))
    if m < 2 or abs(m * dx - ell) > 1e-9 * ell:
        raise ConfigError(f"ell={ell} is not an integer multiple (>= 2) of "
                          f"dx={dx}")
    base = beam.FractionalParams(1.0, ell, m)
    w_classical = beam.tip_deflection(
        beam.solve_deflection(spec, base, beta_mode, clamp_mode))
    rows = []
    for alpha in alphas:
        w_frac = beam.tip_deflection(
            beam.solve_deflection(spec, base.with_alpha(alpha), beta_mode,
                                  clamp_mode))
        rows.append((alpha, ell, w_frac / w_classical))
    return rows


def run_sweep(cfg) -> int:
    spec = _beam_spec(cfg)
    dx = _float(cfg, "dx")
    alphas = sorted(_floats(cfg, "alphas"))
    ells = sorted(_floats(cfg, "ells"))
    jobs = [(spec, ell, dx, alphas, cfg["beta_mode"], cfg["clamp_mode"])
            for ell in ells]
    threads = _threads()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            columns = list(pool.map(lambda j: _sweep_column(*j), jobs))
    else:
        columns = [_sweep_column(*j) for j in jobs]
    rows = [row for col in columns for row in col]
    io.write_sweep_csv(cfg["out"], rows)
    print(f"sweep: {len(rows)} rows -> {cfg['out']}")
    return 0


def run_convergence(cfg) -> int:
    spec = _beam_spec(cfg)
    alpha = _float(cfg, "alpha")
    ell = _float(cfg, "ell")
    m0 = _int(cfg, "m")
    k = _int(cfg, "refinements")
    if k < 3:
        raise ConfigError(f"need at least 3 refinements, got {k}")
    tips = []
    dxs = []
    for step in range(k):
        params = beam.FractionalParams(alpha, ell, m0 * 2**step)
        field = beam.solve_deflection(spec, params, cfg["beta_mode"],
                                      cfg["clamp_mode"])
        dxs.append(params.dx)
        tips.append(beam.tip_deflection(field))
    rows = []
    for i in range(k):
        order = None
        if i >= 2:
            num = abs(tips[i - 1] - tips[i - 2])
            den = abs(tips[i] - tips[i - 1])
            if den > 0.0 and num > 0.0:
                order = math.log2(num / den)
        rows.append((dxs[i], tips[i], order))
    io.write_convergence_csv(cfg["out"], rows)
    finest = rows[-1][2]
    print(f"convergence: finest observed order = "
          f"{'n/a' if finest is None else f'{finest:.3f}'} -> {cfg['out']}")
    return 0


def run_identify(cfg) -> int:
    if "data" not in cfg or not cfg["data"]:
        raise ConfigError("identify requires --data <experiment csv>")
    if not os.path.exists(cfg["data"]):
        raise ConfigError(f"data file not found: {cfg['data']}")
    groups = io.load_experiment_csv(cfg["data"])
    alphas = sorted(_floats(cfg, "alphas"))
    ells = sorted(_floats(cfg, "ells"))
    m_min, m_max = _int(cfg, "m_min"), _int(cfg, "m_max")
    result = identify.fit(groups, alphas, ells, m_min=m_min, m_max=m_max,
                          threads=_threads())
    predictions = [
        [identify.predict_enl(r.length, r.width, r.thickness,
                              result.alpha_per_group[gi], result.ell,
                              result.modulus, m_min=m_min, m_max=m_max)
         for r in g.records]
        for gi, g in enumerate(groups)
    ]
    records_path = cfg["out"]
    stem, dot, ext = records_path.rpartition(".")
    summary_path = (stem + "_summary." + ext) if dot else records_path + "_summary"
    io.write_fit_csvs(records_path, summary_path, groups, result, predictions)
    alphas_txt = ", ".join(f"group{gi}(T={g.thickness / 1e-6:g}um): "
                           f"alpha={result.alpha_per_group[gi]:g}"
                           for gi, g in enumerate(groups))
    print(f"identify: ell={result.ell / 1e-6:g}um "
          f"E={result.modulus / 1e9:.6g}GPa objective={result.objective:.6e} "
          f"[{alphas_txt}] -> {records_path}, {summary_path}")
    return 0


RUNNERS = {"solve": run_solve, "sweep": run_sweep,
           "convergence": run_convergence, "identify": run_identify}


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="febb",
        description="Non-local cantilever bending: solve, sweep, convergence "
                    "study, and stiffness-data identification.")
    sub = parser.add_subparsers(dest="mode", required=True)
    for mode in RUNNERS:
        p = sub.add_parser(mode)
        p.add_argument("--alpha", help="fractional order in (0, 1]")
        p.add_argument("--ell", help="length scale (m)")
        p.add_argument("--m", help="terminal resolution (grid steps per ell)")
        p.add_argument("--L", help="beam length (m)")
        p.add_argument("--W", help="beam width (m)")
        p.add_argument("--T", help="beam thickness (m)")
        p.add_argument("--E", help="elastic modulus (Pa)")
        p.add_argument("--P", help="tip load (N)")
        p.add_argument("--beta-mode", dest="beta_mode",
                       choices=beam.BETA_MODES,
                       help="row scale: corrected (default) or literal paper")
        p.add_argument("--clamp-mode", dest="clamp_mode",
                       choices=beam.CLAMP_MODES,
                       help="clamped-rotation row: accurate (default) or "
                            "literal w1=0")
        p.add_argument("--config", help="flat key=value config file")
        p.add_argument("--data", help="experiment CSV (identify)")
        p.add_argument("--out", help="output CSV path")
        if mode == "sweep":
            p.add_argument("--dx", help="grid step shared by all ells (m)")
            p.add_argument("--alphas", help="comma list of orders")
            p.add_argument("--ells", help="comma list of length scales (m)")
        if mode == "convergence":
            p.add_argument("--refinements",
                           help="number of m-doubling refinements (>= 3)")
        if mode == "identify":
            p.add_argument("--alphas", help="comma list: alpha search grid")
            p.add_argument("--ells", help="comma list: ell search grid (m)")
            p.add_argument("--m-min", dest="m_min",
                           help="minimum terminal resolution")
            p.add_argument("--m-max", dest="m_max",
                           help="maximum terminal resolution")
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        cfg = build_config(args)
        return RUNNERS[args.mode](cfg)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
