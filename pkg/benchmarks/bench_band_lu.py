"""Benchmark the compiled band-LU core against the pure-numpy fallback.

Runs factor+solve on seeded random diagonally dominant band systems and on
assembled bending systems at the benchmark grid, reports wall times and
verifies the two backends agree bit for bit.

Usage: python benchmarks/bench_band_lu.py [--repeat N]
"""

import argparse
import time

import numpy as np

import febb
import febb._band_py as fallback

try:
    import febb._band as compiled
except ImportError:
    compiled = None


def run(kernels, data, n, kl, ku, b):
    work = np.zeros((n, 2 * kl + ku + 1))
    work[:, : kl + ku + 1] = data
    piv = np.zeros(n, dtype=np.int64)
    status = kernels.factor(work, n, kl, ku, piv)
    if status != 0:
        raise RuntimeError(f"factor failed: {status}")
    x = b.copy()
    kernels.solve_factored(work, n, kl, ku, piv, x)
    return work, piv, x


def timed(kernels, data, n, kl, ku, b, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = run(kernels, data, n, kl, ku, b)
        best = min(best, time.perf_counter() - t0)
    return best, out


def random_case(rng, n, kl, ku):
    data = rng.standard_normal((n, kl + ku + 1))
    data[:, kl] += 3.0 * (kl + ku + 1)
    return data, rng.standard_normal(n)


def beam_case(alpha, ell, m):
    spec = febb.BeamSpec(1.0, 0.1, 0.1, 1.0, 1.0)
    params = febb.FractionalParams(alpha, ell, m)
    grid = febb.build_grid(spec.length, params)
    system = febb.assemble(spec, params, grid)
    return (system.matrix.data, system.matrix.n, system.matrix.kl,
            system.matrix.ku, system.rhs)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    rng = np.random.default_rng(20240915)
    cases = [("random n=500 kl=ku=10", *random_case(rng, 500, 10, 10), 500, 10, 10),
             ("random n=1000 kl=ku=100", *random_case(rng, 1000, 100, 100), 1000, 100, 100),
             ("random n=1000 kl=ku=400", *random_case(rng, 1000, 400, 400), 1000, 400, 400)]
    # normalize tuple layout: (label, data, b, n, kl, ku)
    cases = [(lbl, d, b, n, kl, ku) for lbl, d, b, n, kl, ku in cases]
    for alpha, ell, m in [(0.8, 0.06, 60), (0.5, 0.3, 300)]:
        data, n, kl, ku, b = beam_case(alpha, ell, m)
        cases.append((f"bending alpha={alpha} ell={ell} m={m} (n={n})",
                      data, b, n, kl, ku))

    print(f"compiled core available: {compiled is not None}")
    header = f"{'case':42s} {'fallback':>10s} {'compiled':>10s} {'speedup':>8s}  bitwise"
    print(header)
    print("-" * len(header))
    for label, data, b, n, kl, ku in cases:
        t_py, out_py = timed(fallback, data, n, kl, ku, b, args.repeat)
        if compiled is None:
            print(f"{label:42s} {t_py:9.4f}s {'-':>10s} {'-':>8s}  -")
            continue
        t_c, out_c = timed(compiled, data, n, kl, ku, b, args.repeat)
        same = all(np.array_equal(a, c) for a, c in zip(out_py, out_c))
        print(f"{label:42s} {t_py:9.4f}s {t_c:9.4f}s {t_py / t_c:7.1f}x  {same}")
        if not same:
            raise SystemExit("backends disagree")


if __name__ == "__main__":
    main()
