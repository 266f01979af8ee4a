"""Time the numba kernels against the numpy fallback on fixed workloads.

    python3 benchmarks/bench_kernels.py [--repeats 5] [--json out.json]

Numba timings exclude the first (compiling) call.
"""

import argparse
import json
import time

import numpy as np

from semiconj import kernels


def _aberth_case(deg=48, seed=0):
    rng = np.random.default_rng(seed)
    c = rng.normal(size=deg + 1) + 1j * rng.normal(size=deg + 1)
    z0 = 1.1 * np.exp(2j * np.pi * (np.arange(deg) + 0.25) / deg)
    return (c, z0, 500, 1e-14)


def _track_case(d=12):
    # lift the fiber of z^d + z over the circle |t| = 3 once around
    nc = np.zeros(d + 1, dtype=np.complex128)
    nc[1], nc[d] = 1.0, 1.0
    dc = np.array([1.0], dtype=np.complex128)
    t0 = 3.0
    z0 = np.roots(nc[::-1] - np.r_[np.zeros(d), t0])
    prm = np.array([0.0, 3.0, 0.0, 2 * np.pi], dtype=np.complex128)
    return (nc, dc, kernels.ARC, prm, z0.astype(np.complex128), 0.01, 2.0**-40)


def _poincare_case(order=64):
    # 2z^2 - 1 expanded at its fixed point -1/2: 2w^2 - 2w shifted to w = z + 1/2
    a = np.zeros(order + 1, dtype=np.complex128)
    a[1], a[2] = -2.0, 2.0
    return (a, -2.0 + 0j, order)


CASES = {
    "aberth": ("aberth", _aberth_case),
    "track_piece": ("track_piece", _track_case),
    "poincare_coeffs": ("poincare_coeffs", _poincare_case),
}


def _time(fn, args, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def run(repeats=5):
    rows = []
    for name, (attr, make) in CASES.items():
        args = make()
        row = {"kernel": name}
        for be in ("numpy", "numba"):
            fn = getattr(kernels.backend(be), attr)
            fn(*args)  # warm-up / compile
            row[be] = _time(fn, args, repeats)
        row["speedup"] = row["numpy"] / row["numba"] if row["numba"] > 0 else float("inf")
        rows.append(row)
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--json")
    args = ap.parse_args(argv)
    rows = run(args.repeats)
    print(f"{'kernel':<18}{'numpy [s]':>12}{'numba [s]':>12}{'speedup':>10}")
    for r in rows:
        print(f"{r['kernel']:<18}{r['numpy']:>12.5f}{r['numba']:>12.5f}{r['speedup']:>9.1f}x")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2)


if __name__ == "__main__":
    main()
