"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 5] [--json out.json]

Each row reports the best-of-``repeat`` wall time per call for both backends
and the largest relative difference between their results.  The power-sum
folds share their order and agree bit for bit; the convolution, sign
enumeration and SVD reorder arithmetic and agree to rounding.
"""

from __future__ import annotations

import argparse
import json
import sys
import timeit

import numpy as np

from theta_norms import _kernels as K


def _cases(rng: np.random.Generator):
    x = rng.standard_normal(100_000)
    y = rng.standard_normal(100_000)
    w = rng.uniform(0.0, 1.0, 100_000)
    a = rng.uniform(0.1, 1.0, 100_000)
    h1, h2 = rng.uniform(0.0, 1.0, 1000), rng.uniform(0.0, 1.0, 1000)
    k, f = rng.standard_normal(512), rng.standard_normal(512)
    M = rng.uniform(-1.0, 1.0, (12, 12))
    A = rng.standard_normal((40, 40))
    return [
        ("power_sum n=1e5", lambda: K.power_sum(x, 3.7)),
        ("weighted_power_sum n=1e5", lambda: K.weighted_power_sum(x, w, 2.5)),
        ("holder_sums n=1e5", lambda: K.holder_sums(x, y, w, 1.5, 3.0)),
        ("minkowski_sums n=1e5", lambda: K.minkowski_sums(x, y, w, 2.5)),
        ("hardy_sums n=1e5", lambda: K.hardy_sums(a, 2.0)),
        ("hilbert_double_sum 1e3 x 1e3", lambda: K.hilbert_double_sum(h1, h2)),
        ("hilbert_kernel_partial N=1e5", lambda: K.hilbert_kernel_partial(3.0, 2.0, 100_000)),
        ("circular_convolve n=512", lambda: K.circular_convolve(k, f, 1.0 / 512)),
        ("sign_enum_sup 12 x 12", lambda: K.sign_enum_sup(M)),
        ("jacobi_svd 40 x 40", lambda: K.jacobi_svd(A)[0]),
    ]


def _best(fn, repeat: int) -> float:
    timer = timeit.Timer(fn)
    number, _ = timer.autorange()
    return min(timer.repeat(repeat=repeat, number=number)) / number


def _rel_diff(u, v) -> float:
    u, v = np.asarray(u, dtype=np.float64), np.asarray(v, dtype=np.float64)
    scale = np.maximum(np.abs(u), np.abs(v))
    d = np.abs(u - v)
    return float(np.max(np.where(scale > 0, d / np.where(scale > 0, scale, 1.0), 0.0)))


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description="compiled vs fallback kernel timings")
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", help="also write the rows as JSON")
    args = ap.parse_args(argv)

    if "cython" not in K.available_backends():
        print("compiled kernels are not built; only the fallback is available", file=sys.stderr)
        return 1
    previous = K.BACKEND
    rows = []
    try:
        for name, fn in _cases(np.random.default_rng(args.seed)):
            K.set_backend("python")
            ref, t_py = fn(), _best(fn, args.repeat)
            K.set_backend("cython")
            got, t_cy = fn(), _best(fn, args.repeat)
            rows.append({"kernel": name, "python_s": t_py, "cython_s": t_cy,
                         "speedup": t_py / t_cy, "max_rel_diff": _rel_diff(ref, got)})
    finally:
        K.set_backend(previous)

    width = max(len(r["kernel"]) for r in rows)
    print(f"{'kernel':<{width}}  {'python':>11}  {'cython':>11}  {'speedup':>8}  max rel diff")
    for r in rows:
        print(f"{r['kernel']:<{width}}  {r['python_s'] * 1e3:9.3f}ms  {r['cython_s'] * 1e3:9.3f}ms"
              f"  {r['speedup']:7.1f}x  {r['max_rel_diff']:.1e}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2)
    return 0


if __name__ == "__main__":
    sys.exit(main())
