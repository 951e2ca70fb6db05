"""Compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Prints the median wall time of each kernel for both backends, the speedup,
and the largest difference between their outputs.
"""

from __future__ import annotations

import argparse
import statistics
import time

import numpy as np

from clapeyron import _kernels_py as pure

try:
    from clapeyron import _kernels as compiled
except ImportError:  # extension not built
    compiled = None


def _median_time(fn, repeat):
    out, ts = None, []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        ts.append(time.perf_counter() - t)
    return statistics.median(ts), out


def cases(rng):
    w = rng.random(200_000)
    f = rng.normal(size=200_000)
    F = np.ascontiguousarray(rng.normal(size=(50_000, 6)))
    wc = rng.random(50_000)
    alphas = np.geomspace(1e-3, 1e3, 32)
    return {
        "weighted_sum (2e5)": lambda k: k.weighted_sum(w, f),
        "weighted_sum_cols (5e4 x 6)": lambda k: np.asarray(k.weighted_sum_cols(wc, F)),
        "lane_emden_rk4 (32 lanes x 4000 steps)": lambda k: np.asarray(k.lane_emden_rk4(alphas, 3.0, 3, 1.0, 4000)[0]),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if compiled is None:
        print("compiled extension not available; build with `pip install -e . --no-build-isolation`")
        return 1
    rng = np.random.default_rng(0)
    print(f"{'kernel':42s} {'python [ms]':>12s} {'compiled [ms]':>14s} {'speedup':>8s} {'max |diff|':>11s}")
    for name, fn in cases(rng).items():
        tp, op = _median_time(lambda: fn(pure), args.repeat)
        tc, oc = _median_time(lambda: fn(compiled), args.repeat)
        diff = float(np.max(np.abs(np.asarray(op) - np.asarray(oc))))
        print(f"{name:42s} {tp * 1e3:12.3f} {tc * 1e3:14.3f} {tp / tc:8.1f} {diff:11.2e}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
