"""Time the numpy and Cython kernel backends on the same inputs.

Usage:
  python benchmarks/bench_kernels.py [--repeat 5] [--seed 0] [--json out.json]

Each kernel is checked for identical output across backends before timing.
"""

import argparse
import json
import sys
import timeit

import numpy as np

from repboost import kernels


def cases(rng):
    n, d, k = 20_000, 4, 32
    X = rng.random((n, d))
    y = np.where(rng.random(n) < 0.5, 1, -1).astype(np.int8)
    w = rng.random(n)
    thresholds = np.sort(rng.random((d, k)), axis=1)
    feature = rng.integers(d, size=200)
    threshold = rng.random(200)
    polarity = np.where(rng.random(200) < 0.5, 1, -1)
    weight = rng.integers(1, 5, size=200)
    mu = rng.random(200_000)
    u = rng.random(200_000)
    cdf = np.cumsum(rng.random(64))
    cdf /= cdf[-1]
    draws = rng.random(1_000_000)
    return {
        "vote_sum": lambda impl: kernels.vote_sum(X, feature, threshold, polarity, weight, impl),
        "stump_mistake_counts": lambda impl: kernels.stump_mistake_counts(X, y, thresholds, impl),
        "stump_weighted_errors": lambda impl: kernels.stump_weighted_errors(X, y, w, thresholds,
                                                                            impl),
        "accept_scan": lambda impl: kernels.accept_scan(mu, u, 50_000, impl),
        "inverse_cdf": lambda impl: kernels.inverse_cdf(cdf, draws, impl),
    }


def same(a, b):
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", help="also write results here")
    args = ap.parse_args(argv)

    impls = kernels.backends()
    if "cython" not in impls:
        print("compiled backend not built; timing numpy only", file=sys.stderr)
    rows = []
    for name, fn in cases(np.random.default_rng(args.seed)).items():
        outs = {b: fn(m) for b, m in impls.items()}
        if len(outs) == 2 and not same(outs["numpy"], outs["cython"]):
            print(f"{name}: backends disagree", file=sys.stderr)
            return 1
        times = {b: min(timeit.repeat(lambda: fn(m), number=1, repeat=args.repeat))
                 for b, m in impls.items()}
        row = {"kernel": name, **{f"{b}_ms": round(t * 1e3, 3) for b, t in times.items()}}
        if len(times) == 2:
            row["speedup"] = round(times["numpy"] / times["cython"], 2)
        rows.append(row)
        print("  ".join(f"{k}={v}" for k, v in row.items()))
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=1)
    return 0


if __name__ == "__main__":
    sys.exit(main())
