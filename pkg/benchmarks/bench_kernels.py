"""Compare the numba and numpy backends of the hot kernels.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]
Both backends must agree exactly; timings exclude the first (compiling) call."""
import argparse
import os
import time

import numpy as np

from khall import _kernels
from khall.quiver import BUILTINS, offsets, rep_weights
from khall.weights import partition_cocharacter, rho


def subset_input(m: int, n: int, seed: int = 0):
    rng = np.random.default_rng(seed)
    chi = np.sort(rng.integers(-4, 5, size=n))[::-1]
    chi2 = 2 * chi + np.array([int(2 * x) for x in rho((n,))])
    iset = rng.integers(-1, 2, size=(m, n))
    rho2 = np.array([int(2 * x) for x in rho((n,))])
    return chi2, iset, np.array([0, n]), rho2


def window_input(K: int):
    Q = BUILTINS["2-loop"]()
    d = (4,)
    rng = np.random.default_rng(1)
    X = np.sort(rng.integers(-6, 7, size=(K, 4)), axis=1)[:, ::-1] * 2
    lams = [partition_cocharacter(p) for p in [((1,), (3,)), ((2,), (2,)), ((3,), (1,)),
                                              ((1,), (1,), (2,)), ((1,), (1,), (1,), (1,))]]
    L = np.array(lams)
    lo = -np.arange(len(lams)) * 3 - 8
    hi = np.arange(len(lams)) * 3 + 8
    starts = np.array(list(offsets(d)) + [sum(d)])
    assert len(rep_weights(Q, d)) == 32
    return X, L, starts, lo, hi


def timed(fn, *args, repeat: int):
    fn(*args)
    t = time.perf_counter()
    for _ in range(repeat):
        out = fn(*args)
    return (time.perf_counter() - t) / repeat, out


def run(repeat: int):
    cases = [
        ("expand_subsets m=12 n=4", _kernels.expand_subsets, subset_input(12, 4)),
        ("expand_subsets m=16 n=5", _kernels.expand_subsets, subset_input(16, 5)),
        ("window_scan K=20000", _kernels.window_scan, window_input(20000)),
    ]
    print(f"{'kernel':<28}{'numpy s':>12}{'numba s':>12}{'speedup':>10}")
    for name, fn, args in cases:
        res = {}
        for be in ("numpy", "numba"):
            os.environ["KHALL_BACKEND"] = be
            res[be] = timed(fn, *args, repeat=repeat)
        a, b = res["numpy"][1], res["numba"][1]
        same = all(np.array_equal(x, y) for x, y in zip(a, b)) if isinstance(a, tuple) else np.array_equal(a, b)
        if not same:
            raise SystemExit(f"{name}: backends disagree")
        tn, tb = res["numpy"][0], res["numba"][0]
        print(f"{name:<28}{tn:>12.4f}{tb:>12.4f}{tn / tb:>10.1f}")
    os.environ.pop("KHALL_BACKEND", None)


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    run(ap.parse_args().repeat)
