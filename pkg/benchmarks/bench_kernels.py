"""Time the numba kernels against their numpy fallbacks on synthetic inputs.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import time

import numpy as np

from mimsolve import _kernels
from mimsolve.generators import random_graph


def best_of(fn, args, repeat):
    fn(*args)  # warm-up, includes jit compilation
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - t0)
    return min(times)


def combine_case(rng, n_in, n_out):
    def table():
        return rng.integers(0, 50, (n_in, n_out)), rng.random((n_in, n_out)) < 0.7
    val_a, ok_a = table()
    val_b, ok_b = table()
    inner = rng.integers(0, n_in, (n_in, n_in))
    out_a = rng.integers(0, n_out, (n_in, n_out))
    out_b = rng.integers(0, n_out, (n_in, n_out))
    return val_a, ok_a, val_b, ok_b, inner, out_a, out_b, n_in, False


def sigma_rho_case(rng, n):
    g = random_graph(n, 0.3, rng)
    masks = np.array(g.masks, dtype=np.int64)
    sigma_ok = np.ones(n + 1, np.bool_)
    rho_ok = np.arange(n + 1) >= 1
    return masks, sigma_ok, rho_ok, n


def lcvp_case(rng, n, q):
    g = random_graph(n, 0.3, rng)
    ptr = np.zeros(n + 1, np.int64)
    ptr[1:] = np.cumsum([len(nb) for nb in g.neighbors])
    idx = np.array([u for nb in g.neighbors for u in nb], dtype=np.int64)
    table = np.zeros((q, q, n + 1), np.bool_)
    for i in range(q):
        table[i, i, 0] = True
        for j in range(q):
            if i != j:
                table[i, j, :] = True
    return idx, ptr, table, q, n, q ** n


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)

    cases = [
        ("combine_tables", "64x64", combine_case(rng, 64, 64)),
        ("combine_tables", "256x256", combine_case(rng, 256, 256)),
        ("sigma_rho_sweep", "n=16", sigma_rho_case(rng, 16)),
        ("sigma_rho_sweep", "n=20", sigma_rho_case(rng, 20)),
        ("lcvp_sweep", "n=10 q=3", lcvp_case(rng, 10, 3)),
        ("lcvp_sweep", "n=12 q=3", lcvp_case(rng, 12, 3)),
    ]
    print(f"active backend: {_kernels.backend()}")
    print(f"{'kernel':<16} {'case':<10} {'numpy s':>10} {'numba s':>10} {'speedup':>8}")
    for name, label, case in cases:
        t_np = best_of(_kernels.NUMPY_KERNELS[name], case, args.repeat)
        if _kernels.HAVE_NUMBA:
            t_nb = best_of(getattr(_kernels, name), case, args.repeat)
            print(f"{name:<16} {label:<10} {t_np:>10.4f} {t_nb:>10.4f} {t_np / t_nb:>7.1f}x")
        else:
            print(f"{name:<16} {label:<10} {t_np:>10.4f} {'-':>10} {'-':>8}")


if __name__ == "__main__":
    main()
