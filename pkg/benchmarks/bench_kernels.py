"""Time the compiled and numpy kernels on identical inputs.

    python benchmarks/bench_kernels.py [--repeat 5]

Prints one CSV row per (kernel, backend) with the best wall time and the
speedup of the compiled backend, and checks both backends return the same
values.
"""

import argparse
import timeit

import numpy as np

from contpath import kernels


def cases():
    rng = np.random.default_rng(0)
    q = rng.uniform(0.0, 25.0, 20_000)
    u2 = rng.random((200_000, 2)) * 3.0
    v2 = rng.random((200_000, 2)) * 1.0
    u3 = rng.random((200_000, 3)) * 2.0
    v3 = rng.random((200_000, 3)) * 2.0
    return {
        "series (scalar x2000)": lambda k: [k.series(x, 3.0, 2.0, 1.0, 1e-12, 0.0, 500) for x in q[:2000]],
        "series_array (20000)": lambda k: k.series_array(q, 3.0, 2.0, 1.0, 1e-12, 0.0, 500),
        "lambda_hits (2e5, n=2)": lambda k: k.lambda_hits(u2, v2),
        "simplex_pair_hits (2e5, d=3)": lambda k: k.simplex_pair_hits(u3, v3, 2.0, 2.0),
    }


def same(a, b):
    if isinstance(a, tuple) and isinstance(a[0], np.ndarray):
        return np.array_equal(a[0], b[0]) and a[1] == b[1]
    return a == b


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    found = kernels.backends()
    print("kernel,backend,best_seconds,speedup_vs_python")
    for name, fn in cases().items():
        base = None
        results = {}
        for backend in ("python", "cython"):
            if backend not in found:
                continue
            mod = found[backend]
            results[backend] = fn(mod)
            best = min(timeit.repeat(lambda: fn(mod), number=1, repeat=args.repeat))
            base = best if backend == "python" else base
            print(f"{name},{backend},{best:.6f},{base / best:.2f}")
        if len(results) == 2 and not same(results["python"], results["cython"]):
            raise SystemExit(f"backends disagree on {name}")


if __name__ == "__main__":
    main()
