"""Compare the compiled and pure-Python product kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Also times one end-to-end elimination with each backend selected.
"""
import argparse
import os
import random
import subprocess
import sys
import timeit

from jacpair._kernels import BACKEND, _pykernels

try:
    from jacpair._kernels import _ckernels
except ImportError:
    _ckernels = None


def dense_case(n, seed=1):
    rng = random.Random(seed)
    return [rng.randint(-10**6, 10**6) for _ in range(n)], [rng.randint(-10**6, 10**6) for _ in range(n)]


def sparse_case(n, nvars=4, seed=2):
    rng = random.Random(seed)

    def poly():
        out = {}
        for _ in range(n):
            k = 0
            for _ in range(nvars):
                k = (k << 64) | rng.randint(0, 12)
            out[k] = rng.randint(-999, 999) or 1
        return out
    return poly(), poly()


def bench(fn, args, repeat):
    return min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat))


def elimination_time(pure):
    env = dict(os.environ)
    if pure:
        env["JACPAIR_PURE_PYTHON"] = "1"
    code = ("import time; from jacpair import elimination as el;"
            "t=time.perf_counter(); el.eliminate(el.generate_system('9-27'));"
            "print(time.perf_counter()-t)")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"default backend: {BACKEND}")
    if _ckernels is None:
        print("compiled kernels not built; only the pure-Python timings are shown")
    rows = []
    for n in (200, 800):
        a, b = dense_case(n)
        rows.append((f"convolve n={n}", _pykernels.convolve, getattr(_ckernels, "convolve", None), (a, b)))
    for n in (100, 400):
        a, b = sparse_case(n)
        rows.append((f"sparse_mul terms={n}", _pykernels.sparse_mul, getattr(_ckernels, "sparse_mul", None), (a, b)))
    print(f"{'kernel':24} {'python [ms]':>12} {'cython [ms]':>12} {'speedup':>8}")
    for name, py, cy, data in rows:
        tp = bench(py, data, args.repeat) * 1e3
        if cy is not None:
            assert cy(*data) == py(*data)
            tc = bench(cy, data, args.repeat) * 1e3
            print(f"{name:24} {tp:12.2f} {tc:12.2f} {tp / tc:8.2f}")
        else:
            print(f"{name:24} {tp:12.2f} {'-':>12} {'-':>8}")
    tp = elimination_time(True)
    tc = elimination_time(False)
    print(f"{'9-27 elimination':24} {tp * 1e3:12.2f} {tc * 1e3:12.2f} {tp / tc:8.2f}")


if __name__ == "__main__":
    main()
