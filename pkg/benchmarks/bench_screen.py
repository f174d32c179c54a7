"""Compare the GMP screening kernel with the pure-Python fallback.

    python benchmarks/bench_screen.py --n 7,13,29 --t-max 300
"""

import argparse
import time

from thuemeasure import screen, _screen_py
from thuemeasure.exactnum import is_squarefree
from thuemeasure.hyperg import BUILTIN_CD
from thuemeasure.search import root_window, threshold_for


def workload(ns, t_max, window):
    for n in ns:
        cd = BUILTIN_CD.get(n)
        log_d = float(cd.log_D(64).lower) if cd else 1.0
        limit = float(threshold_for(n)) + 1
        for t in range(1, t_max + 1):
            if is_squarefree(t):
                lo, hi = root_window(n, t, window)
                yield n, -t, lo, hi, log_d, screen.log_script_n_max(n), limit


def run(kernel, items):
    t0 = time.perf_counter()
    codes = [kernel(*it) for it in items]
    return time.perf_counter() - t0, codes


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", default="7,13,29")
    ap.add_argument("--t-max", type=int, default=300)
    ap.add_argument("--window", type=int, default=10)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    items = list(workload([int(s) for s in args.n.split(",")], args.t_max, args.window))
    pairs = sum(it[3] - it[2] + 1 for it in items)
    print(f"{pairs} (t, x) pairs, compiled backend: {screen.BACKEND}")
    if screen.BACKEND != "gmp":
        print("compiled kernel not built; only the fallback is timed")

    best = {}
    results = {}
    kernels = {"python": _screen_py.screen_range}
    if screen.BACKEND == "gmp":
        from thuemeasure import _screen_c

        kernels["gmp"] = _screen_c.screen_range
    for name, fn in kernels.items():
        times = []
        for _ in range(args.repeat):
            dt, codes = run(fn, items)
            times.append(dt)
        best[name] = min(times)
        results[name] = codes
        print(f"{name:8s} {best[name]:8.3f} s   {pairs / best[name] / 1e3:9.1f} k pairs/s")
    if len(results) == 2:
        same = results["python"] == results["gmp"]
        print(f"speedup  {best['python'] / best['gmp']:.1f}x, identical decisions: {same}")


if __name__ == "__main__":
    main()
