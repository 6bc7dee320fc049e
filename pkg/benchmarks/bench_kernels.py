"""Compare the compiled and pure-Python kernel backends.

Run with ``python3 benchmarks/bench_kernels.py [--repeat 5]``.
"""
from __future__ import annotations

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from wsgd import _backend
from wsgd.weights import grunwald_weights, params_from_set


def cases(k, N):
    p = params_from_set("S1", 1.0, 1.5)
    w = grunwald_weights(1.5, N + 1)
    g = k.fused_weights(w, *p.triple)
    rng = np.random.default_rng(0)
    u = rng.standard_normal(N + 1)
    A = np.eye(N - 1) * 4 + rng.standard_normal((N - 1, N - 1)) / N
    lu, piv = k.lu_factor(A)
    B = rng.standard_normal((N - 1, N - 1))
    th = np.linspace(0, np.pi, 2001)
    al = np.linspace(1, 2, 101)
    return {
        "grunwald_weights": lambda: k.grunwald_weights(1.5, N + 1),
        "left_sum": lambda: k.wsgd_left_sum(g, u),
        "right_sum": lambda: k.wsgd_right_sum(g, u),
        "left_operator": lambda: k.left_operator(g, N),
        "lu_factor": lambda: k.lu_factor(A),
        "lu_solve_batch": lambda: k.lu_solve(lu, piv, B),
        "q_basis_2001x101": lambda: k.q_basis(th, al),
    }


_E2E = """
import time
from fractions import Fraction
from wsgd import BACKEND, example2, params_from_set
from wsgd.harness import run_case
c = example2(1.5, 1.8)
px, py = params_from_set("S1", 1.0, 1.5), params_from_set("S1", 1.0, 1.8)
t = time.perf_counter()
run_case(c, "douglas", px, Fraction(1, {N}), {N}, py)
print(time.perf_counter() - t)
"""


def end_to_end(name: str, N: int) -> float:
    env = dict(os.environ, WSGD_BACKEND=name)
    out = subprocess.run([sys.executable, "-c", _E2E.format(N=N)], env=env,
                         capture_output=True, text=True, check=True)
    return float(out.stdout.strip())


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--N", type=int, default=160)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    names = _backend.available()
    results = {}
    for name in names:
        k = _backend.load(name)
        for label, fn in cases(k, args.N).items():
            n = 3
            t = min(timeit.repeat(fn, number=n, repeat=args.repeat)) / n
            results.setdefault(label, {})[name] = t
    header = f"{'kernel':<20}" + "".join(f"{n:>14}" for n in names)
    if len(names) == 2:
        header += f"{'speedup':>10}"
    print(f"N = {args.N}")
    print(header)
    for label, row in results.items():
        line = f"{label:<20}" + "".join(f"{row[n] * 1e3:>12.3f}ms" for n in names)
        if len(names) == 2:
            line += f"{row['python'] / row['compiled']:>9.2f}x"
        print(line)
    e2e = {n: end_to_end(n, args.N // 2) for n in names}
    line = f"{'adi_run_h=1/' + str(args.N // 2):<20}" + "".join(f"{e2e[n] * 1e3:>12.1f}ms" for n in names)
    if len(names) == 2:
        line += f"{e2e['python'] / e2e['compiled']:>9.2f}x"
    print(line)


if __name__ == "__main__":
    main()
