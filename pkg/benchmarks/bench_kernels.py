"""Compare the compiled and pure-Python polynomial kernels.

Two measurements:

* kernel micro-benchmarks, calling both kernel modules directly on the same
  packed polynomials;
* end-to-end pipeline runs in subprocesses, with and without
  ``FUNDFORM_PURE_PYTHON=1``.

Run with ``python3 benchmarks/bench_kernels.py [--repeat N] [--skip-pipeline]``.
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from fundform import _kernels_py
from fundform.symbolic import FIELD, Poly, jet, var_id

try:
    from fundform import _kernels
except ImportError:
    _kernels = None

PIPELINE = """
import time
from fundform import BACKEND, variational as var
from fundform.parser import parse_expr
J = "(u[1;1,0]*u[2;0,1] - u[1;0,1]*u[2;1,0])"
Jp = "(u[3;1,0]*u[4;0,1] - u[3;0,1]*u[4;1,0])"
lag = var.Lagrangian(2, 4, 1, parse_expr(f"{J}^2 / {Jp}"))
t = time.perf_counter()
var.verify_recovery(lag, 1)
var.verify_closure(lag)
print(BACKEND, time.perf_counter() - t)
"""


def random_poly(rng, nterms, nvars=8, deg=4):
    variables = [jet(a, i, j) for a in (1, 2) for i in range(2) for j in range(2)][:nvars]
    p = Poly()
    for _ in range(nterms):
        t = Poly.const(rng.randint(-9, 9))
        for _ in range(rng.randint(1, deg)):
            t = t * Poly.var(rng.choice(variables))
        p = p + t
    return p


def micro(repeat):
    rng = random.Random(0)
    a = random_poly(rng, 40).terms
    b = random_poly(rng, 40).terms
    prod = _kernels_py.mul(a, b)
    shift = FIELD * var_id(jet(1, 1, 0))
    cases = {
        "add": lambda k: k.add(a, b),
        "mul": lambda k: k.mul(a, b),
        "diff": lambda k: k.diff(prod, shift),
        "divexact": lambda k: k.divexact(prod, b),
    }
    rows = []
    for name, fn in cases.items():
        py = min(timeit.repeat(lambda: fn(_kernels_py), number=repeat, repeat=3)) / repeat
        if _kernels is not None:
            assert fn(_kernels) == fn(_kernels_py), name
            cy = min(timeit.repeat(lambda: fn(_kernels), number=repeat, repeat=3)) / repeat
        else:
            cy = float("nan")
        rows.append((name, py, cy))
    return rows


def pipeline():
    out = {}
    for label, env_extra in (("compiled", {}), ("python", {"FUNDFORM_PURE_PYTHON": "1"})):
        env = dict(os.environ, **env_extra)
        res = subprocess.run([sys.executable, "-c", PIPELINE], capture_output=True, text=True, env=env, check=True)
        backend, seconds = res.stdout.split()
        out[label] = (backend, float(seconds))
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=200)
    ap.add_argument("--skip-pipeline", action="store_true")
    args = ap.parse_args()

    if _kernels is None:
        print("compiled kernels not built; only the pure-Python column is meaningful")
    print(f"{'kernel':<10} {'python (us)':>12} {'compiled (us)':>14} {'speedup':>8}")
    for name, py, cy in micro(args.repeat):
        print(f"{name:<10} {py * 1e6:>12.1f} {cy * 1e6:>14.1f} {py / cy:>8.2f}")

    if not args.skip_pipeline:
        print()
        print("pipeline: J^2/J' recovery (q=1) and closure")
        for label, (backend, seconds) in pipeline().items():
            print(f"  {label:<9} backend={backend:<7} {seconds:.2f}s")


if __name__ == "__main__":
    main()
