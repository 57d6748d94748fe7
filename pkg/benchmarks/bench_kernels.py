"""Compare the compiled and numpy kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Times each kernel on a few sizes, then a whole invariant check with each
backend forced through the environment variable.
"""
import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from qmodelcheck import kernels
from qmodelcheck.complexla import random_unitary


def kernel_table(repeat):
    impls = kernels.available_backends()
    rng = np.random.default_rng(0)
    rows = []
    for d in (4, 16, 64):
        Q = random_unitary(d, rng)[: d // 2].copy()
        U = random_unitary(d, rng)
        v = rng.normal(size=d) + 1j * rng.normal(size=d)
        cases = {
            "residual": lambda m: m.residual(Q, v),
            "matvec": lambda m: m.matvec(U, v),
            "slot_norms": lambda m: m.slot_norms(v, 4 if d % 4 == 0 else 1),
        }
        for name, fn in cases.items():
            times = {}
            for bk, mod in impls.items():
                n = 2000
                times[bk] = min(timeit.repeat(lambda: fn(mod), number=n, repeat=repeat)) / n * 1e6
            rows.append((name, d, times))
    return sorted(impls), rows


CAMPAIGN = """
import sys, time
sys.path.insert(0, 'tests')
import numpy as np
from modelgen import random_model
from qmodelcheck import kernels
from qmodelcheck.invcheck import check_invariant
rng = np.random.default_rng(1)
models = [random_model(rng) for _ in range(200)]
t = time.perf_counter()
for m in models:
    check_invariant(m.A, m.ap, m.X)
print(kernels.BACKEND, time.perf_counter() - t)
"""


def campaign(backend):
    env = dict(os.environ)
    env.pop("QMODELCHECK_PURE_PYTHON", None)
    if backend == "python":
        env["QMODELCHECK_PURE_PYTHON"] = "1"
    here = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    out = subprocess.run([sys.executable, "-c", CAMPAIGN], env=env, cwd=here,
                         capture_output=True, text=True, check=True).stdout.split()
    return out[0], float(out[1])


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    names, rows = kernel_table(args.repeat)
    print(f"{'kernel':12s}{'d':>5s}" + "".join(f"{n + ' us':>14s}" for n in names))
    for name, d, times in rows:
        print(f"{name:12s}{d:5d}" + "".join(f"{times[n]:14.2f}" for n in names))
    print()
    for bk in names:
        used, secs = campaign(bk)
        print(f"200-model invariant campaign, backend {used}: {secs:.3f}s")


if __name__ == "__main__":
    main()
