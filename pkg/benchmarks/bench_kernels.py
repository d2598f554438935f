"""Compare the compiled and pure-Python kernel backends.

Usage::

    python3 benchmarks/bench_kernels.py [--repeat N]

Prints per-call timings of each kernel for both backends, then the wall time
of a full ``run_all`` verification under each backend (each in a fresh
interpreter, since the backend is chosen at import).
"""

import argparse
import os
import subprocess
import sys
import timeit

from qgalois.kernels import backends

Q = 0.3 + 0.4j
CALLS = {
    "qpoch_finite": lambda k: k.qpoch_finite(0.7 + 0.1j, Q, 40),
    "qpoch_inf": lambda k: k.qpoch_inf(0.7 + 0.1j, Q, 1e-17, 2000),
    "qpoch_inf_dual": lambda k: k.qpoch_inf_dual(0.7 + 0.1j, 1.0, Q, 1e-17, 2000),
    "theta_laurent": lambda k: k.theta_laurent(1.3 - 0.2j, Q, 1e-17, 400),
    "phi21_sum": lambda k: k.phi21_sum(0.3, 0.7j, 1.4, 0.7 + 0.1j, Q, 1e-17, 5000, -1),
    "phi21_dual": lambda k: k.phi21_dual(0.3, 1.0, 0.7j, 0.0, 1.4, 0.0, 0.7 + 0.1j, 0.0,
                                         Q, 1e-17, 5000),
}

END_TO_END = """
import time
from qgalois import kernels
from qgalois.specfun import QContext
from qgalois.hyperseries import HGParams
from qgalois.spiral import Spiral
from qgalois.verify import run_all
from fractions import Fraction as F
ctx = QContext(0.3)
sp = lambda w: Spiral.q_power(F(w))
p = HGParams.make(ctx, sp('0.3'), sp('0.7'), sp('0.4'))
run_all(ctx, p)
t0 = time.perf_counter()
for s in range(3):
    run_all(ctx, p, seed=s)
print(kernels.BACKEND, (time.perf_counter() - t0) / 3)
"""


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=2000)
    args = ap.parse_args()
    mods = backends()
    names = sorted(mods)
    print(f"{'kernel':16s}" + "".join(f"{n:>14s}" for n in names) + "   speedup")
    for kname, call in CALLS.items():
        t = {n: min(timeit.repeat(lambda: call(mods[n]), number=args.repeat, repeat=3))
             / args.repeat for n in names}
        row = f"{kname:16s}" + "".join(f"{t[n] * 1e6:11.2f} us" for n in names)
        if "cython" in t:
            row += f"   {t['python'] / t['cython']:6.1f}x"
        print(row)

    print("\nrun_all (one parameter set, mean of 3)")
    for pure in ("0", "1"):
        env = dict(os.environ, QGALOIS_PURE_PYTHON=pure)
        out = subprocess.run([sys.executable, "-c", END_TO_END], env=env,
                             capture_output=True, text=True, check=True).stdout.split()
        print(f"  {out[0]:8s} {float(out[1]) * 1e3:8.1f} ms")


if __name__ == "__main__":
    main()
