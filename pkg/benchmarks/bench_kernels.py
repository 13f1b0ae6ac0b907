"""Time the compiled kernels against the pure-Python ones.

    python benchmarks/bench_kernels.py [--repeat 5]

Inputs are built from real derivations (central-moment bodies, the variance
ideal powers) so the term counts match what the library actually feeds the
kernels. An end-to-end row times a cold ``derive`` of d = 2..16 under each
backend in a subprocess.
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import timeit
from fractions import Fraction

from binmoments import _pykernels
from binmoments.moments import central_moment_stable, central_moment_variance_form

try:
    from binmoments import _ckernels
except ImportError:
    _ckernels = None


def cases():
    u12 = central_moment_stable(12).body
    u9 = central_moment_stable(9).body
    v16 = central_moment_variance_form(16).body
    a, b = dict(u12._terms), dict(u9._terms)
    p = Fraction(2, 7)
    yield "mul_terms: stable d=12 x stable d=9", lambda k: k.mul_terms(a, b)
    yield "eval_terms: variance form d=16 at n=64, p=2/7", lambda k: k.eval_terms(dict(v16._terms), 64, p.numerator, p.denominator)
    yield "eval_terms: stable d=12 at n=12, p=1/3", lambda k: k.eval_terms(a, 12, 1, 3)
    yield "stirling_table: m<=120, min block 2", lambda k: k.stirling_table(120, 2)


END_TO_END = """
import time
t0 = time.perf_counter()
from binmoments.moments import MomentQuery, derive
for d in range(2, 17):
    derive(MomentQuery("central", d, "variance"))
    derive(MomentQuery("central", d, "p", "direct"))
print(time.perf_counter() - t0)
"""


def end_to_end(pure: bool, repeat: int) -> float:
    """Best of ``repeat`` cold runs, each in a fresh interpreter."""
    env = dict(os.environ)
    env.pop("BINMOMENTS_PURE_PYTHON", None)
    if pure:
        env["BINMOMENTS_PURE_PYTHON"] = "1"
    times = []
    for _ in range(repeat):
        out = subprocess.run([sys.executable, "-c", END_TO_END], env=env, capture_output=True, text=True, check=True)
        times.append(float(out.stdout))
    return min(times)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if _ckernels is None:
        print("compiled kernels not built; run `pip install -e . --no-build-isolation` first")
    print(f"{'kernel':52s} {'python':>10s} {'cython':>10s} {'speedup':>8s}")
    for name, fn in cases():
        if _ckernels is not None and fn(_pykernels) != fn(_ckernels):
            raise SystemExit(f"backends disagree on {name}")
        number = max(1, int(0.2 / max(timeit.timeit(lambda: fn(_pykernels), number=1), 1e-6)))
        py = min(timeit.repeat(lambda: fn(_pykernels), number=number, repeat=args.repeat)) / number
        if _ckernels is None:
            print(f"{name:52s} {py * 1e3:8.3f}ms {'-':>10s} {'-':>8s}")
            continue
        cy = min(timeit.repeat(lambda: fn(_ckernels), number=number, repeat=args.repeat)) / number
        print(f"{name:52s} {py * 1e3:8.3f}ms {cy * 1e3:8.3f}ms {py / cy:7.2f}x")
    py = end_to_end(True, args.repeat)
    cy = end_to_end(False, args.repeat) if _ckernels is not None else None
    tail = f"{cy * 1e3:8.1f}ms {py / cy:7.2f}x" if cy else f"{'-':>10s} {'-':>8s}"
    print(f"{'end to end: cold derive, d=2..16, two bases':52s} {py * 1e3:8.1f}ms " + tail)
    return 0


if __name__ == "__main__":
    sys.exit(main())
