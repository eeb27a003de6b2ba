#!/usr/bin/env python3
"""Compare the compiled term kernels against the pure-Python fallback.

Two layers: raw kernel primitives (multiply, divide) and an end-to-end
stability analysis whose runtime is dominated by Buchberger reductions.
The library looks the kernel functions up at call time, so swapping the
module attributes switches the implementation for everything downstream.
"""

import json
import os
import sys
import time

import frobstab._kernel as kernel_module
from frobstab._kernel import _ref
from frobstab.field import PrimeField
from frobstab.groebner import clear_memory_cache
from frobstab.localcoh import GradedRing
from frobstab.poly import PolyRing
from frobstab.stability import f_stability

try:
    from frobstab._kernel import _speedups
except ImportError:
    _speedups = None

ZOO = os.path.join(os.path.dirname(__file__), "..", "src", "frobstab", "zoo")
KERNEL_NAMES = ("add_terms", "mul_terms", "divmod_terms")


def swap_kernel(impl):
    for name in KERNEL_NAMES:
        setattr(kernel_module, name, getattr(impl, name))


def bench_raw(impl, repeats=40):
    R = PolyRing(PrimeField(5), ("x", "y", "z"))
    f = (R.parse("x + y + z + 1")) ** 9
    g = (R.parse("x + 2*y + 3*z + 4")) ** 9
    basis = [t.terms for t in (R.parse("x^3 - y"), R.parse("y^4 - z"), R.parse("z^5 - 1"))]
    start = time.perf_counter()
    for _ in range(repeats):
        prod = impl.mul_terms(f.terms, g.terms, R.p, R._wm)
    mul_time = time.perf_counter() - start
    start = time.perf_counter()
    for _ in range(repeats):
        impl.divmod_terms(prod, basis, R.p, R._wm, False)
    div_time = time.perf_counter() - start
    return mul_time, div_time


def bench_stability(name="lines3_p3"):
    with open(os.path.join(ZOO, name + ".json")) as fh:
        data = json.load(fh)
    clear_memory_cache()
    graded = GradedRing.from_dict(data)
    start = time.perf_counter()
    report = f_stability(graded)
    elapsed = time.perf_counter() - start
    assert report.agreement
    return elapsed


def main():
    if _speedups is None:
        print("compiled kernel not built; nothing to compare")
        print("(build with: pip install -e . --no-build-isolation)")
        return 1

    rows = []
    for label, impl in (("python", _ref), ("c", _speedups)):
        mul_t, div_t = bench_raw(impl)
        swap_kernel(impl)
        stab_t = bench_stability()
        rows.append((label, mul_t, div_t, stab_t))
    swap_kernel(_speedups)

    print(f"{'kernel':<8} {'mul x40':>10} {'divmod x40':>12} {'stability':>11}")
    for label, mul_t, div_t, stab_t in rows:
        print(f"{label:<8} {mul_t:>9.3f}s {div_t:>11.3f}s {stab_t:>10.3f}s")
    py, c = rows[0], rows[1]
    print(
        f"speedup  {py[1] / c[1]:>9.1f}x {py[2] / c[2]:>11.1f}x {py[3] / c[3]:>10.1f}x"
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
