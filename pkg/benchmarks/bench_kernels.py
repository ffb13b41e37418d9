"""Compare the compiled enumeration kernels against the numpy fallback.

Every workload is run on both backends and the results are checked for
exact equality before timings are reported. Run from the repository root:

    python3 benchmarks/bench_kernels.py [--full]

--full adds the truncation-order-9 histogram of the six-dimensional
counterexample (the `verify` workload), which takes a few seconds on the
fallback backend.
"""

import argparse
import time

from deltafan.families import hibi_counterexample
from deltafan.fan import build_fan, face_fan
from deltafan.kernels import _core, _fallback
from deltafan.lattice import Lattice


def best_of(fn, repeats: int = 3):
    best = None
    value = None
    for _ in range(repeats):
        start = time.perf_counter()
        value = fn()
        elapsed = time.perf_counter() - start
        best = elapsed if best is None else min(best, elapsed)
    return value, best


def box_size(lo, hi) -> int:
    n = 1
    for l, h in zip(lo, hi):
        n *= h - l + 1
    return n


def family_fan(m: int):
    return face_fan(hibi_counterexample(m)[0])


def star_fan():
    return build_fan(
        Lattice.standard(2),
        [(1, 0), (3, 1), (0, 1), (-1, 0), (0, -1)],
        [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)],
    )


def hist_max_workload(m: int, max_value: int):
    fan = family_fan(m)
    lo, hi = fan._box(max_value)
    u_rows = [list(u) for u in fan.support_function().vectors]
    return (
        f"histogram (max formula), d={fan.dim} family m={m}, "
        f"box {box_size(lo, hi):,}, Psi <= {max_value}",
        lambda: list(_core.hist_max(lo, hi, u_rows, max_value)),
        lambda: list(_fallback.histogram_int64(lo, hi, max_value, u_rows, None)),
    )


def hist_locate_workload(max_value: int):
    fan = star_fan()
    lo, hi = fan._box(max_value)
    u_rows = [list(u) for u in fan.support_function().vectors]
    cone_rows = [[list(r) for r in rows] for rows in fan._cone_rows]
    return (
        f"histogram (cone location), non-convex star, "
        f"box {box_size(lo, hi):,}, Psi <= {max_value}",
        lambda: list(_core.hist_locate(lo, hi, u_rows, cone_rows, max_value)),
        lambda: list(_fallback.histogram_int64(lo, hi, max_value, u_rows, cone_rows)),
    )


def count_box_workload(m: int):
    d = 4
    lo = [-m] * d
    hi = [m] * d
    rows = [[1 if j == i else 0 for j in range(d)] for i in range(d)]
    rows += [[-r for r in row] for row in rows]
    rhs = [m] * (2 * d)
    return (
        f"box count with {len(rows)} inequality rows, box {box_size(lo, hi):,}",
        lambda: _core.count_box(lo, hi, rows, rhs, False),
        lambda: _fallback.count_box_int64(lo, hi, rows, rhs, False),
    )


def run(workloads) -> None:
    width = max(len(desc) for desc, *_ in workloads)
    print(f"{'workload':<{width}}  {'compiled':>9}  {'numpy':>9}  {'speedup':>7}")
    for desc, compiled_fn, numpy_fn in workloads:
        numpy_value, numpy_t = best_of(numpy_fn)
        if _core is None:
            print(f"{desc:<{width}}  {'n/a':>9}  {numpy_t:>8.3f}s  {'-':>7}")
            continue
        compiled_value, compiled_t = best_of(compiled_fn)
        if compiled_value != numpy_value:
            raise SystemExit(f"backend disagreement on: {desc}")
        ratio = numpy_t / compiled_t if compiled_t > 0 else float("inf")
        print(f"{desc:<{width}}  {compiled_t:>8.3f}s  {numpy_t:>8.3f}s  {ratio:>6.1f}x")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--full", action="store_true", help="include the large d=6 verify workload")
    args = ap.parse_args()

    if _core is None:
        print("compiled extension not available; timing the numpy fallback only\n")

    workloads = [
        count_box_workload(8),
        hist_max_workload(2, 7),
        hist_max_workload(3, 6),
        hist_locate_workload(200),
    ]
    if args.full:
        workloads.append(hist_max_workload(3, 9))
    run(workloads)


if __name__ == "__main__":
    main()
