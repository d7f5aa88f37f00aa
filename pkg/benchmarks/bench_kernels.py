#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback, plus the
two exact-rational number types available to the LP solver.

Usage:  python benchmarks/bench_kernels.py [--repeat N] [--skip-lp]
"""

import argparse
import importlib
import os
import time

from qmlines import kernels
from qmlines.core import Betweenness
from qmlines.enumeration import canonical_classes, raw_consistent_masks
from qmlines.fixtures import q4_betweenness
from qmlines.realizability import _orbit_masks, build_realization_system


def best_of(repeat, fn, *args):
    times = []
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        times.append(time.perf_counter() - t0)
    return min(times), result


def bench_kernels(repeat):
    backends = kernels.available_backends()
    masks4 = list(raw_consistent_masks(4))
    targets = _orbit_masks(q4_betweenness())
    jobs = [
        ("canonical_batch, all 104976 candidates (n=4)", "canonical_batch", (4, masks4)),
        ("integer sweep, entries <= 2 (n=4)", "integer_canon_witnesses", (4, 2)),
        ("integer sweep, entries <= 3 (n=4)", "integer_canon_witnesses", (4, 3)),
        ("digraph sweep (n=4)", "digraph_canon_witnesses", (4,)),
        ("first integer witness for Q4's class, kmax=3", "find_integer_witness", (4, 3, targets)),
        ("digraph refutation of Q4's class", "find_digraph_witness", (4, targets)),
    ]
    names = list(backends)
    header = f"{'kernel':<50}" + "".join(f"{name:>16}" for name in names)
    if len(names) == 2:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for label, fn, args in jobs:
        row = f"{label:<50}"
        per_backend = []
        results = []
        for name in names:
            elapsed, result = best_of(repeat, getattr(backends[name], fn), *args)
            per_backend.append(elapsed)
            results.append(result)
            row += f"{elapsed * 1000:>13.1f} ms"
        if len(results) == 2:
            assert results[0] == results[1], f"backend disagreement on {label}"
            row += f"{per_backend[0] / per_backend[1]:>9.1f}x" \
                if per_backend[1] else f"{'':>10}"
        print(row)
    if len(names) < 2:
        print("(compiled backend unavailable; showing pure Python only)")


def bench_lp(repeat):
    # a spread of 60 classification instances, solved under both number types
    sample = canonical_classes(4)[::75]
    systems = [
        build_realization_system(Betweenness(4, mask), "quasi") for mask, _ in sample
    ]

    def solve_all(lp_module):
        return [lp_module.maximize_slack(s).optimal_slack for s in systems]

    print()
    print(f"LP: {len(systems)} slack maximizations (n=4, quasi)")
    import qmlines.lp

    baseline = None
    seen = set()
    for mode in ("", "fraction"):
        os.environ["QMLINES_LP_RATIONAL"] = mode
        lp_module = importlib.reload(qmlines.lp)
        label = getattr(lp_module._RAT, "__name__", repr(lp_module._RAT))
        if label in seen:
            continue  # gmpy2 not installed; both modes are Fraction
        seen.add(label)
        elapsed, result = best_of(repeat, solve_all, lp_module)
        if baseline is None:
            baseline = result
        else:
            assert result == baseline, "number types disagree"
        print(f"  {label:<22}{elapsed * 1000:>10.1f} ms")
    os.environ.pop("QMLINES_LP_RATIONAL", None)
    importlib.reload(qmlines.lp)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3, help="take the best of N runs")
    parser.add_argument("--skip-lp", action="store_true", help="kernel benchmarks only")
    args = parser.parse_args()
    print(f"active backend: {kernels.backend_name()}")
    bench_kernels(args.repeat)
    if not args.skip_lp:
        bench_lp(args.repeat)


if __name__ == "__main__":
    main()
