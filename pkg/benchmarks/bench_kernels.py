"""Compare the compiled and pure-Python search kernels.

Run from the repository root::

    python benchmarks/bench_kernels.py [--repeat 1] [--threads 1]

Each workload is a full oracle sweep (all r) for one catalog form. Both
backends must return identical values; the script exits non-zero otherwise.
"""

from __future__ import annotations

import argparse
import sys
import time

from quadhier import _pykernels, kernels
from quadhier.code import build_code
from quadhier.gf import ctx_new
from quadhier.hierarchy import max_intersection
from quadhier.qform import form_from_spec
from quadhier.subspaces import pivot_patterns

WORKLOADS = [
    (3, 4, "tr: x^2 + x^4", 1),
    (5, 3, "tr: 6*x^2 + x^6", 1),
    (3, 5, "tr: 5*x^2 + x^4", 1),
    (3, 6, "tr: x^2", 1),
]


def _oracle_values(code, impl, threads):
    m = code.ctx.m
    a = [max_intersection(code, m - r, threads=threads, impl=impl) for r in range(1, m + 1)]
    b = [
        kernels.max_orthogonal_columns(code.ctx.p, m, r, code.columns, pivot_patterns(m, r), threads, impl)
        for r in range(1, m + 1)
    ]
    return a, b


def _best_time(fn, repeat):
    best, result = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=1)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args(argv)

    try:
        from quadhier import _ckernels
    except ImportError:
        print("compiled kernels are not built; only the Python backend is available", file=sys.stderr)
        return 1

    print(f"{'workload':<32} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    ok = True
    for p, m, spec, a in WORKLOADS:
        code = build_code(form_from_spec(spec, ctx_new(p, m)), a)
        t_py, v_py = _best_time(lambda: _oracle_values(code, _pykernels, args.threads), args.repeat)
        t_c, v_c = _best_time(lambda: _oracle_values(code, _ckernels, args.threads), args.repeat)
        ok &= v_py == v_c
        label = f"p={p} m={m} {spec} a={a}"
        print(f"{label:<32} {t_py:>10.4f} {t_c:>10.4f} {t_py / t_c:>7.1f}x{'' if v_py == v_c else '  MISMATCH'}")
    return 0 if ok else 2


if __name__ == "__main__":
    sys.exit(main())
