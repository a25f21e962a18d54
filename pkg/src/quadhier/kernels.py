"""Backend selection for the subspace-scan kernels.

The compiled extension is used when it imports; setting ``QUADHIER_PURE=1``
forces the pure-Python fallback.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence

from . import _pykernels

if os.environ.get("QUADHIER_PURE", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl  # type: ignore[attr-defined]
    except ImportError:  # extension not built
        _impl = _pykernels

BACKEND = "cython" if _impl is not _pykernels else "python"


def _split(patterns: Sequence[Sequence[int]], parts: int) -> list[list[Sequence[int]]]:
    chunks: list[list[Sequence[int]]] = [[] for _ in range(max(parts, 1))]
    for i, pat in enumerate(patterns):
        chunks[i % len(chunks)].append(pat)
    return [c for c in chunks if c]


def _reduce_max(fn: Callable[..., int], args: tuple, patterns: Sequence[Sequence[int]], threads: int) -> int:
    if threads <= 1 or len(patterns) <= 1:
        return fn(*args, patterns)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return max(pool.map(lambda chunk: fn(*args, chunk), _split(patterns, threads)))


def max_intersection(
    p: int, m: int, k: int, member: bytes, patterns: Sequence[Sequence[int]], threads: int = 1, impl=None
) -> int:
    mod = impl or _impl
    return _reduce_max(mod.max_intersection, (p, m, k, member), patterns, threads)


def max_orthogonal_columns(
    p: int,
    m: int,
    k: int,
    columns: Sequence[Sequence[int]],
    patterns: Sequence[Sequence[int]],
    threads: int = 1,
    impl=None,
) -> int:
    mod = impl or _impl
    return _reduce_max(mod.max_orthogonal_columns, (p, m, k, columns), patterns, threads)
