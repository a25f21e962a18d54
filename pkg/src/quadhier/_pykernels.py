"""Pure-Python subspace-scan kernels (fallback for the compiled ``_ckernels``)."""

from __future__ import annotations

from typing import Sequence

from .subspaces import enumerate_subspaces, members


def max_intersection(p: int, m: int, k: int, member: bytes, patterns: Sequence[Sequence[int]]) -> int:
    """Max over the given k-dim subspaces H of |{x in H, x != 0 : member[enc(x)]}|; -1 if none."""
    if len(member) != p**m:
        raise ValueError("membership table must have p^m entries")
    pw = [p**j for j in range(m)]
    best = -1
    for h in enumerate_subspaces(m, k, p, patterns):
        hits = sum(member[sum(c * w for c, w in zip(v, pw))] for v in members(h))
        best = max(best, hits)
    return best


def max_orthogonal_columns(
    p: int, m: int, k: int, columns: Sequence[Sequence[int]], patterns: Sequence[Sequence[int]]
) -> int:
    """Max over the given k-dim subspaces X of the number of columns orthogonal to all of X; -1 if none."""
    best = -1
    for x in enumerate_subspaces(m, k, p, patterns):
        dead = sum(
            1 for col in columns if all(sum(b * g for b, g in zip(row, col)) % p == 0 for row in x.basis)
        )
        best = max(best, dead)
    return best
