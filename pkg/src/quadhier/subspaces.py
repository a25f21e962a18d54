"""Dense linear algebra over F_p and canonical subspaces of F_p^m.

Matrices are tuples of row tuples with entries already reduced mod p. A
:class:`Subspace` stores its basis in reduced row-echelon form, so equality
of subspaces is equality of basis matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

from .errors import DimOutOfRange

Vector = tuple[int, ...]
Matrix = tuple[Vector, ...]


def as_matrix(rows: Iterable[Sequence[int]], p: int) -> Matrix:
    return tuple(tuple(int(x) % p for x in row) for row in rows)


def transpose(a: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    if not a:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*a))


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], p: int) -> Matrix:
    if not a:
        return ()
    bt = transpose(b)
    if not bt:
        return tuple(() for _ in a)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) % p for col in bt) for row in a)


def rref(a: Sequence[Sequence[int]], p: int) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row-echelon form; returns (nonzero rows, pivot columns)."""
    rows = [[x % p for x in row] for row in a]
    if not rows:
        return (), ()
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return tuple(tuple(row) for row in rows[:r]), tuple(pivots)


def rank(a: Sequence[Sequence[int]], p: int) -> int:
    return len(rref(a, p)[1])


@dataclass(frozen=True)
class Subspace:
    p: int
    ambient_dim: int
    basis: Matrix

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(row) if x) for row in self.basis)

    def __len__(self) -> int:
        return self.p**self.dim

    def __contains__(self, v: Sequence[int]) -> bool:
        # RREF: the coefficients of v are its entries at the pivot columns
        p = self.p
        w = [x % p for x in v]
        for row, c in zip(self.basis, self.pivots):
            f = w[c]
            if f:
                w = [(x - f * y) % p for x, y in zip(w, row)]
        return not any(w)

    def __le__(self, other: Subspace) -> bool:
        return all(row in other for row in self.basis)


def zero_subspace(m: int, p: int) -> Subspace:
    return Subspace(p, m, ())


def full_space(m: int, p: int) -> Subspace:
    return Subspace(p, m, tuple(tuple(int(i == j) for j in range(m)) for i in range(m)))


def span(vectors: Iterable[Sequence[int]], p: int, m: int | None = None) -> Subspace:
    vecs = [tuple(v) for v in vectors]
    if m is None:
        if not vecs:
            raise ValueError("ambient dimension needed to span an empty list")
        m = len(vecs[0])
    if any(len(v) != m for v in vecs):
        raise ValueError(f"all vectors must have length {m}")
    basis, _ = rref(vecs, p)
    return Subspace(p, m, basis)


def members(h: Subspace) -> Iterator[Vector]:
    """All p^k vectors of h, lex over coefficient tuples (first basis row most significant)."""
    p, m = h.p, h.ambient_dim
    for coeffs in product(range(p), repeat=h.dim):
        v = [0] * m
        for c, row in zip(coeffs, h.basis):
            if c:
                v = [(x + c * y) % p for x, y in zip(v, row)]
        yield tuple(v)


def null_space(a: Sequence[Sequence[int]], p: int, ncols: int | None = None) -> Subspace:
    """Right null space {v : A v = 0}. ``ncols`` is required when A has no rows."""
    if ncols is None:
        if not a:
            raise ValueError("ncols needed for a matrix with no rows")
        ncols = len(a[0])
    if not a:
        return full_space(ncols, p)
    r, pivots = rref(a, p)
    pivset = set(pivots)
    free = [j for j in range(ncols) if j not in pivset]
    vecs = []
    for fcol in free:
        v = [0] * ncols
        v[fcol] = 1
        for row, pc in zip(r, pivots):
            v[pc] = -row[fcol] % p
        vecs.append(v)
    return span(vecs, p, ncols)


def annihilator(h: Subspace) -> Subspace:
    """Orthogonal complement under the standard dot product."""
    return null_space(h.basis, h.p, h.ambient_dim)


def subspace_sum(h: Subspace, k: Subspace) -> Subspace:
    return span(h.basis + k.basis, h.p, h.ambient_dim)


def intersect(h: Subspace, k: Subspace) -> Subspace:
    p, m = h.p, h.ambient_dim
    if not h.basis or not k.basis:
        return zero_subspace(m, p)
    ann = annihilator(k).basis
    if not ann:
        return h
    # coefficient vectors c with (c . B_h) orthogonal to every row of ann(K)
    coeffs = null_space(matmul(ann, transpose(h.basis), p), p, h.dim)
    return span((tuple(sum(c * row[j] for c, row in zip(cv, h.basis)) % p for j in range(m)) for cv in coeffs.basis), p, m)


def gaussian_binomial(m: int, k: int, p: int) -> int:
    if not 0 <= k <= m:
        return 0
    num = den = 1
    for i in range(k):
        num *= p ** (m - i) - 1
        den *= p ** (i + 1) - 1
    return num // den


def pivot_patterns(m: int, k: int) -> list[tuple[int, ...]]:
    """Pivot-column sets of k-dim RREF bases, in lexicographic order."""
    if not 0 <= k <= m:
        raise DimOutOfRange(f"dimension {k} outside [0, {m}]")
    return list(combinations(range(m), k))


def free_positions(pattern: Sequence[int], m: int) -> list[tuple[int, int]]:
    pivset = set(pattern)
    return [(i, j) for i, c in enumerate(pattern) for j in range(c + 1, m) if j not in pivset]


def enumerate_subspaces(
    m: int, k: int, p: int, patterns: Sequence[Sequence[int]] | None = None
) -> Iterator[Subspace]:
    """Every k-dim subspace of F_p^m exactly once: pivot patterns in lex order, then free entries.

    ``patterns`` restricts the walk to a subset of pivot patterns (a work unit).
    """
    if not 0 <= k <= m:
        raise DimOutOfRange(f"dimension {k} outside [0, {m}]")
    if patterns is None:
        patterns = pivot_patterns(m, k)
    for pattern in patterns:
        free = free_positions(pattern, m)
        template = [[0] * m for _ in pattern]
        for i, c in enumerate(pattern):
            template[i][c] = 1
        for vals in product(range(p), repeat=len(free)):
            for (i, j), x in zip(free, vals):
                template[i][j] = x
            yield Subspace(p, m, tuple(tuple(row) for row in template))
