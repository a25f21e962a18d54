"""Quadratic forms f: F_{p^m} -> F_p and their restrictions, duals and quotient.

A form is carried by its Gram matrix ``G`` in the polynomial basis, with
``G[i][i] = f(v_i)`` and ``G[i][j] = F(v_i, v_j)`` where
``F(x, y) = (f(x + y) - f(x) - f(y)) / 2``, so that ``f(X) = X^T G X``.
Forms built from trace polynomials additionally keep the field evaluator.

Discriminants are only ever stored as a square class: a concrete value
depends on the diagonalizing matrix, its quadratic character does not.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Literal, Sequence

from .errors import DegenerateAmbient, FormParseError, NotAQuadraticForm, ZeroDimSubspace
from .gf import FFElem, FieldCtx, quad_char, v_func
from .subspaces import (
    Matrix,
    Subspace,
    Vector,
    enumerate_subspaces,
    full_space,
    intersect,
    matmul,
    null_space,
    span,
    transpose,
    zero_subspace,
)

Term = tuple[FFElem, int]
DiscClass = Literal["square", "nonsquare"]

# exhaustive f(X) == X^T G X check is skipped above this field order
FULL_CHECK_LIMIT = 3**7


# ---------------------------------------------------------------------------
# form-spec grammar:  tr: c1*x^e1 [+|- c2*x^e2 ...]

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<x>x)|(?P<op>[-+*^]))")


def parse_form(text: str, ctx: FieldCtx) -> list[Term]:
    """Parse ``tr: ...`` into (coefficient, exponent) terms.

    Coefficients below p are prime-subfield constants; larger integers are
    base-p element encodings. A missing coefficient means 1.
    """
    head = re.match(r"\s*tr\s*:", text)
    if head is None:
        raise FormParseError("form must start with 'tr:'", text, len(text) - len(text.lstrip()))
    pos = head.end()
    tokens: list[tuple[str, str, int]] = []
    while pos < len(text):
        if not text[pos:].strip():
            break
        mt = _TOKEN.match(text, pos)
        if mt is None or mt.end() == pos:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise FormParseError(f"unexpected character {text[bad]!r}", text, bad)
        kind = mt.lastgroup
        tokens.append((kind, mt.group(kind), mt.start(kind)))
        pos = mt.end()

    terms: list[Term] = []
    i = 0

    def peek() -> tuple[str, str, int] | None:
        return tokens[i] if i < len(tokens) else None

    def fail(msg: str) -> FormParseError:
        t = peek()
        return FormParseError(msg, text, t[2] if t else len(text.rstrip()))

    if not tokens:
        raise fail("empty form")
    while i < len(tokens):
        sign = 1
        t = peek()
        if t[0] == "op" and t[1] in "+-":
            sign = -1 if t[1] == "-" else 1
            i += 1
        elif terms:
            raise fail("expected '+' or '-' between terms")
        t = peek()
        coeff: FFElem = ctx.one()
        if t is not None and t[0] == "int":
            c = int(t[1])
            if c >= ctx.order:
                raise fail(f"coefficient {c} is not an element encoding of F_{ctx.p}^{ctx.m}")
            coeff = ctx.from_int(c)
            i += 1
            t = peek()
            if t is None or t[1] != "*":
                raise fail("expected '*' after coefficient")
            i += 1
            t = peek()
        if t is None or t[0] != "x":
            raise fail("expected 'x'")
        i += 1
        exp = 1
        t = peek()
        if t is not None and t[1] == "^":
            i += 1
            t = peek()
            if t is None or t[0] != "int":
                raise fail("expected exponent")
            exp = int(t[1])
            i += 1
        if exp < 1:
            raise fail("exponents must be positive")
        terms.append((coeff * sign, exp))
    return terms


def format_form(terms: Sequence[Term]) -> str:
    parts = []
    for coeff, exp in terms:
        c = int(coeff)
        mono = f"x^{exp}" if exp != 1 else "x"
        parts.append(mono if c == 1 else f"{c}*{mono}")
    return "tr: " + " + ".join(parts)


# ---------------------------------------------------------------------------
# congruence diagonalization


def diagonalize(
    gram: Sequence[Sequence[int]], p: int, pivot: Literal["first", "last"] = "first"
) -> tuple[list[int], Matrix]:
    """Symmetric Gaussian elimination: returns (diag, M) with M^T G M = diag(diag).

    Nonzero diagonal entries come first. When every remaining diagonal entry
    vanishes but some F(v_i, v_j) does not, v_i is replaced by v_i + v_j
    (needs p odd).
    """
    n = len(gram)
    a = [[x % p for x in row] for row in gram]
    mt = [[int(i == j) for j in range(n)] for i in range(n)]  # rows of M^T = new basis vectors

    def pick(cands: list):
        return cands[0] if pivot == "first" else cands[-1]

    def add_to(dst: int, src: int, c: int) -> None:
        # v_dst += c v_src, applied as a congruence
        a[dst] = [(x + c * y) % p for x, y in zip(a[dst], a[src])]
        for row in a:
            row[dst] = (row[dst] + c * row[src]) % p
        mt[dst] = [(x + c * y) % p for x, y in zip(mt[dst], mt[src])]

    def swap(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        for row in a:
            row[i], row[j] = row[j], row[i]
        mt[i], mt[j] = mt[j], mt[i]

    for k in range(n):
        diag = [i for i in range(k, n) if a[i][i]]
        if diag:
            i = pick(diag)
        else:
            off = [(i, j) for i in range(k, n) for j in range(i + 1, n) if a[i][j]]
            if not off:
                break
            i, j = pick(off)
            add_to(i, j, 1)
        swap(i, k)
        inv = pow(a[k][k], p - 2, p)
        for j in range(k + 1, n):
            if a[k][j]:
                add_to(j, k, -a[k][j] * inv % p)
    return [a[i][i] for i in range(n)], transpose(mt) if n else ()


def _disc_class(diag: Sequence[int], p: int) -> tuple[int, DiscClass]:
    disc = 1
    for d in diag:
        if d:
            disc = disc * d % p
    return quad_char(disc, p), ("square" if quad_char(disc, p) == 1 else "nonsquare")


# ---------------------------------------------------------------------------
# forms


@dataclass(frozen=True)
class QuadraticForm:
    p: int
    dim: int
    gram: Matrix
    rank: int
    radical_dim: int
    sign: int
    disc_class: DiscClass
    ctx: FieldCtx | None = field(default=None, compare=False)
    terms: tuple[Term, ...] = field(default=(), compare=False)

    @property
    def is_degenerate(self) -> bool:
        return self.radical_dim > 0

    def __call__(self, x: FFElem | Sequence[int]) -> int:
        """f(x) for a field element or a coordinate vector."""
        if self.ctx is not None and self.terms:
            if not isinstance(x, FFElem):
                x = self.ctx.from_coords(x)
            total = self.ctx.zero()
            for c, e in self.terms:
                total = total + c * x**e
            return self.ctx.trace_coords(total.coords)
        v = x.coords if isinstance(x, FFElem) else x
        return self.bilinear(v, v)

    def bilinear(self, x: Sequence[int], y: Sequence[int]) -> int:
        """F(x, y) through the Gram matrix."""
        p = self.p
        return sum(xi * sum(g * yj for g, yj in zip(row, y)) for xi, row in zip(x, self.gram)) % p

    @cached_property
    def value_table(self) -> tuple[int, ...]:
        """f at every coordinate vector, indexed by base-p encoding."""
        p, m = self.p, self.dim
        table = []
        for code in range(p**m):
            v = []
            for _ in range(m):
                code, c = divmod(code, p)
                v.append(c)
            table.append(self.bilinear(v, v))
        return tuple(table)


def form_from_gram(p: int, gram: Sequence[Sequence[int]]) -> QuadraticForm:
    g = tuple(tuple(x % p for x in row) for row in gram)
    n = len(g)
    if any(len(row) != n for row in g) or any(g[i][j] != g[j][i] for i in range(n) for j in range(n)):
        raise NotAQuadraticForm("Gram matrix must be square and symmetric")
    diag, _ = diagonalize(g, p)
    r = sum(1 for d in diag if d)
    sign, cls = _disc_class(diag, p)
    return QuadraticForm(p, n, g, r, n - r, sign, cls)


def form_from_terms(ctx: FieldCtx, terms: Sequence[tuple[FFElem | int, int]]) -> QuadraticForm:
    """f(x) = Tr(sum c_i x^e_i), validated to be a quadratic form."""
    p, m = ctx.p, ctx.m
    norm: list[Term] = []
    for c, e in terms:
        if e < 1:
            raise NotAQuadraticForm(f"exponent {e} is not positive")
        norm.append((ctx.scalar(c) if isinstance(c, int) else c, int(e)))
    probe = QuadraticForm(p, m, (), 0, 0, 1, "square", ctx, tuple(norm))
    basis = ctx.basis()
    inv2 = (p + 1) // 2

    def polar(x: FFElem, y: FFElem) -> int:
        return (probe(x + y) - probe(x) - probe(y)) * inv2 % p

    for b in basis:
        fb = probe(b)
        for lam in range(p):
            if probe(b * lam) != lam * lam * fb % p:
                raise NotAQuadraticForm(f"f(lambda*x) != lambda^2 f(x) for lambda={lam}, x={list(b.coords)}")
    gram = [[polar(bi, bj) for bj in basis] for bi in basis]
    for i, bi in enumerate(basis):
        for j, bj in enumerate(basis):
            for k, bk in enumerate(basis):
                if polar(bi + bj, bk) != (gram[i][k] + gram[j][k]) % p:
                    raise NotAQuadraticForm("polarization is not bilinear")
    base = form_from_gram(p, gram)
    form = QuadraticForm(p, m, base.gram, base.rank, base.radical_dim, base.sign, base.disc_class, ctx, tuple(norm))
    if ctx.order <= FULL_CHECK_LIMIT:
        for x in ctx.elements():
            if form(x) != form.bilinear(x.coords, x.coords):
                raise NotAQuadraticForm(f"f(x) != X^T G X at x={list(x.coords)}")
    return form


def form_from_spec(text: str, ctx: FieldCtx) -> QuadraticForm:
    return form_from_terms(ctx, parse_form(text, ctx))


def _vec(x: FFElem | Sequence[int]) -> Vector:
    return x.coords if isinstance(x, FFElem) else tuple(x)


def polarize(f: QuadraticForm, x: FFElem | Sequence[int], y: FFElem | Sequence[int]) -> int:
    """F(x, y) = (f(x + y) - f(x) - f(y)) / 2 via the evaluator."""
    p = f.p
    if isinstance(x, FFElem) and isinstance(y, FFElem):
        s = x + y
    else:
        s = tuple((a + b) % p for a, b in zip(_vec(x), _vec(y)))
    return (f(s) - f(x) - f(y)) * ((p + 1) // 2) % p


def radical(f: QuadraticForm) -> Subspace:
    return null_space(f.gram, f.p, f.dim) if f.dim else zero_subspace(0, f.p)


def dual_space(f: QuadraticForm, h: Subspace) -> Subspace:
    """H^perp = {x : F(x, y) = 0 for all y in H}."""
    if not h.basis:
        return full_space(f.dim, f.p)
    return null_space(matmul(h.basis, f.gram, f.p), f.p, f.dim)


def restricted_gram(f: QuadraticForm, h: Subspace) -> Matrix:
    return matmul(matmul(h.basis, f.gram, f.p), transpose(h.basis), f.p)


def is_totally_isotropic(f: QuadraticForm, h: Subspace) -> bool:
    return not any(any(row) for row in restricted_gram(f, h))


@dataclass(frozen=True)
class RestrictedForm:
    subspace: Subspace
    gram: Matrix
    rank: int
    disc_class: DiscClass
    sign_factor: int

    @property
    def dim(self) -> int:
        return self.subspace.dim


def restrict(f: QuadraticForm, h: Subspace) -> RestrictedForm:
    g = restricted_gram(f, h)
    diag, _ = diagonalize(g, f.p)
    r = sum(1 for d in diag if d)
    sign, cls = _disc_class(diag, f.p)
    if r != h.dim - intersect(h, dual_space(f, h)).dim:
        raise ArithmeticError("restricted rank disagrees with d - dim(H cap H^perp)")  # pragma: no cover
    return RestrictedForm(h, g, r, cls, sign)


def count_points(f: QuadraticForm, h: Subspace, a: int) -> int:
    """|{x in H : f(x) = a}| from the rank and discriminant class of f|_H."""
    d = h.dim
    if d == 0:
        raise ZeroDimSubspace("point count needs a subspace of positive dimension")
    p = f.p
    res = restrict(f, h)
    r = res.rank
    minus_one = quad_char(-1, p)
    if r % 2 == 0:
        chi = minus_one ** (r // 2) * res.sign_factor
        return p ** (d - 1) + v_func(a, p) * chi * p ** (d - (r + 2) // 2)
    chi = minus_one ** ((r - 1) // 2) * quad_char(a, p) * res.sign_factor
    return p ** (d - 1) + chi * p ** (d - (r + 1) // 2)


def disc_product_check(f: QuadraticForm, h: Subspace) -> bool:
    """eta(Delta_H) * eta(Delta_{H^perp}) == (-1)^{e(p-1)/2} * sign, e = dim(H cap H^perp)."""
    if f.is_degenerate:
        raise DegenerateAmbient("discriminant product identity needs a non-degenerate form")
    hp = dual_space(f, h)
    e = intersect(h, hp).dim
    lhs = restrict(f, h).sign_factor * restrict(f, hp).sign_factor
    return lhs == quad_char(-1, f.p) ** e * f.sign


def isotropic_subspaces(f: QuadraticForm, k: int) -> Iterator[Subspace]:
    """All k-dim totally isotropic subspaces (H contained in H^perp)."""
    for h in enumerate_subspaces(f.dim, k, f.p):
        if is_totally_isotropic(f, h):
            yield h


# ---------------------------------------------------------------------------
# quotient by the radical


@dataclass(frozen=True)
class QuotientMap:
    """Canonical projection F_p^m -> F_p^m / radical with a coordinate section.

    The section is spanned by the unit vectors at the non-pivot columns of the
    radical's RREF basis, so the projection just clears the radical component
    and keeps those coordinates.
    """

    p: int
    ambient_dim: int
    radical: Subspace
    section: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.section)

    def project(self, x: FFElem | Sequence[int]) -> Vector:
        p = self.p
        v = list(_vec(x))
        for row, c in zip(self.radical.basis, self.radical.pivots):
            f = v[c]
            if f:
                v = [(a - f * b) % p for a, b in zip(v, row)]
        return tuple(v[j] for j in self.section)

    def lift(self, y: Sequence[int]) -> Vector:
        v = [0] * self.ambient_dim
        for j, c in zip(self.section, y):
            v[j] = c % self.p
        return tuple(v)

    def image(self, h: Subspace) -> Subspace:
        return span((self.project(row) for row in h.basis), self.p, self.dim)

    @cached_property
    def matrix(self) -> Matrix:
        """dim x m matrix of the projection."""
        cols = [self.project(tuple(int(i == j) for j in range(self.ambient_dim))) for i in range(self.ambient_dim)]
        return transpose(cols) if cols else ()


def quotient(f: QuadraticForm) -> tuple[QuotientMap, QuadraticForm]:
    rad = radical(f)
    piv = set(rad.pivots)
    section = tuple(j for j in range(f.dim) if j not in piv)
    qmap = QuotientMap(f.p, f.dim, rad, section)
    gbar = [[f.gram[i][j] for j in section] for i in section]
    return qmap, form_from_gram(f.p, gbar)
