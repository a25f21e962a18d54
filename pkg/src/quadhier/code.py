"""Trace codes C_D with defining set D_a = {x != 0 : f(x) = a}."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import product
from typing import Any, Sequence

from .errors import DegenerateCode, EmptyDefiningSet, TooLarge
from .gf import FFElem, FieldCtx
from .qform import QuadraticForm, count_points, format_form
from .subspaces import Matrix, Subspace, Vector, full_space, rank

# full codeword enumeration is refused above this many messages
WDIST_LIMIT = 3**6


@dataclass(frozen=True)
class DefiningSet:
    a: int
    elements: tuple[FFElem, ...]

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def codes(self) -> tuple[int, ...]:
        return tuple(int(d) for d in self.elements)


@dataclass(frozen=True)
class TraceCode:
    ctx: FieldCtx
    form: QuadraticForm
    D: DefiningSet
    gen: Matrix
    dim: int

    @property
    def n(self) -> int:
        return len(self.D)

    @property
    def columns(self) -> tuple[Vector, ...]:
        return tuple(zip(*self.gen))


def build_code(f: QuadraticForm, a: int) -> TraceCode:
    ctx = f.ctx
    if ctx is None:
        raise ValueError("trace codes need a form defined over a field context")
    p = ctx.p
    a %= p
    elems = tuple(x for x in ctx.elements() if not x.is_zero() and f(x) == a)
    if not elems:
        raise EmptyDefiningSet(f"no nonzero x with f(x) = {a}")
    predicted = count_points(f, full_space(ctx.m, p), a) - (a == 0)
    if predicted != len(elems):
        raise ArithmeticError(f"defining set size {len(elems)} != point count {predicted}")  # pragma: no cover
    gen = tuple(tuple(ctx.trace_coords((v * d).coords) for d in elems) for v in ctx.basis())
    return TraceCode(ctx, f, DefiningSet(a, elems), gen, rank(gen, p))


def encode_message(code: TraceCode, x: FFElem | Sequence[int]) -> Vector:
    """Codeword of x as the x-combination of generator rows."""
    p = code.ctx.p
    coords = x.coords if isinstance(x, FFElem) else tuple(x)
    out = [0] * code.n
    for c, row in zip(coords, code.gen):
        if c:
            out = [(o + c * g) % p for o, g in zip(out, row)]
    return tuple(out)


codeword = encode_message


def hamming_weight(v: Sequence[int]) -> int:
    return sum(1 for x in v if x)


def weight_distribution(code: TraceCode, limit: int = WDIST_LIMIT) -> dict[int, int]:
    """Weight -> number of codewords, over all p^m messages."""
    p, m = code.ctx.p, code.ctx.m
    if p**m > limit:
        raise TooLarge(f"{p}^{m} messages exceed the enumeration limit {limit}")
    counts = Counter(hamming_weight(encode_message(code, x)) for x in product(range(p), repeat=m))
    return dict(sorted(counts.items()))


def subcode_support(code: TraceCode, x: Subspace) -> int:
    """|Supp(V)| for the subcode V spanned by the codewords of the message subspace x."""
    if code.dim < code.ctx.m:
        raise DegenerateCode(f"code dimension {code.dim} < m = {code.ctx.m}")
    p = code.ctx.p
    dead = 0
    for col in code.columns:
        if all(sum(b * g for b, g in zip(row, col)) % p == 0 for row in x.basis):
            dead += 1
    return code.n - dead


def code_record(code: TraceCode) -> dict[str, Any]:
    ctx = code.ctx
    return {
        "p": ctx.p,
        "m": ctx.m,
        "modulus": list(ctx.modulus),
        "form": format_form(code.form.terms),
        "a": code.D.a,
        "n": code.n,
        "dim": code.dim,
        "defining_set": list(code.D.codes),
        "generator": [list(row) for row in code.gen],
    }
