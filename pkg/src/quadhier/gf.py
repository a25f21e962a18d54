"""Exact arithmetic in F_p and F_{p^m} (polynomial basis), trace, quadratic character.

Elements of F_{p^m} are coordinate tuples ``(c_0, ..., c_{m-1})`` in the basis
``1, x, ..., x^{m-1}``. Their canonical integer encoding is ``sum c_j p^j``
(``c_0`` least significant); every ordering in the package follows it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterator, Sequence

from .errors import BadDegree, DivisionByZero, EvenCharacteristic, NotPrime, Reducible

Poly = tuple[int, ...]  # constant term first, no trailing zeros


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# polynomials over F_p


def _trim(a: list[int]) -> Poly:
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def poly_divmod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[Poly, Poly]:
    b = _trim(list(b))
    if not b:
        raise DivisionByZero("polynomial division by zero")
    r = [x % p for x in a]
    inv_lead = pow(b[-1], p - 2, p)
    db = len(b) - 1
    q = [0] * max(len(r) - db, 0)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i] * inv_lead % p
        if c:
            q[i - db] = c
            for j, bj in enumerate(b):
                r[i - db + j] = (r[i - db + j] - c * bj) % p
    return _trim(q), _trim(r[:db] if db else [])


def poly_mod(a: Sequence[int], b: Sequence[int], p: int) -> Poly:
    return poly_divmod(a, b, p)[1]


def poly_sub(a: Sequence[int], b: Sequence[int], p: int) -> Poly:
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def poly_gcd(a: Sequence[int], b: Sequence[int], p: int) -> Poly:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, poly_mod(a, b, p)
    if not a:
        return a
    inv = pow(a[-1], p - 2, p)
    return tuple(c * inv % p for c in a)


def poly_powmod(base: Sequence[int], e: int, mod: Sequence[int], p: int) -> Poly:
    result: Poly = (1,)
    base = poly_mod(base, mod, p)
    while e:
        if e & 1:
            result = poly_mod(poly_mul(result, base, p), mod, p)
        base = poly_mod(poly_mul(base, base, p), mod, p)
        e >>= 1
    return result


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over F_p."""
    f = _trim([c % p for c in f])
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = (0, 1)
    if poly_sub(poly_powmod(x, p**n, f, p), x, p):
        return False
    for q in _prime_factors(n):
        h = poly_sub(poly_powmod(x, p ** (n // q), f, p), x, p)
        if len(poly_gcd(f, h, p)) != 1:
            return False
    return True


def smallest_irreducible(p: int, m: int) -> Poly:
    """Lex-smallest monic irreducible of degree m, comparing constant term first."""
    for low in product(range(p), repeat=m):
        cand = low + (1,)
        if is_irreducible(cand, p):
            return cand
    raise Reducible(f"no irreducible polynomial of degree {m} over F_{p}")  # unreachable


# ---------------------------------------------------------------------------
# prime-field helpers


def quad_char(c: int, p: int) -> int:
    """Quadratic character of F_p, with quad_char(0) = 0."""
    c %= p
    if c == 0:
        return 0
    return 1 if pow(c, (p - 1) // 2, p) == 1 else -1


def v_func(c: int, p: int) -> int:
    return p - 1 if c % p == 0 else -1


def inv_mod(c: int, p: int) -> int:
    c %= p
    if c == 0:
        raise DivisionByZero("inverse of 0 in F_p")
    return pow(c, p - 2, p)


# ---------------------------------------------------------------------------
# extension field


@dataclass(frozen=True)
class FieldCtx:
    """Arithmetic context for F_{p^m} = F_p[x]/(modulus)."""

    p: int
    m: int
    modulus: Poly = field(compare=True)

    @property
    def order(self) -> int:
        return self.p**self.m

    # -- element plumbing
    def zero(self) -> FFElem:
        return FFElem(self, (0,) * self.m)

    def one(self) -> FFElem:
        return self.scalar(1)

    def scalar(self, c: int) -> FFElem:
        return FFElem(self, (c % self.p,) + (0,) * (self.m - 1))

    def gen(self) -> FFElem:
        """The class of x (equals the scalar 0 when m = 1 and modulus is x)."""
        if self.m == 1:
            return self.scalar(-self.modulus[0])
        return FFElem(self, (0, 1) + (0,) * (self.m - 2))

    def basis(self) -> list[FFElem]:
        return [FFElem(self, tuple(int(i == j) for j in range(self.m))) for i in range(self.m)]

    def from_int(self, code: int) -> FFElem:
        if not 0 <= code < self.order:
            raise ValueError(f"encoding {code} out of range for F_{self.p}^{self.m}")
        coords = []
        for _ in range(self.m):
            code, c = divmod(code, self.p)
            coords.append(c)
        return FFElem(self, tuple(coords))

    def from_coords(self, coords: Sequence[int]) -> FFElem:
        if len(coords) != self.m:
            raise ValueError(f"expected {self.m} coordinates, got {len(coords)}")
        return FFElem(self, tuple(c % self.p for c in coords))

    def elements(self) -> Iterator[FFElem]:
        """All field elements in ascending encoding order."""
        for code in range(self.order):
            yield self.from_int(code)

    # -- raw coordinate arithmetic
    def _mul(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        r = poly_mod(poly_mul(_trim(list(a)), _trim(list(b)), self.p), self.modulus, self.p)
        return tuple(r) + (0,) * (self.m - len(r))

    @cached_property
    def _trace_basis(self) -> tuple[int, ...]:
        return tuple(trace(b) for b in self.basis())

    def trace_coords(self, coords: Sequence[int]) -> int:
        """Trace through the cached linear functional (agrees with :func:`trace`)."""
        return sum(c * t for c, t in zip(coords, self._trace_basis)) % self.p


def ctx_new(p: int, m: int, modulus: Sequence[int] | None = None) -> FieldCtx:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p == 2:
        raise EvenCharacteristic("characteristic 2 is not supported")
    if m < 1:
        raise BadDegree(f"extension degree must be >= 1, got {m}")
    if modulus is None:
        mod = smallest_irreducible(p, m)
    else:
        mod = tuple(int(c) % p for c in modulus)
        if len(mod) != m + 1 or mod[-1] != 1:
            raise BadDegree(f"modulus must be monic of degree {m} ({m + 1} coefficients, constant first)")
        if not is_irreducible(mod, p):
            raise Reducible(f"modulus {list(mod)} is reducible over F_{p}")
    return FieldCtx(p, m, mod)


@dataclass(frozen=True)
class FFElem:
    ctx: FieldCtx = field(repr=False)
    coords: tuple[int, ...]

    def __int__(self) -> int:
        code = 0
        for c in reversed(self.coords):
            code = code * self.ctx.p + c
        return code

    def __index__(self) -> int:
        return int(self)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def _coerce(self, other: FFElem | int) -> FFElem:
        if isinstance(other, int):
            return self.ctx.scalar(other)
        if other.ctx != self.ctx:
            raise ValueError("elements from different fields")
        return other

    def __add__(self, other: FFElem | int) -> FFElem:
        o = self._coerce(other)
        p = self.ctx.p
        return FFElem(self.ctx, tuple((a + b) % p for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self) -> FFElem:
        p = self.ctx.p
        return FFElem(self.ctx, tuple(-a % p for a in self.coords))

    def __sub__(self, other: FFElem | int) -> FFElem:
        return self + (-self._coerce(other))

    def __rsub__(self, other: int) -> FFElem:
        return self._coerce(other) - self

    def __mul__(self, other: FFElem | int) -> FFElem:
        if isinstance(other, int):
            p = self.ctx.p
            return FFElem(self.ctx, tuple(a * other % p for a in self.coords))
        o = self._coerce(other)
        return FFElem(self.ctx, self.ctx._mul(self.coords, o.coords))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> FFElem:
        if e < 0:
            return inv(self) ** (-e)
        result = self.ctx.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __truediv__(self, other: FFElem | int) -> FFElem:
        return self * inv(self._coerce(other))

    def __repr__(self) -> str:
        return f"FFElem({int(self)}: {list(self.coords)})"


def add(a: FFElem, b: FFElem) -> FFElem:
    return a + b


def mul(a: FFElem, b: FFElem) -> FFElem:
    return a * b


def neg(a: FFElem) -> FFElem:
    return -a


def inv(a: FFElem) -> FFElem:
    if a.is_zero():
        raise DivisionByZero("inverse of 0")
    ctx = a.ctx
    # a^(q-2) = a^-1 in a field of order q
    result = ctx.one()
    base = a
    e = ctx.order - 2
    while e:
        if e & 1:
            result = result * base
        base = base * base
        e >>= 1
    return result


def trace(a: FFElem) -> int:
    """Absolute trace Tr(a) = a + a^p + ... + a^(p^(m-1)) as an integer in [0, p)."""
    ctx = a.ctx
    total = ctx.zero()
    conj = a
    for _ in range(ctx.m):
        total = total + conj
        conj = conj**ctx.p
    if any(total.coords[1:]):
        raise ArithmeticError("trace did not land in the prime field")  # pragma: no cover
    return total.coords[0]
