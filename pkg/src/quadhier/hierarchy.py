"""Weight hierarchies of C_{D_a}: closed forms and two exhaustive oracles.

* closed form: the three rank/sign cases for a != 0;
* oracle A: d_r = n - max |D cap H| over (m - r)-dim subspaces H of the ambient space;
* oracle B: d_r = min |Supp(V)| over r-dim subcodes V, straight from the definition.

The oracles share nothing but the subspace enumeration order: A tests
membership of field elements, B takes dot products with generator columns.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Any, Iterable, Literal

from . import kernels
from .code import TraceCode, build_code
from .errors import AZeroOutOfScope, BudgetExceeded, DimensionDeficit, RankZero
from .gf import quad_char
from .qform import QuadraticForm
from .subspaces import gaussian_binomial, pivot_patterns

MAX_FIELD = 3**6
DEFAULT_BUDGET = 200_000


@dataclass(frozen=True)
class FormProfile:
    p: int
    m: int
    rank: int
    l: int
    s: int
    sign: int
    a: int

    @property
    def parity(self) -> Literal["even", "odd"]:
        return "even" if self.rank % 2 == 0 else "odd"

    @property
    def eps(self) -> int:
        """(-1)^{s(p-1)/2} * sign, the quantity every case dispatches on."""
        return quad_char(-1, self.p) ** self.s * self.sign

    @property
    def theorem(self) -> int | None:
        """Which closed-form case applies (1, 2 or 3); None when a = 0 or f = 0."""
        if self.a % self.p == 0 or self.rank == 0:
            return None
        if self.parity == "even":
            return 1
        return 2 if quad_char(self.a, self.p) == self.eps else 3

    @classmethod
    def of(cls, f: QuadraticForm, a: int) -> FormProfile:
        return cls(f.p, f.dim, f.rank, f.radical_dim, f.rank // 2, f.sign, a % f.p)


def closed_form(profile: FormProfile) -> list[int]:
    """[d_1, ..., d_m] for a != 0."""
    p, m, s, l = profile.p, profile.m, profile.s, profile.l
    if profile.a % p == 0:
        raise AZeroOutOfScope("no closed form is provided for a = 0")
    if profile.rank == 0:
        raise RankZero("the zero form has an empty defining set for a != 0")
    e = profile.eps
    out = []
    if profile.theorem == 1:
        for r in range(1, m + 1):
            if r <= s:
                d = p ** (m - 1) - p ** (m - r - 1) - (e + 1) * p ** (s + l - 1)
            elif r < m:
                d = p ** (m - 1) - 2 * p ** (m - r - 1) - e * p ** (s + l - 1)
            else:
                d = p ** (m - 1) - e * p ** (s + l - 1)
            out.append(d)
    elif profile.theorem == 2:
        for r in range(1, m + 1):
            if r <= s:
                d = p ** (m - 1) - p ** (m - r - 1)
            elif r < m:
                d = p ** (m - 1) + p ** (s + l) - 2 * p ** (m - r - 1)
            else:
                d = p ** (m - 1) + p ** (s + l)
            out.append(d)
    else:
        for r in range(1, m + 1):
            if r <= s:
                d = p ** (m - 1) - p ** (m - r - 1) - p ** (s + l) - p ** (s + l - 1)
            elif r < m:
                d = p ** (m - 1) - p ** (s + l) - 2 * p ** (m - r - 1)
            else:
                d = p ** (m - 1) - p ** (s + l)
            out.append(d)
    return out


def even_overlap_values(profile: FormProfile) -> tuple[int, int]:
    """Both even-rank branch formulas evaluated at r = s (they must coincide)."""
    p, m, s, l, e = profile.p, profile.m, profile.s, profile.l, profile.eps
    first = p ** (m - 1) - p ** (m - s - 1) - (e + 1) * p ** (s + l - 1)
    second = p ** (m - 1) - 2 * p ** (m - s - 1) - e * p ** (s + l - 1)
    return first, second


def _check_search(code: TraceCode, k: int, budget: int) -> None:
    p, m = code.ctx.p, code.ctx.m
    if code.dim < m:
        raise DimensionDeficit(f"code dimension {code.dim} < m = {m}")
    if p**m > MAX_FIELD:
        raise BudgetExceeded(f"ambient space of size {p}^{m} exceeds {MAX_FIELD}")
    count = gaussian_binomial(m, k, p)
    if count > budget:
        raise BudgetExceeded(f"{count} subspaces of dimension {k} exceed the budget {budget}")


def max_intersection(code: TraceCode, k: int, *, budget: int = DEFAULT_BUDGET, threads: int = 1, impl=None) -> int:
    """max |D cap H| over k-dim subspaces H of F_p^m."""
    _check_search(code, k, budget)
    p, m = code.ctx.p, code.ctx.m
    member = bytearray(p**m)
    for c in code.D.codes:
        member[c] = 1
    return kernels.max_intersection(p, m, k, bytes(member), pivot_patterns(m, k), threads, impl)


def oracle_lemma1(code: TraceCode, r: int, *, budget: int = DEFAULT_BUDGET, threads: int = 1, impl=None) -> int:
    m = code.ctx.m
    if not 1 <= r <= m:
        raise ValueError(f"r must lie in [1, {m}]")
    return code.n - max_intersection(code, m - r, budget=budget, threads=threads, impl=impl)


def oracle_definition(code: TraceCode, r: int, *, budget: int = DEFAULT_BUDGET, threads: int = 1, impl=None) -> int:
    p, m = code.ctx.p, code.ctx.m
    if not 1 <= r <= m:
        raise ValueError(f"r must lie in [1, {m}]")
    _check_search(code, r, budget)
    dead = kernels.max_orthogonal_columns(p, m, r, code.columns, pivot_patterns(m, r), threads, impl)
    return code.n - dead


@dataclass
class HierarchyRow:
    r: int
    closed: int | None = None
    oracle_a: int | None = None
    oracle_b: int | None = None

    @property
    def values(self) -> list[int]:
        return [v for v in (self.closed, self.oracle_a, self.oracle_b) if v is not None]

    @property
    def agree(self) -> bool:
        return len(set(self.values)) <= 1

    def record(self) -> dict[str, Any]:
        rec: dict[str, Any] = {"r": self.r}
        for key, val in (("closed", self.closed), ("oracleA", self.oracle_a), ("oracleB", self.oracle_b)):
            if val is not None:
                rec[key] = val
        rec["agree"] = self.agree
        return rec


@dataclass
class HierarchyReport:
    profile: FormProfile
    n: int
    dim: int
    rows: list[HierarchyRow]
    closed_status: Literal["ok", "out-of-scope", "not-requested"] = "ok"
    problems: list[str] = field(default_factory=list)

    @property
    def status(self) -> Literal["VERIFIED", "FAILED"]:
        return "FAILED" if self.problems else "VERIFIED"

    def hierarchy(self) -> list[int]:
        """One value per row (all sources agree on a VERIFIED report)."""
        return [row.values[0] for row in self.rows if row.values]

    def record(self) -> dict[str, Any]:
        pr = self.profile
        return {
            "invariants": {"rank": pr.rank, "l": pr.l, "s": pr.s, "sign": pr.sign},
            "n": self.n,
            "dim": self.dim,
            "closed_form": self.closed_status,
            "hierarchy": [row.record() for row in self.rows],
            "status": self.status,
            "problems": list(self.problems),
        }


def verify(
    f: QuadraticForm,
    a: int,
    r_set: Iterable[int] | None = None,
    *,
    oracles: bool = True,
    budget: int = DEFAULT_BUDGET,
    threads: int = 1,
    profile: FormProfile | None = None,
    impl=None,
) -> HierarchyReport:
    """Closed form (when a != 0) and both oracles for each requested r, cross-checked.

    ``profile`` overrides the invariants fed to the closed form; it exists so a
    corrupted profile can be shown to fail.
    """
    code = build_code(f, a)
    m = f.dim
    rs = sorted(set(r_set)) if r_set is not None else list(range(1, m + 1))
    if any(not 1 <= r <= m for r in rs):
        raise ValueError(f"r values must lie in [1, {m}]")
    prof = profile or FormProfile.of(f, a)
    rows = [HierarchyRow(r) for r in rs]
    status: Literal["ok", "out-of-scope", "not-requested"] = "ok"
    if prof.a % prof.p == 0:
        status = "out-of-scope"
    else:
        closed = closed_form(prof)
        for row in rows:
            row.closed = closed[row.r - 1]
    if oracles:
        for row in rows:
            row.oracle_a = oracle_lemma1(code, row.r, budget=budget, threads=threads, impl=impl)
            row.oracle_b = oracle_definition(code, row.r, budget=budget, threads=threads, impl=impl)
    report = HierarchyReport(replace(prof), code.n, code.dim, rows, status)

    for row in rows:
        if not row.agree:
            report.problems.append(f"r={row.r}: sources disagree {row.values}")
    for src in ("closed", "oracle_a", "oracle_b"):
        seq = [(row.r, getattr(row, src)) for row in rows if getattr(row, src) is not None]
        for (r0, d0), (r1, d1) in zip(seq, seq[1:]):
            if not d0 < d1:
                report.problems.append(f"{src}: d_{r0}={d0} is not below d_{r1}={d1}")
        for r, d in seq:
            if r == m and d != code.n:
                report.problems.append(f"{src}: d_m={d} differs from n={code.n}")
    return report
