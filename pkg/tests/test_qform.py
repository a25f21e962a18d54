import random
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import EXAMPLE_SPECS, brute_count
from quadhier.errors import DegenerateAmbient, FormParseError, NotAQuadraticForm, ZeroDimSubspace
from quadhier.gf import ctx_new, quad_char
from quadhier.qform import (
    count_points,
    diagonalize,
    disc_product_check,
    dual_space,
    form_from_gram,
    form_from_spec,
    form_from_terms,
    format_form,
    is_totally_isotropic,
    isotropic_subspaces,
    parse_form,
    polarize,
    quotient,
    radical,
    restrict,
)
from quadhier.subspaces import (
    enumerate_subspaces,
    full_space,
    intersect,
    matmul,
    span,
    transpose,
    zero_subspace,
)


# -- grammar


def test_parse_examples(ctx34):
    assert [(int(c), e) for c, e in parse_form("tr: x^12", ctx34)] == [(1, 12)]
    assert [(int(c), e) for c, e in parse_form("tr: x^2 + x^4", ctx34)] == [(1, 2), (1, 4)]
    assert [(int(c), e) for c, e in parse_form("tr:x^2-x^4", ctx34)] == [(1, 2), (2, 4)]
    assert [(int(c), e) for c, e in parse_form(" tr : 2 * x ^ 2 + 40*x^4", ctx34)] == [(2, 2), (40, 4)]


@pytest.mark.parametrize(
    "text,pos",
    [("x^2", 0), ("tr: x^2 +", 9), ("tr: x^2 x^4", 8), ("tr: 2 x^2", 6), ("tr: x^", 6), ("tr: y^2", 4), ("tr: 81*x^2", 4)],
)
def test_parse_errors_carry_positions(ctx34, text, pos):
    with pytest.raises(FormParseError) as err:
        parse_form(text, ctx34)
    assert err.value.pos == pos


def test_format_roundtrip(ctx34):
    for spec in ["tr: x^12", "tr: x^2 + x^4", "tr: x^2 - x^4", "tr: 7*x^2 + 2*x^10"]:
        terms = parse_form(spec, ctx34)
        again = parse_form(format_form(terms), ctx34)
        assert [(int(c), e) for c, e in again] == [(int(c), e) for c, e in terms]


# -- construction and invariants


@pytest.mark.parametrize(
    "name,rank,l,sign",
    [("ex1", 2, 2, 1), ("ex2", 3, 1, -1), ("ex3", 3, 1, 1)],
)
def test_example_invariants(example_forms, name, rank, l, sign):
    f = example_forms[name]
    assert (f.rank, f.radical_dim, f.sign) == (rank, l, sign)
    assert f.rank + f.radical_dim == f.dim


def test_tr_x_cubed_rejected(ctx34):
    with pytest.raises(NotAQuadraticForm):
        form_from_spec("tr: x^3", ctx34)


def test_non_quadratic_exponent_rejected(ctx34):
    with pytest.raises(NotAQuadraticForm):
        form_from_spec("tr: x^5", ctx34)


@pytest.mark.parametrize("name", list(EXAMPLE_SPECS))
def test_gram_reproduces_evaluator(example_forms, ctx34, name):
    f = example_forms[name]
    for i in range(4):
        for j in range(4):
            assert f.gram[i][j] == f.gram[j][i]
    basis = ctx34.basis()
    for i, b in enumerate(basis):
        assert f.gram[i][i] == f(b)
    for x in ctx34.elements():
        assert f(x) == f.bilinear(x.coords, x.coords)


def test_full_check_over_f243():
    ctx = ctx_new(3, 5)
    f = form_from_spec("tr: x^2 + 2*x^4", ctx)
    for x in ctx.elements():
        assert f(x) == f.bilinear(x.coords, x.coords)


def test_polarize(example_forms, ctx34):
    f = example_forms["ex2"]
    els = list(ctx34.elements())
    for x in els:
        assert polarize(f, x, ctx34.zero()) == 0
        assert polarize(f, x, x) == f(x)
    rng = random.Random(7)
    for _ in range(200):
        x, y = rng.choice(els), rng.choice(els)
        assert polarize(f, x, y) == polarize(f, y, x) == f.bilinear(x.coords, y.coords)


def test_diagonalize_congruence_and_pivot_independence(example_forms):
    for f in example_forms.values():
        for order in ("first", "last"):
            diag, m = diagonalize(f.gram, 3, order)
            assert matmul(matmul(transpose(m), f.gram, 3), m, 3) == tuple(
                tuple(diag[i] if i == j else 0 for j in range(4)) for i in range(4)
            )
        d1, _ = diagonalize(f.gram, 3, "first")
        d2, _ = diagonalize(f.gram, 3, "last")
        prod = lambda ds: __import__("math").prod(d for d in ds if d)
        assert quad_char(prod(d1), 3) == quad_char(prod(d2), 3) == f.sign


def _random_invertible(n, p, rnd):
    while True:
        m = [[rnd.randrange(p) for _ in range(n)] for _ in range(n)]
        if span(m, p).dim == n:
            return m


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([3, 5, 7]), st.integers(1, 5), st.integers(0, 2**32))
def test_sign_and_rank_invariant_under_congruence(p, n, seed):
    rnd = random.Random(seed)
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            g[i][j] = g[j][i] = rnd.randrange(p)
    f = form_from_gram(p, g)
    pm = _random_invertible(n, p, rnd)
    g2 = matmul(matmul(transpose(pm), g, p), pm, p)
    f2 = form_from_gram(p, g2)
    assert (f.rank, f.sign) == (f2.rank, f2.sign)
    assert f.rank == span(g, p, n).dim if any(any(r) for r in g) else f.rank == 0
    diag, m = diagonalize(g, p)
    assert matmul(matmul(transpose(m), g, p), m, p) == tuple(
        tuple(diag[i] if i == j else 0 for j in range(n)) for i in range(n)
    )


def test_zero_form(ctx34):
    f = form_from_terms(ctx34, [])
    assert f.rank == 0 and f.sign == 1 and f.disc_class == "square"
    assert radical(f) == full_space(4, 3)


# -- radical, duals, restriction


def test_radical(example_forms, ctx34):
    assert radical(example_forms["ex1"]).dim == 2
    assert radical(form_from_spec("tr: x^2", ctx34)).dim == 0
    for f in example_forms.values():
        rad = radical(f)
        assert rad.dim == f.radical_dim
        for v in __import__("quadhier.subspaces", fromlist=["members"]).members(rad):
            assert f(v) == 0


def test_dual_space_cases(example_forms, ctx34):
    f = example_forms["ex1"]
    assert dual_space(f, zero_subspace(4, 3)) == full_space(4, 3)
    assert dual_space(f, full_space(4, 3)) == radical(f)
    g = form_from_spec("tr: x^2", ctx34)
    for k in range(5):
        for h in list(enumerate_subspaces(4, k, 3))[::9]:
            assert dual_space(g, h).dim == 4 - k
    for h in list(enumerate_subspaces(4, 2, 3))[::5]:
        hp = dual_space(f, h)
        assert radical(f) <= hp
        assert hp.dim >= 4 - h.dim
        for x in hp.basis:
            for y in h.basis:
                assert f.bilinear(x, y) == 0


def test_restrict_cases(example_forms, ctx34):
    f = example_forms["ex1"]
    r = restrict(f, radical(f))
    assert r.rank == 0 and r.disc_class == "square" and r.sign_factor == 1
    full = restrict(f, full_space(4, 3))
    assert full.rank == f.rank and full.disc_class == f.disc_class
    g = form_from_spec("tr: x^2", ctx34)
    for u in ctx34.elements():
        if g(u) != 0:
            assert restrict(g, span([u.coords], 3)).rank == 1


def test_restricted_rank_identity(example_forms):
    for f in example_forms.values():
        for k in range(1, 5):
            for h in list(enumerate_subspaces(4, k, 3))[::3]:
                rf = restrict(f, h)
                assert rf.rank == h.dim - intersect(h, dual_space(f, h)).dim


# -- point counts


def test_count_points_examples(example_forms):
    full = full_space(4, 3)
    assert count_points(example_forms["ex1"], full, 1) == 36
    assert count_points(example_forms["ex3"], full, 1) == 18
    with pytest.raises(ZeroDimSubspace):
        count_points(example_forms["ex1"], zero_subspace(4, 3), 1)


def test_count_points_on_totally_singular(example_forms):
    f = example_forms["ex1"]
    rad = radical(f)
    for a in range(3):
        assert count_points(f, rad, a) == (3**rad.dim if a == 0 else 0)


def test_count_points_random_vs_brute(example_forms):
    rng = random.Random(3)
    subs = [h for k in range(1, 5) for h in enumerate_subspaces(4, k, 3)]
    for f in example_forms.values():
        for h in rng.sample(subs, 25):
            for a in range(3):
                assert count_points(f, h, a) == brute_count(f, h, a)


@pytest.mark.parametrize("p,m,spec", [(5, 3, "tr: x^2"), (5, 3, "tr: x^2 + x^6"), (3, 5, "tr: x^2 + 2*x^4")])
def test_count_points_other_fields(p, m, spec):
    ctx = ctx_new(p, m)
    f = form_from_spec(spec, ctx)
    rng = random.Random(p * m)
    for k in range(1, m + 1):
        subs = list(enumerate_subspaces(m, k, p))
        for h in rng.sample(subs, min(8, len(subs))):
            counts = [count_points(f, h, a) for a in range(p)]
            assert sum(counts) == p**k
            assert counts == [brute_count(f, h, a) for a in range(p)]


# -- quotient and the two structural identities


def test_quotient_examples(example_forms, ctx34):
    g = form_from_spec("tr: x^2", ctx34)
    q, gbar = quotient(g)
    assert q.dim == 4 and gbar.gram == g.gram
    q1, f1 = quotient(example_forms["ex1"])
    assert q1.dim == 2 and f1.rank == 2
    for f in example_forms.values():
        q, fbar = quotient(f)
        assert not fbar.is_degenerate
        assert fbar.sign == f.sign and fbar.disc_class == f.disc_class
        for x in ctx34.elements():
            assert fbar(q.project(x)) == f(x)
        assert q.project(q.lift((1,) * q.dim)) == (1,) * q.dim
        for v in q.radical.basis:
            assert q.project(v) == (0,) * q.dim
        assert len(q.matrix) == q.dim


def test_disc_product_trivial_cases(ctx34):
    g = form_from_spec("tr: x^2", ctx34)
    assert disc_product_check(g, zero_subspace(4, 3))
    assert disc_product_check(g, full_space(4, 3))
    with pytest.raises(DegenerateAmbient):
        disc_product_check(form_from_spec("tr: x^12", ctx34), zero_subspace(4, 3))


def test_disc_product_ex2_quotient_low_dims(example_forms):
    _, fbar = quotient(example_forms["ex2"])
    for k in range(3):
        for h in enumerate_subspaces(fbar.dim, k, 3):
            assert disc_product_check(fbar, h)


# -- isotropic witnesses


def test_isotropic_vector_exists_in_example_quotients(example_forms):
    for f in example_forms.values():
        _, fbar = quotient(f)
        for r in range(1, fbar.dim):
            if 0 < 2 * r < fbar.dim:
                assert next(isotropic_subspaces(fbar, r), None) is not None


@pytest.mark.parametrize("p", [3, 5, 7])
def test_isotropic_line_in_plane_iff_sign(p):
    target = (-1) ** (2 * (p - 1) // 4)
    for a, b, c in product(range(p), repeat=3):
        g = ((a, b), (b, c))
        f = form_from_gram(p, g)
        if f.is_degenerate:
            continue
        has_line = any(is_totally_isotropic(f, h) for h in enumerate_subspaces(2, 1, p))
        assert has_line == (f.sign == target)
