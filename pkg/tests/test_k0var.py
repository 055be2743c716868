import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gwhilb.errors import GwError, ParityError, UnsupportedFieldError
from gwhilb.gw import FieldModel, GwElement, form, hyperbolic, n_epsilon
from gwhilb.k0var import (
    Affine,
    BlowUp,
    Difference,
    DisjointUnion,
    Gm,
    Grassmannian,
    HilbLocalA2,
    Lefschetz,
    Point,
    Product,
    Proj,
    ProjBundle,
    PuncturedAffine,
    QuadExt,
    Sym,
    VectorBundle,
    conf_rank,
    eval_chi,
    identity_checks,
    kernel_inventory,
    sym_delta_rank_check,
    sym_delta_strata_rank,
    sym_invariants,
)
from gwhilb.partitions import Partition, partition_count, partitions
from gwhilb.power import gw_seed

from oracles import binom_rising, partition_numbers, sym_galois_orbits

RC = FieldModel.real_closed()
CC = FieldModel.quadratically_closed()
Q = FieldModel.rationals()
F5 = FieldModel.finite(5)
ONE = GwElement.one(RC)
M = form(RC, -1)


def schubert_chi(field, r, n):
    """Sum of <-1>^dim over the Schubert cells of Gr(r, n)."""
    minus = form(field, -1)
    out = GwElement.zero(field)
    for cols in itertools.combinations(range(n), r):
        out = out + minus ** sum(c - j for j, c in enumerate(cols))
    return out


# -- golden values --------------------------------------------------------


@pytest.mark.parametrize("n", range(8))
def test_projective_space(n):
    assert eval_chi(Proj(n), RC) == n_epsilon(RC, n + 1)
    assert eval_chi(Proj(n), RC).rank() == n + 1


def test_examples():
    assert eval_chi(Proj(2), RC).terms == {1: 2, -1: 1}
    assert eval_chi(Gm(), RC) == M - ONE
    assert eval_chi(Grassmannian(2, 4), RC).terms == {1: 4, -1: 2}
    assert eval_chi(BlowUp(Proj(2), Point(), 2), RC).terms == {1: 2, -1: 2}
    assert eval_chi(QuadExt(5), Q) == form(Q, 2) + form(Q, 10)
    assert eval_chi(Point(), Q) == GwElement.one(Q)


@pytest.mark.parametrize("n", range(7))
def test_affine_space(n):
    assert eval_chi(Affine(n), RC) == M**n
    assert eval_chi(Lefschetz(), RC) == eval_chi(Affine(1), RC)


def test_punctured_affine_family():
    assert eval_chi(Gm(), RC) == M - ONE
    assert eval_chi(PuncturedAffine(1, 2), RC) == M - 2 * ONE  # P^1 minus three points
    for m in (1, 2, 3):
        assert eval_chi(PuncturedAffine(2 * m, 1), RC).is_zero()
        assert eval_chi(PuncturedAffine(2 * m, 2), RC) == -ONE
    for n in range(6):
        for r in range(4):
            assert eval_chi(PuncturedAffine(n, r), Q) == form(Q, -1) ** n - r


@pytest.mark.parametrize("field", [RC, CC, Q, F5], ids=lambda f: f.name)
def test_grassmannian_matches_schubert_cells(field):
    for n in range(1, 9):
        for r in range(1, n + 1):
            assert eval_chi(Grassmannian(r, n), field) == schubert_chi(field, r, n), (r, n)


def test_grassmannian_of_lines_is_projective_space():
    for n in range(1, 9):
        assert eval_chi(Grassmannian(1, n), RC) == eval_chi(Proj(n - 1), RC)


def test_bundles_and_blow_ups():
    base = Proj(3)
    b = eval_chi(base, RC)
    for r in range(5):
        assert eval_chi(VectorBundle(r, base), RC) == M**r * b
        assert eval_chi(ProjBundle(r, base), RC) == n_epsilon(RC, r) * b
    z = eval_chi(Proj(1), RC)
    for d in range(1, 5):
        expected = b + M * n_epsilon(RC, d - 1) * z
        assert eval_chi(BlowUp(base, Proj(1), d), RC) == expected
    assert eval_chi(BlowUp(base, Proj(1), 1), RC) == b


def test_local_hilbert_leaf():
    for m in range(8):
        v = eval_chi(HilbLocalA2(m), RC)
        assert v.rank() == partition_numbers(m)[m]


def test_validation():
    for bad in (lambda: Affine(-1), lambda: Grassmannian(0, 3), lambda: Grassmannian(4, 3), lambda: BlowUp(Point(), Point(), 0)):
        with pytest.raises(GwError):
            bad()
    with pytest.raises(TypeError):
        Point() + 1


def test_sym_is_gated():
    with pytest.raises(UnsupportedFieldError, match="conjecture-dependent"):
        eval_chi(Sym(2, QuadExt(-1)), FieldModel.finite(9))
    with pytest.raises(UnsupportedFieldError):
        eval_chi(Sym(0, Point()), Q)


# -- symmetric powers ---------------------------------------------------


def test_sym_invariants_examples():
    assert sym_invariants(2, 0, 2) == (3, 1)
    for n in range(1, 6):
        assert sym_invariants(0, 0, n) == (0, 0)
        assert sym_invariants(1, 1, n) == (1, 1)
    with pytest.raises(ParityError):
        sym_invariants(3, 0, 2)


def test_sym_of_point_and_projective_line():
    assert eval_chi(Sym(3, Point()), RC) == ONE
    # Sym^n P^1 = P^n
    for n in range(6):
        assert eval_chi(Sym(n, Proj(1)), RC) == eval_chi(Proj(n), RC)


@pytest.mark.parametrize("j", range(4))
def test_sym_matches_galois_orbits(j):
    for n in range(6):
        assert sym_invariants(2 + j, j, n) == sym_galois_orbits(j, n)


@given(st.integers(-6, 8), st.integers(-6, 8), st.integers(0, 6))
@settings(deadline=None)
def test_sym_invariants_match_seed(r, s, n):
    if (r - s) % 2:
        s += 1
    q = GwElement.from_rank_signature(RC, r, s)
    c = gw_seed(RC).base(q, n)[n]
    assert sym_invariants(r, s, n) == (c.rank(), c.signature())


def test_rank_is_rising_binomial():
    for r in range(-5, 11):
        for n in range(7):
            assert sym_invariants(r, None, n)[0] == binom_rising(r, n)


def test_conf_rank():
    assert conf_rank(5, 2) == 20
    assert conf_rank(2, 3) == 0
    assert conf_rank(-1, 3) == -6
    with pytest.raises(GwError):
        conf_rank(3, 0)


def test_strata_rank_identity():
    for r in range(-5, 11):
        for n in range(7):
            assert sym_delta_rank_check(r, n)
            assert sym_delta_strata_rank(r, n) == binom_rising(r, n)


# -- partitions -----------------------------------------------------------


def test_partitions():
    assert [partition_count(n) for n in range(11)] == partition_numbers(10)
    lam = Partition((1, 2, 1, 3))
    assert lam.parts == (3, 2, 1, 1)
    assert (lam.n, lam.length, lam.automorphisms) == (7, 4, 2)
    assert lam.multiplicities == {3: 1, 2: 1, 1: 2}
    for n in range(8):
        for p in partitions(n):
            assert sum(i * a for i, a in p.multiplicities.items()) == n
            assert sum(p.multiplicities.values()) == p.length
    with pytest.raises(ValueError):
        Partition((2, 0))


# -- homomorphism properties ----------------------------------------------

LEAVES = [Point(), Gm(), Lefschetz(), Affine(2), Proj(1), Proj(2), Grassmannian(2, 4), PuncturedAffine(3, 1)]

exprs = st.recursive(
    st.sampled_from(LEAVES),
    lambda kids: st.one_of(
        st.builds(DisjointUnion, kids, kids),
        st.builds(Product, kids, kids),
        st.builds(Difference, kids, kids),
        st.builds(VectorBundle, st.integers(0, 3), kids),
        st.builds(ProjBundle, st.integers(0, 3), kids),
        st.builds(BlowUp, kids, kids, st.integers(1, 3)),
    ),
    max_leaves=6,
)


@settings(max_examples=150, deadline=None)
@given(exprs, exprs)
def test_eval_chi_is_a_ring_homomorphism(x, y):
    for f in (RC, Q):
        a, b = eval_chi(x, f), eval_chi(y, f)
        assert eval_chi(x + y, f) == a + b
        assert eval_chi(x * y, f) == a * b
        assert eval_chi(x - y, f) == a - b


@settings(max_examples=150, deadline=None)
@given(exprs)
def test_rank_does_not_depend_on_model(x):
    ranks = {eval_chi(x, f).rank() for f in (RC, CC, Q, F5)}
    assert len(ranks) == 1


@settings(max_examples=100, deadline=None)
@given(exprs, st.integers(0, 6))
def test_sym_two_routes_agree(x, n):
    for f in (RC, CC):
        q = eval_chi(x, f)
        assert eval_chi(Sym(n, x), f) == gw_seed(f).base(q, n)[n]


@settings(max_examples=100, deadline=None)
@given(exprs, exprs)
def test_balanced_differences_have_trivial_symmetric_powers(x, y):
    # x + y - (y + x) evaluates to 0; its symmetric powers must too.
    k = x + y - (y + x)
    assert eval_chi(k, RC).is_zero()
    for n in range(1, 9):
        assert eval_chi(Sym(n, k), RC).is_zero()


def test_kernel_inventory():
    for f in (RC, CC):
        inv = kernel_inventory(f)
        assert len(inv) >= 10
        for k in inv:
            assert eval_chi(k, f).is_zero()
            for n in range(1, 9):
                assert eval_chi(Sym(n, k), f).is_zero()
    assert kernel_inventory(F5)  # Sym-free candidates still evaluate there


def test_identity_checks():
    cases = [(QuadExt(-1), Point(), RC)]
    for x, y in [(Proj(2), Gm()), (Gm() - Point(), Lefschetz() * Proj(1))]:
        cases += [(x, y, RC), (x, y, CC)]
    for x, y, f in cases:
        report = identity_checks(x, y, f)
        assert {r["check"] for r in report} == {"sym_of_union", "totaro", "lefschetz_square"}
        assert all(r["ok"] for r in report)
    rng = random.Random(0)
    for _ in range(20):
        x, y = rng.choice(LEAVES), rng.choice(LEAVES)
        assert all(r["ok"] for r in identity_checks(x, y, RC, sym_max=4, totaro_m=3, totaro_n=3))


def test_quadext_over_reals_is_hyperbolic():
    assert eval_chi(QuadExt(-1), RC) == hyperbolic(RC)
    with pytest.raises(GwError):
        eval_chi(QuadExt(3), RC)
