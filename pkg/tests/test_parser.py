import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gwhilb.gw import FieldModel
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
    eval_chi,
)
from gwhilb.parser import ParseError, parse_expr, render

small = st.integers(0, 5)

leaves = st.one_of(
    st.just(Point()),
    st.just(Gm()),
    st.just(Lefschetz()),
    st.builds(Affine, small),
    st.builds(Proj, small),
    st.builds(QuadExt, st.sampled_from([-7, -2, -1, 2, 3])),
    st.builds(PuncturedAffine, small, small),
    st.integers(1, 5).flatmap(lambda n: st.builds(Grassmannian, st.integers(1, n), st.just(n))),
    st.builds(HilbLocalA2, small),
)

trees = st.recursive(
    leaves,
    lambda kids: st.one_of(
        st.builds(DisjointUnion, kids, kids),
        st.builds(Product, kids, kids),
        st.builds(Difference, kids, kids),
        st.builds(VectorBundle, small, kids),
        st.builds(ProjBundle, small, kids),
        st.builds(BlowUp, kids, kids, st.integers(1, 4)),
        st.builds(Sym, small, kids),
    ),
    max_leaves=8,
)


@settings(max_examples=300)
@given(trees)
def test_render_parse_round_trip(e):
    assert parse_expr(render(e)) == e


def test_precedence_and_associativity():
    assert parse_expr("point + gm * L") == DisjointUnion(Point(), Product(Gm(), Lefschetz()))
    assert parse_expr("point - gm - L") == Difference(Difference(Point(), Gm()), Lefschetz())
    assert parse_expr("point - (gm - L)") == Difference(Point(), Difference(Gm(), Lefschetz()))
    assert render(parse_expr("point - (gm - L)")) == "point - (gm - L)"
    assert render(parse_expr("(point * gm) * L")) == "point * gm * L"


def test_case_and_whitespace():
    assert parse_expr("  PROJ ( 2 )+l") == DisjointUnion(Proj(2), Lefschetz())
    assert parse_expr("Sym(2,QuadExt(-1))") == Sym(2, QuadExt(-1))


def test_all_functions():
    e = parse_expr(
        "affine(1) + punctured_affine(2, 1) + grassmannian(2, 4) + vb(2, proj(1))"
        " + pb(3, point) + blowup(proj(2), point, 2) + hilb_local_a2(3)"
    )
    assert eval_chi(e, FieldModel.real_closed()).rank() == 1 + 0 + 6 + 2 + 3 + 4 + 3


@pytest.mark.parametrize(
    "text, position, expected",
    [
        ("proj(2", 6, "')'"),
        ("point +", 7, "'point'"),
        ("sphere(2)", 0, "'proj('"),
        ("proj(x)", 5, "an integer"),
        ("point point", 6, "end of input"),
        ("grassmannian(5, 3)", 0, "valid arguments to grassmannian"),
        ("point $ gm", 6, "a token"),
    ],
)
def test_parse_errors(text, position, expected):
    with pytest.raises(ParseError) as info:
        parse_expr(text)
    err = info.value
    assert err.position == position
    assert expected in err.expected
    assert f"position {position}" in str(err)
