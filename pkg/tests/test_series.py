import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gwhilb.errors import GwError
from gwhilb.gw import FieldModel, GwElement, form
from gwhilb.series import ZZ, GwRing, TruncatedSeries, inverse, product_of_family, substitute_power

from oracles import geometric_power, mul, partition_numbers

RC = FieldModel.real_closed()
GW = GwRing(RC)


def zs(values, order=None):
    return TruncatedSeries.from_ints(ZZ, values, order)


int_series = st.integers(0, 8).flatmap(lambda n: st.lists(st.integers(-5, 5), min_size=n + 1, max_size=n + 1)).map(zs)
unit_series = st.lists(st.integers(-5, 5), min_size=1, max_size=8).map(lambda cs: zs([1] + cs))


def gw_series(order):
    elt = st.tuples(st.integers(-3, 3), st.integers(-3, 3)).map(
        lambda ab: ab[0] * GwElement.one(RC) + ab[1] * form(RC, -1)
    )
    return st.lists(elt, min_size=order + 1, max_size=order + 1).map(lambda cs: TruncatedSeries(GW, cs))


def test_examples():
    geo = zs([1] * 6)
    assert zs([1, -1], 5) * geo == TruncatedSeries.one(ZZ, 5)
    a = zs([2, 0, 7, 1])
    assert a * TruncatedSeries.one(ZZ, 3) == a
    assert zs([1, 1], 4) * zs([1, 1], 4) == zs([1, 2, 1], 4)


def test_inverse_examples():
    assert inverse(zs([1, -1], 5)) == zs([1] * 6)
    assert inverse(TruncatedSeries.one(ZZ, 4)) == TruncatedSeries.one(ZZ, 4)
    assert inverse(zs([1, 1], 5)).coeffs == (1, -1, 1, -1, 1, -1)
    with pytest.raises(GwError):
        inverse(zs([2, 1]))


def test_substitute_power_examples():
    assert substitute_power(zs([1, -1], 6), 3) == zs([1, 0, 0, -1], 6)
    a = zs([1, 4, 2])
    assert substitute_power(a, 1) == a
    assert substitute_power(zs([1] * 7), 2) == zs([1, 0, 1, 0, 1, 0, 1])
    with pytest.raises(GwError):
        substitute_power(a, 0)


def test_product_of_family_examples():
    n = 10
    factors = {k: inverse(TruncatedSeries.monomial(ZZ, -1, k, n)) for k in range(1, n + 1)}
    assert list(product_of_family(factors, n).coeffs) == partition_numbers(n)
    assert product_of_family({}, 5, ZZ) == TruncatedSeries.one(ZZ, 5)
    with pytest.raises(GwError):
        product_of_family({}, 5)
    k3 = product_of_family(lambda k: zs(geometric_power(1, k, 24, 3)), 3)
    assert k3.coeffs == (1, 24, 324, 3200)


def test_product_of_family_rejects_early_terms():
    with pytest.raises(GwError):
        product_of_family({2: zs([1, 1, 0, 0])}, 3)


def test_order_is_minimum():
    a, b = zs([1, 2, 3, 4]), zs([1, 1])
    assert (a + b).order == 1
    assert (a * b).order == 1
    assert a.truncate(2) == zs([1, 2, 3])


def test_ring_mismatch():
    with pytest.raises(GwError):
        TruncatedSeries.one(ZZ, 3) * TruncatedSeries.one(GW, 3)


def test_rendering():
    s = zs([1, -2, 0, 3])
    assert s.text() == "1 + -2*t + 3*t^3 + O(t^4)"
    assert s.to_json() == {"order": 3, "coeffs": [1, -2, 0, 3]}


@given(int_series, int_series, int_series)
def test_commutative_ring_axioms_over_z(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == (a * 0)


@given(int_series, int_series)
def test_product_matches_list_oracle(a, b):
    n = min(a.order, b.order)
    assert list((a * b).coeffs) == mul(list(a.coeffs), list(b.coeffs), n)


@settings(max_examples=50, deadline=None)
@given(gw_series(4), gw_series(4), gw_series(4))
def test_commutative_ring_axioms_over_gw(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(unit_series)
def test_inverse_is_two_sided(a):
    one = TruncatedSeries.one(ZZ, a.order)
    assert a * inverse(a) == one
    assert inverse(a) * a == one
    assert inverse(inverse(a)) == a


@given(int_series, int_series, st.integers(1, 4))
def test_substitute_power_is_homomorphism(a, b, i):
    assert substitute_power(a * b, i) == substitute_power(a, i) * substitute_power(b, i)
    assert substitute_power(a + b, i) == substitute_power(a, i) + substitute_power(b, i)


@given(st.permutations(list(range(1, 7))), st.lists(st.integers(-3, 3), min_size=6, max_size=6))
def test_product_of_family_is_order_independent(perm, cs):
    n = 6
    factors = {k: TruncatedSeries.monomial(ZZ, cs[k - 1], k, n) for k in range(1, n + 1)}
    ref = product_of_family(factors, n)
    out = TruncatedSeries.one(ZZ, n)
    for k in perm:
        out = out * factors[k]
    assert out == ref
