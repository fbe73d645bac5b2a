from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nbcrank.coefficients import (
    CYCLOTOMIC5,
    QQ,
    ZZ,
    CyclotomicQ5,
    GroupRing,
    GroupRingElement,
    NotInvertibleError,
    RingMismatchError,
    apply_character,
    group_ring_inverse,
    root_of_unity_filter,
)

small = st.integers(-20, 20)
gr5 = st.lists(small, min_size=5, max_size=5).map(GroupRingElement)
rat = st.fractions(min_value=-10, max_value=10, max_denominator=12)
cyc = st.lists(rat, min_size=4, max_size=4).map(CyclotomicQ5)


@settings(max_examples=150, deadline=None)
@given(gr5, gr5, gr5)
def test_group_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a - a == GroupRingElement.scalar(5, 0)
    assert a * 1 == a


@settings(max_examples=150, deadline=None)
@given(gr5, gr5, st.integers(0, 4))
def test_character_is_ring_morphism(a, b, j):
    assert apply_character(a * b, j) == apply_character(a, j) * apply_character(b, j)
    assert apply_character(a + b, j) == apply_character(a, j) + apply_character(b, j)


@settings(max_examples=150, deadline=None)
@given(gr5, st.integers(0, 4))
def test_root_of_unity_filter_reads_component(a, r):
    assert root_of_unity_filter(a, r) == CyclotomicQ5([a.component(r)])


def test_trivial_character_is_augmentation():
    a = GroupRingElement([1, 2, 3, 4, 5])
    assert apply_character(a, 0) == CyclotomicQ5([15])
    assert a.augmentation() == 15


def test_generator_has_order_m():
    for m in (2, 3, 5, 7):
        g = GroupRingElement.gen(m)
        assert g ** m == GroupRingElement.scalar(m, 1)
        assert g ** -1 == GroupRingElement.gen(m, m - 1)


def test_units_and_nonunits():
    R = GroupRing(5)
    assert R.is_unit(R.gen(3))
    assert R.inverse(R.gen(2)) == R.gen(3)
    assert not R.is_unit(R.coerce(2))
    assert not R.is_unit(R.one - R.gen())  # augmentation zero
    with pytest.raises(NotInvertibleError):
        R.inverse(R.coerce(2))
    Rq = GroupRing(5, QQ)
    half = Rq.inverse(Rq.coerce(2))
    assert half == GroupRingElement.scalar(5, Fraction(1, 2))


def test_inverse_over_integers_has_int_components():
    inv = group_ring_inverse(GroupRingElement([0, -1, 0, 0, 0]), ZZ)
    assert all(type(c) is int for c in inv.components)
    assert inv == GroupRingElement([0, 0, 0, 0, -1])


@settings(max_examples=100, deadline=None)
@given(gr5)
def test_rational_inverse_roundtrip(a):
    R = GroupRing(5, QQ)
    try:
        inv = R.inverse(a)
    except NotInvertibleError:
        # singular exactly when some character vanishes
        assert any(apply_character(a, j).is_zero() for j in range(5))
        return
    assert a * inv == R.one


def test_mismatched_orders_rejected():
    with pytest.raises(RingMismatchError):
        GroupRingElement([1, 2, 3]) + GroupRingElement([1, 2])


def test_cyclotomic_basics():
    z = CyclotomicQ5.zeta()
    assert z * z * z * z * z == CyclotomicQ5([1])
    total = CyclotomicQ5([0])
    for j in range(5):
        total = total + CyclotomicQ5.zeta(j)
    assert total.is_zero()
    # 2 cos(2 pi / 5) + 2 cos(4 pi / 5) = -1
    s1 = CyclotomicQ5.zeta(1) + CyclotomicQ5.zeta(4)
    s2 = CyclotomicQ5.zeta(2) + CyclotomicQ5.zeta(3)
    assert s1 + s2 == CyclotomicQ5([-1])
    assert s1 * s2 == CyclotomicQ5([-1])
    assert (CyclotomicQ5([1]) - z).norm() == 5


@settings(max_examples=150, deadline=None)
@given(cyc, cyc)
def test_cyclotomic_field_axioms(a, b):
    assert a * b == b * a
    assert (a + b) * b == a * b + b * b
    if not a.is_zero():
        assert a * a.inverse() == CyclotomicQ5([1])
        assert (b / a) * a == b
        assert a.norm() == a.conjugate(2).norm()


def test_ring_descriptors():
    assert ZZ.coerce(Fraction(4, 1)) == 4
    with pytest.raises(RingMismatchError):
        ZZ.coerce(Fraction(1, 2))
    assert ZZ.is_unit(-1) and not ZZ.is_unit(2)
    assert QQ.inverse(Fraction(2, 3)) == Fraction(3, 2)
    assert CYCLOTOMIC5.is_unit(CyclotomicQ5.zeta(2))
    assert GroupRing(5) == GroupRing(5, ZZ)
    assert GroupRing(5) != GroupRing(5, QQ)
    with pytest.raises(ValueError):
        GroupRing(0)
