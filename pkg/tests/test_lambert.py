from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nbcrank.colored_partitions import divisor_count_series, lambert_factor
from nbcrank.coefficients import GroupRingElement
from nbcrank.lambert import LambertSpec, lambert_Rt, lambert_X, lambert_Y
from nbcrank.series import s_substitute_qk


def x_oracle(a, b, c, P):
    """Independent expansion: count solutions (n, k) exponent by exponent."""
    out = []
    for N in range(P):
        total = 0
        for n in range(N + 1):
            for k in range(N + 1):
                if b * n + c + k * (5 * n + a) == N:
                    total += 1
                if (5 - b) * n + (5 + c - a - b) + k * (5 * n + 5 - a) == N:
                    total -= 1
        out.append(total)
    return out


def y_oracle(d, P):
    out = []
    for N in range(P):
        total = 0
        for n in range(1, N + 1):
            for k in range(N + 1):
                if d * n + 5 * n * k == N:
                    total += 1
                if (5 - d) * n + 5 * n * k == N:
                    total -= 1
        out.append(total)
    return out


valid_x = st.tuples(st.integers(1, 4), st.integers(1, 4), st.integers(0, 3)).filter(
    lambda t: 5 + t[2] - t[0] - t[1] >= 0
)


@settings(max_examples=100, deadline=None)
@given(valid_x)
def test_x_against_oracle(abc):
    assert lambert_X(*abc, 30).coefficients(0, 30) == x_oracle(*abc, 30)


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_y_against_oracle(d):
    assert lambert_Y(d, 40).coefficients(0, 40) == [Fraction(v) for v in y_oracle(d, 40)]


def test_y_antisymmetry():
    assert lambert_Y(1, 50) == -lambert_Y(4, 50)


def test_r_t_sum_is_divisor_series():
    P = 120
    total = s_substitute_qk(divisor_count_series(-(-P // 5)), 5).truncate(P)
    for t in range(1, 5):
        total = total + lambert_Rt(t, P)
    assert total == divisor_count_series(P)


def test_lambert_factor_splits_by_residue():
    P = 80
    lf = lambert_factor(5, P)
    five = s_substitute_qk(divisor_count_series(-(-P // 5)), 5).truncate(P)
    rts = [lambert_Rt(t, P) for t in range(1, 5)]
    for n in range(P):
        expect = [five[n]] + [rts[t - 1][n] for t in range(1, 5)]
        assert lf[n] == GroupRingElement(expect)


def test_vanishing_combinations():
    assert lambert_X(4, 1, 0, 200).is_zero()
    assert lambert_X(3, 2, 1, 200).is_zero()


def test_parameter_guards():
    with pytest.raises(ValueError):
        lambert_X(0, 1, 0, 10)
    with pytest.raises(ValueError):
        lambert_X(1, 5, 0, 10)
    with pytest.raises(ValueError):
        lambert_X(1, 1, -1, 10)
    with pytest.raises(ValueError):
        LambertSpec.X(4, 4, 0)  # second sum would start at q^-3
    with pytest.raises(ValueError):
        LambertSpec.Y(5)
    with pytest.raises(ValueError):
        LambertSpec("Z", (1,))


def test_descriptor_evaluates_over_rationals():
    s = LambertSpec.Rt(2).evaluate(10)
    assert s.coefficients(0, 10) == [0, 0, 1, 0, 1, 0, 1, 1, 1, 0]
    assert str(LambertSpec.X(2, 2, 0)) == "X(2,2,0)"
