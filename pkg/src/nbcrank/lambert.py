"""Lambert series built from fractions ``q^N / (1 - q^D)`` with step 5.

* ``X(a, b, c) = sum_{n>=0} q^{bn+c}/(1-q^{5n+a})
  - sum_{n>=0} q^{(5-b)n+(5+c-a-b)}/(1-q^{5n+5-a})``
* ``Y(d) = sum_{n>=1} q^{dn}/(1-q^{5n}) - sum_{n>=1} q^{(5-d)n}/(1-q^{5n})``
* ``R_t = sum_{n>=1} q^{tn}/(1-q^{5n})``

All three are expanded directly as double sums, so no product machinery is
involved; that keeps them independent of the closed forms they are compared
against.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coefficients import ZZ
from .series import TruncatedSeries, lift_to_rationals


def _add_fraction(acc: list[int], numer: int, denom: int, sign: int) -> None:
    """``acc += sign * q^numer / (1 - q^denom)`` truncated to ``len(acc)``."""
    for e in range(numer, len(acc), denom):
        acc[e] += sign


def _check_range(name: str, value: int) -> None:
    if not 1 <= value <= 4:
        raise ValueError(f"{name} must lie in 1..4, got {value}")


def lambert_X(a: int, b: int, c: int, P: int) -> TruncatedSeries:
    _check_range("a", a)
    _check_range("b", b)
    if c < 0:
        raise ValueError(f"c must be nonnegative, got {c}")
    if 5 + c - a - b < 0:
        raise ValueError(
            f"X({a},{b},{c}): second sum starts at the negative exponent {5 + c - a - b}"
        )
    acc = [0] * P
    n = 0
    while True:
        first = b * n + c
        second = (5 - b) * n + (5 + c - a - b)
        if first >= P and second >= P:
            break
        if first < P:
            _add_fraction(acc, first, 5 * n + a, 1)
        if second < P:
            _add_fraction(acc, second, 5 * n + 5 - a, -1)
        n += 1
    return TruncatedSeries(ZZ, acc, 0, P)


def lambert_Rt(t: int, P: int) -> TruncatedSeries:
    _check_range("t", t)
    acc = [0] * P
    for n in range(1, (P - 1) // t + 1):
        _add_fraction(acc, t * n, 5 * n, 1)
    return TruncatedSeries(ZZ, acc, 0, P)


def lambert_Y(d: int, P: int) -> TruncatedSeries:
    """Returned over QQ (the values are integral)."""
    _check_range("d", d)
    acc = [0] * P
    for n in range(1, P):
        if d * n < P:
            _add_fraction(acc, d * n, 5 * n, 1)
        if (5 - d) * n < P:
            _add_fraction(acc, (5 - d) * n, 5 * n, -1)
        if d * n >= P and (5 - d) * n >= P:
            break
    return lift_to_rationals(TruncatedSeries(ZZ, acc, 0, P))


@dataclass(frozen=True)
class LambertSpec:
    """One of ``X(a,b,c)``, ``Y(d)`` or ``R_t``, validated on construction."""

    kind: str
    params: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.kind == "X":
            if len(self.params) != 3:
                raise ValueError("X takes (a, b, c)")
            a, b, c = self.params
            _check_range("a", a)
            _check_range("b", b)
            if c < 0 or 5 + c - a - b < 0:
                raise ValueError(f"X{self.params} has a negative numerator exponent")
        elif self.kind in ("Y", "Rt"):
            if len(self.params) != 1:
                raise ValueError(f"{self.kind} takes one parameter")
            _check_range("d" if self.kind == "Y" else "t", self.params[0])
        else:
            raise ValueError(f"unknown Lambert kind {self.kind!r}")

    @classmethod
    def X(cls, a: int, b: int, c: int) -> LambertSpec:
        return cls("X", (a, b, c))

    @classmethod
    def Y(cls, d: int) -> LambertSpec:
        return cls("Y", (d,))

    @classmethod
    def Rt(cls, t: int) -> LambertSpec:
        return cls("Rt", (t,))

    def evaluate(self, P: int) -> TruncatedSeries:
        if self.kind == "X":
            s = lambert_X(*self.params, P)
        elif self.kind == "Y":
            s = lambert_Y(self.params[0], P)
        else:
            s = lambert_Rt(self.params[0], P)
        return lift_to_rationals(s)

    def __str__(self) -> str:
        if self.kind == "Rt":
            return f"R_{self.params[0]}"
        return f"{self.kind}({','.join(map(str, self.params))})"

