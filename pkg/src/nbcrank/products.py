"""Infinite products, theta sums and product expressions.

Every product handled here is a finite combination of

* ``q**s`` times a rational constant,
* Pochhammer symbols ``(q^a; q^m)_inf ** e``,
* the two quintic theta sums
  ``sum_n (-1)^n q^{n(5n+1)/2}`` (``theta``) and
  ``sum_n (-1)^n n q^{n(5n+1)/2}`` (``thetaN``).

:class:`ProductExpr` is a sum of such monomials and evaluates to a rational
truncated series.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Iterable, Mapping

from .coefficients import QQ, ZZ
from .series import (
    TruncatedSeries,
    lift_to_rationals,
    s_invert,
    s_mul,
    s_pow,
    s_shift,
    s_substitute_qk,
    series_product,
)

THETA_KINDS = ("plain", "weighted")


@dataclass(frozen=True, order=True)
class PochhammerFactor:
    """``(q^a; q^m)_inf ** e``."""

    a: int
    m: int
    e: int = 1

    def __post_init__(self) -> None:
        if self.a < 1:
            raise ValueError(f"Pochhammer offset must be >= 1, got {self.a}")
        if self.m < 1:
            raise ValueError(f"Pochhammer step must be >= 1, got {self.m}")

    def __str__(self) -> str:
        base = f"P({self.a},{self.m})"
        return base if self.e == 1 else f"{base}^{self.e}"


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------


@lru_cache(maxsize=512)
def pochhammer(a: int, m: int, P: int) -> TruncatedSeries:
    """``(q^a; q^m)_inf`` over ZZ, known below ``q^P``."""
    if a < 1:
        raise ValueError(f"Pochhammer offset must be >= 1, got {a}")
    if m < 1:
        raise ValueError(f"Pochhammer step must be >= 1, got {m}")
    if P < 1:
        raise ValueError("precision must be positive")
    c = [0] * P
    c[0] = 1
    top = 0  # highest exponent that may be nonzero so far
    for e in range(a, P, m):
        top = min(top + e, P - 1)
        # multiply by (1 - q^e) in place, high to low
        for n in range(top, e - 1, -1):
            c[n] -= c[n - e]
    return TruncatedSeries(ZZ, c, 0, P)


@lru_cache(maxsize=1024)
def pochhammer_power(a: int, m: int, e: int, P: int) -> TruncatedSeries:
    return s_pow(pochhammer(a, m, P), e)


def _theta(P: int, weighted: bool) -> TruncatedSeries:
    if P < 1:
        raise ValueError("precision must be positive")
    # n(5n+1)/2 < P  =>  |n| <= (sqrt(40P+1)+1)/10; one extra index for safety
    bound = (isqrt(40 * P + 1) + 1) // 10 + 1
    terms: dict[int, int] = {}
    for n in range(-bound, bound + 1):
        ex = n * (5 * n + 1) // 2
        if ex < P:
            sign = -1 if n % 2 else 1
            terms[ex] = terms.get(ex, 0) + (sign * n if weighted else sign)
    return TruncatedSeries.from_dict(ZZ, terms, P)


@lru_cache(maxsize=64)
def theta_plain(P: int) -> TruncatedSeries:
    """``sum_{n in Z} (-1)^n q^{n(5n+1)/2}``."""
    return _theta(P, weighted=False)


@lru_cache(maxsize=64)
def theta_weighted(P: int) -> TruncatedSeries:
    """``sum_{n in Z} (-1)^n n q^{n(5n+1)/2}``."""
    return _theta(P, weighted=True)


def euler_inverse(P: int) -> TruncatedSeries:
    """``1/(q;q)_inf``: the partition generating function."""
    return s_invert(pochhammer(1, 1, P))


def rr_quotient(P: int) -> TruncatedSeries:
    """``(q,q^4;q^5)_inf / (q^2,q^3;q^5)_inf``.

    This is the Rogers-Ramanujan continued fraction with its ``q^(1/5)``
    prefactor removed, so ``R(q)^5 = q * rr_quotient^5``.
    """
    num = s_mul(pochhammer(1, 5, P), pochhammer(4, 5, P))
    den = s_mul(pochhammer(2, 5, P), pochhammer(3, 5, P))
    return lift_to_rationals(s_mul(num, s_invert(den)))


def five_dissection_unit(P: int) -> TruncatedSeries:
    """Five-dissection form of ``1/(q;q)_inf``.

    ``(q^25;q^25)^5/(q^5;q^5)^6 * sum_j c_j q^j T^(4-j)`` with
    ``c = 1, 1, 2, 3, 5, -3, 2, -1, 1`` and
    ``T = (q^10,q^15;q^25)/(q^5,q^20;q^25)``.
    """
    inner_prec = -(-P // 5)  # T(q) is needed below q^ceil(P/5)
    t = s_mul(
        s_mul(pochhammer(2, 5, inner_prec), pochhammer(3, 5, inner_prec)),
        s_invert(s_mul(pochhammer(1, 5, inner_prec), pochhammer(4, 5, inner_prec))),
    )
    T = s_substitute_qk(t, 5).truncate(P)
    Tinv = s_substitute_qk(s_invert(t), 5).truncate(P)
    weights = (1, 1, 2, 3, 5, -3, 2, -1, 1)
    acc = TruncatedSeries.zero(ZZ, P)
    for j, w in enumerate(weights):
        power = 4 - j
        if power > 0:
            piece = s_pow(T, power)
        elif power < 0:
            piece = s_pow(Tinv, -power)
        else:
            piece = TruncatedSeries.constant(ZZ, 1, P)
        acc = acc + s_shift(piece, j) * w
    prefactor = s_mul(s_pow(pochhammer(25, 25, P), 5), s_pow(pochhammer(5, 5, P), -6))
    return s_mul(prefactor, acc)


# ---------------------------------------------------------------------------
# Product expressions
# ---------------------------------------------------------------------------


def _canon_factors(factors: Iterable[PochhammerFactor]) -> tuple[PochhammerFactor, ...]:
    acc: dict[tuple[int, int], int] = {}
    for f in factors:
        acc[(f.a, f.m)] = acc.get((f.a, f.m), 0) + f.e
    return tuple(PochhammerFactor(a, m, e) for (a, m), e in sorted(acc.items()) if e)


def _canon_theta(theta: Mapping[str, int] | Iterable[tuple[str, int]]) -> tuple[tuple[str, int], ...]:
    items = theta.items() if isinstance(theta, Mapping) else theta
    acc: dict[str, int] = {}
    for kind, e in items:
        if kind not in THETA_KINDS:
            raise ValueError(f"unknown theta kind {kind!r}")
        if e < 0:
            raise ValueError("theta sums may only appear to nonnegative powers")
        acc[kind] = acc.get(kind, 0) + e
    return tuple((k, acc[k]) for k in THETA_KINDS if acc.get(k))


@dataclass(frozen=True)
class Monomial:
    """``constant * q^qpower * prod(factors) * prod(theta_kind ** e)``."""

    constant: Fraction = Fraction(1)
    qpower: int = 0
    factors: tuple[PochhammerFactor, ...] = ()
    theta: tuple[tuple[str, int], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "constant", Fraction(self.constant))
        object.__setattr__(self, "factors", _canon_factors(self.factors))
        object.__setattr__(self, "theta", _canon_theta(self.theta))

    def key(self) -> tuple:
        return (self.qpower, self.factors, self.theta)

    def __mul__(self, other: Monomial) -> Monomial:
        return Monomial(
            self.constant * other.constant,
            self.qpower + other.qpower,
            self.factors + other.factors,
            self.theta + other.theta,
        )

    def inverse(self) -> Monomial:
        if self.theta:
            raise ValueError("cannot divide by a theta sum")
        if self.constant == 0:
            raise ZeroDivisionError("division by zero monomial")
        return Monomial(
            1 / self.constant,
            -self.qpower,
            tuple(PochhammerFactor(f.a, f.m, -f.e) for f in self.factors),
        )

    def with_constant(self, c: Fraction | int) -> Monomial:
        return Monomial(Fraction(c), self.qpower, self.factors, self.theta)

    def __str__(self) -> str:
        parts = [str(self.constant)]
        if self.qpower:
            parts.append("q" if self.qpower == 1 else f"q^{self.qpower}")
        parts += [str(f) for f in self.factors]
        for kind, e in self.theta:
            name = "theta" if kind == "plain" else "thetaN"
            parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts)


@dataclass(frozen=True)
class ProductExpr:
    """A finite sum of :class:`Monomial` terms."""

    terms: tuple[Monomial, ...] = field(default_factory=tuple)

    @classmethod
    def zero(cls) -> ProductExpr:
        return cls(())

    @classmethod
    def one(cls) -> ProductExpr:
        return cls((Monomial(),))

    @classmethod
    def of(cls, *terms: Monomial) -> ProductExpr:
        return cls(tuple(terms))

    def simplified(self) -> ProductExpr:
        """Merge like terms and drop zeros (term order follows first use)."""
        acc: dict[tuple, Fraction] = {}
        order: list[tuple] = []
        proto: dict[tuple, Monomial] = {}
        for t in self.terms:
            k = t.key()
            if k not in acc:
                acc[k] = Fraction(0)
                order.append(k)
                proto[k] = t
            acc[k] += t.constant
        return ProductExpr(tuple(proto[k].with_constant(acc[k]) for k in order if acc[k]))

    def __add__(self, other: ProductExpr) -> ProductExpr:
        return ProductExpr(self.terms + other.terms)

    def __neg__(self) -> ProductExpr:
        return ProductExpr(tuple(t.with_constant(-t.constant) for t in self.terms))

    def __sub__(self, other: ProductExpr) -> ProductExpr:
        return self + (-other)

    def __mul__(self, other: ProductExpr) -> ProductExpr:
        return ProductExpr(tuple(a * b for a in self.terms for b in other.terms))

    def __truediv__(self, other: ProductExpr) -> ProductExpr:
        if len(other.terms) != 1:
            raise ValueError("can only divide by a single monomial")
        inv = other.terms[0].inverse()
        return ProductExpr(tuple(t * inv for t in self.terms))

    def __pow__(self, e: int) -> ProductExpr:
        if e < 0:
            return ProductExpr.one() / (self ** (-e))
        result = ProductExpr.one()
        for _ in range(e):
            result = (result * self).simplified()
        return result

    def with_term_constant(self, index: int, c: Fraction | int) -> ProductExpr:
        terms = list(self.terms)
        terms[index] = terms[index].with_constant(c)
        return ProductExpr(tuple(terms))

    def evaluate(self, order: int) -> TruncatedSeries:
        return eval_product_expr(self, order)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(str(t) for t in self.terms)


def eval_monomial(term: Monomial, P: int) -> TruncatedSeries:
    """Evaluate one monomial over QQ, exact below ``q^P``."""
    need = P - term.qpower
    if need <= 0 or term.constant == 0:
        return TruncatedSeries.zero(QQ, P)
    pieces = []
    numer = [f for f in term.factors if f.e > 0]
    denom = [f for f in term.factors if f.e < 0]
    for f in numer:
        pieces.append(pochhammer_power(f.a, f.m, f.e, need))
    if denom:
        den = series_product([pochhammer_power(f.a, f.m, -f.e, need) for f in denom])
        pieces.append(s_invert(den))
    for kind, e in term.theta:
        base = theta_plain(need) if kind == "plain" else theta_weighted(need)
        pieces.append(s_pow(base, e))
    if pieces:
        body = series_product(pieces)
    else:
        body = TruncatedSeries.constant(ZZ, 1, need)
    return lift_to_rationals(s_shift(body, term.qpower)) * term.constant


def eval_product_expr(expr: ProductExpr, P: int) -> TruncatedSeries:
    """Evaluate ``expr`` over QQ; the result is exact below ``q^P``."""
    if P < 1:
        raise ValueError("precision must be positive")
    acc = TruncatedSeries.zero(QQ, P)
    for term in expr.terms:
        acc = acc + eval_monomial(term, P)
    return acc.truncate(P)


# Shorthand used by the identity registry: exponents of the four recurring
# products (q,q^4;q^5), (q^2,q^3;q^5), (q^5;q^5) and (q;q).
def term(
    constant: Fraction | int | str,
    qpower: int = 0,
    *,
    a14: int = 0,
    a23: int = 0,
    e5: int = 0,
    e1: int = 0,
    thetaN: int = 0,
    theta: int = 0,
) -> Monomial:
    factors = []
    if a14:
        factors += [PochhammerFactor(1, 5, a14), PochhammerFactor(4, 5, a14)]
    if a23:
        factors += [PochhammerFactor(2, 5, a23), PochhammerFactor(3, 5, a23)]
    if e5:
        factors.append(PochhammerFactor(5, 5, e5))
    if e1:
        factors.append(PochhammerFactor(1, 1, e1))
    th = []
    if theta:
        th.append(("plain", theta))
    if thetaN:
        th.append(("weighted", thetaN))
    return Monomial(Fraction(constant), qpower, tuple(factors), tuple(th))
