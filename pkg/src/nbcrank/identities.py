"""Registry of q-series identities and congruences, and an exact verifier.

Every :class:`IdentityCase` pairs two independently computed sides.  Left
sides that involve NB_k come from the group-ring oracle in
:mod:`nbcrank.colored_partitions`; right sides are product expressions,
Lambert combinations or Rogers-Ramanujan polynomials.  :func:`verify`
compares both sides coefficient by coefficient and reports the first
disagreement.
"""

from __future__ import annotations

import fnmatch
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .coefficients import CYCLOTOMIC5, QQ, CyclotomicQ5, apply_character
from .colored_partitions import _crank_kernel, nb_combo_series, nb_table
from .lambert import LambertSpec
from .products import (
    Monomial,
    ProductExpr,
    eval_monomial,
    euler_inverse,
    five_dissection_unit,
    pochhammer,
    rr_quotient,
    term,
)
from .series import (
    PrecisionError,
    TruncatedSeries,
    dissect,
    lift_to_rationals,
    s_invert,
    s_map_ring,
    s_mul,
    s_pow,
    s_shift,
    s_substitute_qk,
    to_cyclotomic,
)

# ---------------------------------------------------------------------------
# Sides
# ---------------------------------------------------------------------------


def _fracs(values: Iterable) -> tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in values)


@dataclass(frozen=True)
class NBCombo:
    """``sum_n (sum_r w_r NB_k(r, 5, modulus*n + residue)) q^n``."""

    k: int
    weights: tuple[Fraction, ...]
    residue: int
    modulus: int = 5

    def __post_init__(self) -> None:
        object.__setattr__(self, "weights", _fracs(self.weights))
        if len(self.weights) != 5:
            raise ValueError("NB combinations take five weights")

    def evaluate(self, P: int) -> TruncatedSeries:
        return nb_combo_series(self.k, 5, self.weights, self.residue, self.modulus, P)

    def __str__(self) -> str:
        w = ",".join(str(x) for x in self.weights)
        return f"NB_{self.k}[{w}]({self.modulus}n+{self.residue})"


@dataclass(frozen=True)
class NBDifference:
    """``sum_n (NB_k(r+, 5, 5n+a) - NB_k(r-, 5, 5n+a)) q^n``."""

    k: int
    r_plus: int
    r_minus: int
    residue: int

    def combo(self) -> NBCombo:
        w = [0] * 5
        w[self.r_plus % 5] += 1
        w[self.r_minus % 5] -= 1
        return NBCombo(self.k, tuple(w), self.residue, 5)

    def evaluate(self, P: int) -> TruncatedSeries:
        return self.combo().evaluate(P)

    def __str__(self) -> str:
        return (
            f"NB_{self.k}({self.r_plus},5,5n+{self.residue})"
            f" - NB_{self.k}({self.r_minus},5,5n+{self.residue})"
        )


@dataclass(frozen=True)
class LambertExpr:
    """``sum monomial * lambert`` (a missing Lambert factor means 1)."""

    terms: tuple[tuple[Monomial, Union[LambertSpec, None]], ...]

    def evaluate(self, P: int) -> TruncatedSeries:
        acc = TruncatedSeries.zero(QQ, P)
        for mono, spec in self.terms:
            piece = eval_monomial(mono, P)
            if spec is not None:
                piece = s_mul(piece, spec.evaluate(P))
            acc = acc + piece
        return acc.truncate(P)

    def __str__(self) -> str:
        return " + ".join(
            str(m) if s is None else f"{m}*{s}" for m, s in self.terms
        ) or "0"


@dataclass(frozen=True)
class RRPolynomial:
    """``sum c * q^s * r^e`` with ``r = (q,q^4;q^5)/(q^2,q^3;q^5)``."""

    terms: tuple[tuple[Fraction, int, int], ...]

    def evaluate(self, P: int) -> TruncatedSeries:
        # every term is a unit series times q^s with s >= 0, so computing r
        # to precision P keeps each piece exact below q^P
        r = rr_quotient(P)
        acc = TruncatedSeries.zero(QQ, P)
        for c, s, e in self.terms:
            acc = acc + s_shift(s_pow(r, e), s) * Fraction(c)
        return acc.truncate(P)

    def __str__(self) -> str:
        return " + ".join(f"{c}*q^{s}*r^{e}" for c, s, e in self.terms)


@dataclass(frozen=True)
class Builtin:
    """A named series computed by a dedicated routine."""

    name: str

    _TABLE = {
        "euler_inverse": lambda P: lift_to_rationals(euler_inverse(P)),
        "five_dissection_unit": lambda P: lift_to_rationals(five_dissection_unit(P)),
    }

    def __post_init__(self) -> None:
        if self.name not in self._TABLE:
            raise ValueError(f"unknown builtin series {self.name!r}")

    def evaluate(self, P: int) -> TruncatedSeries:
        return self._TABLE[self.name](P)

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Dissection:
    """``sum_n c[modulus*n + residue] q^n`` of an inner side."""

    inner: "Side"
    residue: int
    modulus: int = 5

    def evaluate(self, P: int) -> TruncatedSeries:
        full = self.inner.evaluate(self.modulus * P + self.residue + 1)
        return dissect(full, self.residue, self.modulus).truncate(P)

    def __str__(self) -> str:
        return f"dissect({self.inner}, {self.residue}, {self.modulus})"


@dataclass(frozen=True)
class CrankCharacter:
    """``1/((z q;q)(q/z;q))`` at ``z = zeta5^j``, read off the group ring."""

    j: int

    def evaluate(self, P: int) -> TruncatedSeries:
        kernel = _crank_kernel(5, P)
        return s_map_ring(kernel, CYCLOTOMIC5, lambda x: apply_character(x, self.j))

    def __str__(self) -> str:
        return f"1/((z q;q)(q/z;q)) at z=zeta^{self.j}"


@dataclass(frozen=True)
class CrankCharacterRhs:
    """``V(q^5) + (zeta^j + zeta^-j) q W(q^5)`` with ``V = 1/(q,q^4;q^5)``
    and ``W = 1/(q^2,q^3;q^5)``."""

    j: int

    def evaluate(self, P: int) -> TruncatedSeries:
        inner = -(-P // 5)
        v = s_invert(s_mul(pochhammer(1, 5, inner), pochhammer(4, 5, inner)))
        w = s_invert(s_mul(pochhammer(2, 5, inner), pochhammer(3, 5, inner)))
        V = to_cyclotomic(lift_to_rationals(s_substitute_qk(v, 5))).truncate(P)
        W = to_cyclotomic(lift_to_rationals(s_substitute_qk(w, 5))).truncate(P)
        c = CyclotomicQ5.zeta(self.j) + CyclotomicQ5.zeta(-self.j)
        return (V + s_shift(W, 1) * c).truncate(P)

    def __str__(self) -> str:
        return f"V(q^5) + (zeta^{self.j} + zeta^-{self.j}) q W(q^5)"


Side = Union[
    NBCombo,
    NBDifference,
    ProductExpr,
    LambertExpr,
    RRPolynomial,
    Builtin,
    Dissection,
    CrankCharacter,
    CrankCharacterRhs,
]


def evaluate_side(side: Side, P: int) -> TruncatedSeries:
    return side.evaluate(P)


# ---------------------------------------------------------------------------
# Cases and reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IdentityCase:
    id: str
    lhs: Side
    rhs: Side
    citation: str
    default_order: int = 60
    group: str = ""
    # "verified" for every identity that holds as registered; a case kept
    # deliberately as printed but known to fail carries "mismatch"
    expected: str = "verified"
    note: str = ""


@dataclass(frozen=True)
class Mismatch:
    exponent: int
    lhs: str
    rhs: str


@dataclass(frozen=True)
class VerificationReport:
    id: str
    order_checked: int
    status: str  # verified | mismatch | error
    first_mismatch: Mismatch | None = None
    elapsed_ms: float = 0.0
    message: str = ""

    def to_dict(self) -> dict:
        fm = None
        if self.first_mismatch is not None:
            fm = {
                "exponent": self.first_mismatch.exponent,
                "lhs": self.first_mismatch.lhs,
                "rhs": self.first_mismatch.rhs,
            }
        out = {
            "id": self.id,
            "order": self.order_checked,
            "status": self.status,
            "first_mismatch": fm,
            "elapsed_ms": round(self.elapsed_ms, 3),
        }
        if self.message:
            out["message"] = self.message
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _coefficient_text(x: object) -> str:
    return str(x)


def compare_series(
    lhs: TruncatedSeries, rhs: TruncatedSeries, order: int
) -> Mismatch | None:
    """First exponent below ``order`` where the two series differ."""
    if lhs.ring is CYCLOTOMIC5 or rhs.ring is CYCLOTOMIC5:
        lhs, rhs = to_cyclotomic(lhs), to_cyclotomic(rhs)
    for s in (lhs, rhs):
        if s.precision < order:
            raise PrecisionError(
                f"side known only below q^{s.precision}, {order} requested"
            )
    start = min(lhs.valuation, rhs.valuation, 0)
    for n in range(start, order):
        a, b = lhs[n], rhs[n]
        if a != b:
            return Mismatch(n, _coefficient_text(a), _coefficient_text(b))
    return None


def verify(case: IdentityCase, order: int | None = None) -> VerificationReport:
    """Check ``case`` on every exponent below ``order``."""
    P = case.default_order if order is None else order
    if P < 1:
        raise ValueError("order must be positive")
    t0 = time.perf_counter()
    try:
        lhs = evaluate_side(case.lhs, P)
        rhs = evaluate_side(case.rhs, P)
        mm = compare_series(lhs, rhs, P)
    except Exception as exc:  # reported, never a silent pass
        ms = (time.perf_counter() - t0) * 1000
        return VerificationReport(
            case.id, P, "error", None, ms, f"{case.id}: {type(exc).__name__}: {exc}"
        )
    ms = (time.perf_counter() - t0) * 1000
    return VerificationReport(case.id, P, "verified" if mm is None else "mismatch", mm, ms)


def _verify_by_id(args: tuple[str, int | None]) -> VerificationReport:
    case_id, order = args
    return verify(get_case(case_id), order)


def verify_all(
    order: int | None = None,
    ids: Sequence[str] | None = None,
    jobs: int = 1,
) -> list[VerificationReport]:
    """Verify every selected case; results come back in registry order."""
    cases = registry() if ids is None else [get_case(i) for i in ids]
    if jobs <= 1 or len(cases) <= 1:
        return [verify(c, order) for c in cases]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_verify_by_id, [(c.id, order) for c in cases]))


def corrupted(case: IdentityCase, term_index: int = 0, delta: Fraction | int = 1) -> IdentityCase:
    """Copy of ``case`` with one right-side constant shifted by ``delta``.

    Used as a negative control.  A zero right side gains the constant
    ``delta`` instead.
    """
    if not isinstance(case.rhs, ProductExpr):
        raise TypeError(f"{case.id}: only product right sides can be corrupted")
    if not case.rhs.terms:
        rhs = ProductExpr.of(Monomial(Fraction(delta)))
    else:
        t = case.rhs.terms[term_index]
        rhs = case.rhs.with_term_constant(term_index, t.constant + Fraction(delta))
    return replace(case, id=f"{case.id}~corrupt{term_index}", rhs=rhs, expected="mismatch")


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------

V = term(1, a14=-1)
W = term(1, a23=-1)
F = Fraction

W_AB = (0, 1, 2, -2, -1)  # NB(1) + 2NB(2) - 2NB(3) - NB(4)
W_K5 = (0, 1, 3, -3, -1)  # NB(1) + 3NB(2) - 3NB(3) - NB(4)


def _pe(*terms: Monomial) -> ProductExpr:
    return ProductExpr.of(*terms)


def _lam(*pairs: tuple[Monomial, LambertSpec | None]) -> LambertExpr:
    return LambertExpr(tuple(pairs))


def _theta_block(terms: Sequence[Monomial]) -> list[Monomial]:
    """``5 * thetaN * (sum of terms)``."""
    t5 = term(5, thetaN=1)
    return [t5 * t for t in terms]


def _theorem_cases() -> list[IdentityCase]:
    g = "theorem"
    out = [
        IdentityCase(
            "eq-1-6",
            NBCombo(2, (0, 1, -3, 3, -1), 0),
            _pe(term(5, 1, a14=1, e5=2, a23=-3)),
            "eq-1-6: k=2, n = 0 mod 5, weights (1,-3,3,-1) on residues 1..4",
            60, g,
        ),
        IdentityCase(
            "eq-1-7",
            NBCombo(2, W_AB, 2),
            _pe(term(5, e5=2, a14=-2)),
            "eq-1-7: k=2, n = 2 mod 5, weights (1,2,-2,-1)",
            60, g,
        ),
        IdentityCase(
            "eq-1-8",
            NBCombo(2, W_AB, 3),
            ProductExpr.zero(),
            "eq-1-8: k=2, n = 3 mod 5, weights (1,2,-2,-1) vanish identically",
            60, g,
        ),
        IdentityCase(
            "eq-1-9",
            NBCombo(2, (0, 1, 0, 0, -1), 23, 25),
            _pe(term(10, e5=5, e1=-3)),
            "eq-1-9: k=2, n = 23 mod 25, NB(1) - NB(4)",
            60, g,
        ),
        IdentityCase(
            "eq-1-10",
            NBCombo(2, (0, 0, 1, -1, 0), 23, 25),
            _pe(term(-5, e5=5, e1=-3)),
            "eq-1-10: k=2, n = 23 mod 25, NB(2) - NB(3)",
            60, g,
        ),
        IdentityCase(
            "eq-1-11",
            NBCombo(2, W_AB, 4),
            _pe(term(5, e5=2, a23=-2)),
            "eq-1-11: k=2, n = 4 mod 5, weights (1,2,-2,-1)",
            60, g,
        ),
        IdentityCase(
            "eq-1-12",
            NBCombo(3, W_AB, 0),
            _pe(
                term(F(1, 2), a23=1, e5=1, a14=-3),
                term(F(-1, 2), a23=1, e5=2, e1=-5, a14=-3),
                term(-5, a23=1, e5=2, e1=-6, a14=-2, thetaN=1),
                term(30, 1, a23=1, e5=7, e1=-6, a14=-3),
                term(F(45, 2), 2, a14=2, a23=-4, e5=7, e1=-6),
                term(F(-5, 2), 1, e5=5, e1=-6, a23=-1),
            ),
            "eq-1-12: k=3, n = 0 mod 5, weights (1,2,-2,-1)",
            60, g,
        ),
    ]

    eq13 = _theta_block([
        term(-7, 3, a14=6, e5=9, a23=-8, e1=-12),
        term(12, 2, a14=1, e5=9, a23=-3, e1=-12),
        term(-4, 1, a23=2, e5=9, a14=-4, e1=-12),
        term(-9, 0, a23=7, e5=9, a14=-9, e1=-12),
        term(20, 2, a14=4, e5=7, a23=-5, e1=-12),
        term(-5, 1, e5=7, a14=-1, e1=-12),
        term(5, 0, a23=5, e5=7, a14=-6, e1=-12),
    ]) + [
        term(10, 2, a14=4, e5=8, a23=-4, e1=-12),
        term(F(-5, 2), 1, a23=1, e5=8, a14=-1, e1=-12),
        term(F(5, 2), 0, a23=6, e5=8, a14=-6, e1=-12),
        term(F(-305, 2), 3, a14=3, e5=12, a23=-5, e1=-12),
        term(F(335, 2), 2, e5=12, a14=-2, e1=-12),
        term(85, 1, a23=5, e5=12, a14=-7, e1=-12),
        term(5, 0, a23=10, e5=12, a14=-12, e1=-12),
        term(25, 3, a14=6, e5=10, a23=-7, e1=-12),
        term(-15, 2, a14=1, e5=10, a23=-2, e1=-12),
        term(-10, 1, a23=3, e5=10, a14=-4, e1=-12),
        term(F(-15, 2), 0, a23=8, e5=10, a14=-9, e1=-12),
    ]
    eq14 = [
        term(55, 3, a14=6, e5=12, a23=-8, e1=-12),
        term(F(-335, 2), 2, a14=1, e5=12, a23=-3, e1=-12),
        term(260, 1, a23=2, e5=12, a14=-4, e1=-12),
        term(F(45, 2), 0, a23=7, e5=12, a14=-9, e1=-12),
        term(-5, 2, a14=4, e5=10, a23=-5, e1=-12),
        term(F(-35, 2), 1, e5=10, a14=-1, e1=-12),
        term(F(-15, 2), 0, a23=5, e5=10, a14=-6, e1=-12),
    ]
    eq15 = [
        term(F(-45, 2), 3, a14=7, e5=12, a23=-9, e1=-12),
        term(260, 2, a14=2, e5=12, a23=-4, e1=-12),
        term(F(335, 2), 1, a23=1, e5=12, a14=-3, e1=-12),
        term(55, 0, a23=6, e5=12, a14=-8, e1=-12),
        term(F(5, 2), 2, a14=5, e5=10, a23=-6, e1=-12),
        term(F(5, 2), 1, e5=10, a23=-1, e1=-12),
        term(-15, 0, a23=4, e5=10, a14=-5, e1=-12),
    ]
    eq16 = [
        term(-70, 5, a14=11, e5=17, a23=-13, e1=-18),
        term(2165, 4, a14=6, e5=17, a23=-8, e1=-18),
        term(F(-3265, 2), 3, a14=1, e5=17, a23=-3, e1=-18),
        term(F(5745, 2), 2, a23=2, e5=17, a14=-4, e1=-18),
        term(F(1965, 2), 1, a23=7, e5=17, a14=-9, e1=-18),
        term(F(35, 2), 0, a23=12, e5=17, a14=-14, e1=-18),
        term(10, 4, a14=9, e5=15, a23=-10, e1=-18),
        term(-45, 3, a14=4, e5=15, a23=-5, e1=-18),
        term(F(-165, 2), 2, e5=15, a14=-1, e1=-18),
        term(-200, 1, a23=5, e5=15, a14=-6, e1=-18),
        term(F(-15, 2), 0, a23=10, e5=15, a14=-11, e1=-18),
    ]
    eq17 = _theta_block([
        term(2, 4, a14=11, e5=14, a23=-13, e1=-18),
        term(-1, 3, a14=6, e5=14, a23=-8, e1=-18),
        term(2108, 2, a14=1, e5=14, a23=-3, e1=-18),
        term(-4, 1, a23=2, e5=14, a14=-4, e1=-18),
        term(-3, 0, a23=7, e5=14, a14=-9, e1=-18),
        term(-5, 3, a14=9, e5=12, a23=-10, e1=-18),
        term(30, 2, a14=4, e5=12, a23=-5, e1=-18),
    ]) + [
        term(F(-5, 2), 5, a14=13, e5=17, a23=-15, e1=-18),
        term(825, 4, a14=8, e5=17, a23=-10, e1=-18),
        term(F(1865, 2), 2, e5=17, a14=-2, e1=-18),
        term(F(4125, 2), 1, a23=5, e5=17, a14=-7, e1=-18),
        term(F(275, 2), 0, a23=10, e5=17, a14=-12, e1=-18),
        term(-5, 4, a14=11, e5=15, a23=-12, e1=-18),
        term(F(1895, 2), 2, a14=1, e5=15, a23=-2, e1=-18),
        term(-245, 1, a23=3, e5=15, a14=-4, e1=-18),
        term(F(-95, 2), 0, a23=8, e5=15, a14=-9, e1=-18),
        term(F(-5, 2), 3, a14=9, e5=13, a23=-9, e1=-18),
        term(15, 2, a14=4, e5=13, a23=-4, e1=-18),
    ]
    out += [
        IdentityCase("eq-1-13", NBCombo(4, W_AB, 0), _pe(*eq13),
                     "eq-1-13: k=4, n = 0 mod 5, weights (1,2,-2,-1)", 60, g),
        IdentityCase("eq-1-14", NBCombo(4, W_AB, 3), _pe(*eq14),
                     "eq-1-14: k=4, n = 3 mod 5, weights (1,2,-2,-1)", 60, g),
        IdentityCase("eq-1-15", NBCombo(4, W_AB, 4), _pe(*eq15),
                     "eq-1-15: k=4, n = 4 mod 5, weights (1,2,-2,-1)", 60, g),
        IdentityCase("eq-1-16", NBCombo(5, W_K5, 2), _pe(*eq16),
                     "eq-1-16: k=5, n = 2 mod 5, weights (1,3,-3,-1)", 60, g),
        IdentityCase("eq-1-17", NBCombo(5, W_K5, 4), _pe(*eq17),
                     "eq-1-17: k=5, n = 4 mod 5, weights (1,3,-3,-1)", 60, g),
    ]
    return out


def _lemma_cases() -> list[IdentityCase]:
    g = "lemma"
    X = LambertSpec.X
    Y = LambertSpec.Y
    one = term(1)

    def lam(spec: LambertSpec) -> LambertExpr:
        return _lam((one, spec))

    out = [
        IdentityCase("eq-2-3", lam(X(4, 1, 0)), ProductExpr.zero(),
                     "eq-2-3: X(4,1,0) vanishes", 200, g),
        IdentityCase("eq-2-4", lam(X(3, 1, 0)), _pe(term(1, e5=2, a23=-1)),
                     "eq-2-4: X(3,1,0) as a product", 200, g),
        IdentityCase("eq-2-5", lam(X(2, 1, 0)), _pe(term(1, e5=2, a14=-1)),
                     "eq-2-5: X(2,1,0) as a product", 200, g),
        IdentityCase("eq-2-6", lam(X(1, 1, 0)), _pe(term(1, a23=1, e5=2, a14=-2)),
                     "eq-2-6: X(1,1,0) as a product", 200, g),
        IdentityCase("eq-2-7", lam(X(2, 2, 0)), _pe(term(1, a14=1, e5=2, a23=-2)),
                     "eq-2-7: X(2,2,0) as a product", 200, g),
        IdentityCase("eq-2-8", lam(X(4, 2, 1)), _pe(term(-1, e5=2, a23=-1)),
                     "eq-2-8: X(4,2,1) as a product", 200, g),
        IdentityCase("eq-2-9", lam(X(1, 2, 0)), _pe(term(1, e5=2, a14=-1)),
                     "eq-2-9: X(1,2,0) as a product", 200, g),
        IdentityCase("eq-2-10", lam(X(3, 2, 1)), ProductExpr.zero(),
                     "eq-2-10: X(3,2,1) vanishes", 200, g),
        IdentityCase(
            "eq-2-11", lam(Y(1)),
            _pe(term(F(3, 10), a23=2, e5=2, a14=-3),
                term(F(1, 10), 1, a14=2, e5=2, a23=-3),
                term(F(-3, 10))),
            "eq-2-11: Y(1) as products", 200, g,
        ),
        IdentityCase(
            "eq-2-12", lam(Y(2)),
            _pe(term(F(1, 10), a23=2, e5=2, a14=-3),
                term(F(-3, 10), 1, a14=2, e5=2, a23=-3),
                term(F(-1, 10))),
            "eq-2-12: Y(2) as products", 200, g,
        ),
        IdentityCase(
            "eq-2-13",
            RRPolynomial(((F(1), 0, -5), (F(-11), 1, 0), (F(-1), 2, 5))),
            _pe(term(1, e1=6, e5=-6)),
            "eq-2-13: Rogers-Ramanujan quintic relation, multiplied through by q",
            200, g,
        ),
        IdentityCase(
            "eq-2-14",
            RRPolynomial(((F(1), 0, -3), (F(-3), 1, 2))),
            _pe(term(10, thetaN=1, e5=-3), term(1, a23=1, e5=-2)),
            "eq-2-14: cubic relation with the weighted theta sum, q^(3/5) cleared",
            200, g,
        ),
        IdentityCase(
            "eq-2-15",
            Builtin("euler_inverse"),
            Builtin("five_dissection_unit"),
            "eq-2-15: five-dissection of the partition generating function",
            200, g,
        ),
        IdentityCase(
            "theta-2-17",
            RRPolynomial(((F(1), 0, -3), (F(-3), 1, 2))),
            _pe(term(10, thetaN=1, e5=-3), term(1, theta=1, e5=-3)),
            "theta-2-17: cubic relation against sum (-1)^n (10n+1) q^(n(5n+1)/2)",
            200, g,
        ),
        IdentityCase(
            "theta-2-18",
            _pe(term(1, theta=1)),
            _pe(term(1, a23=1, e5=1)),
            "theta-2-18: quintic Jacobi triple product",
            200, g,
        ),
    ]
    return out


def _dissection_cases() -> list[IdentityCase]:
    g = "components"
    X = LambertSpec.X
    Y = LambertSpec.Y
    return [
        IdentityCase(
            "eq-3-5", NBDifference(2, 1, 4, 0),
            _lam((V, Y(1)), (W * term(1, 1), X(2, 2, 0))),
            "eq-3-5: NB_2(1)-NB_2(4) at 5n, Lambert form", 60, g,
        ),
        IdentityCase(
            "eq-3-6", NBDifference(2, 1, 4, 0).combo(),
            _pe(term(F(3, 10), a23=2, e5=2, a14=-4),
                term(F(11, 10), 1, a14=1, e5=2, a23=-3),
                term(F(-3, 10), a14=-1)),
            "eq-3-6: NB_2(1)-NB_2(4) at 5n, product form", 60, g,
        ),
        IdentityCase(
            "eq-3-7", NBDifference(2, 2, 3, 0).combo(),
            _pe(term(F(1, 10), a23=2, e5=2, a14=-4),
                term(F(-13, 10), 1, a14=1, e5=2, a23=-3),
                term(F(-1, 10), a14=-1)),
            "eq-3-7: NB_2(2)-NB_2(3) at 5n, product form", 60, g,
        ),
        IdentityCase(
            "eq-3-8", NBDifference(2, 1, 4, 2).combo(),
            _pe(term(1, e5=2, a14=-2)),
            "eq-3-8: NB_2(1)-NB_2(4) at 5n+2", 60, g,
        ),
        IdentityCase(
            "eq-3-9", NBDifference(2, 2, 3, 2).combo(),
            _pe(term(2, e5=2, a14=-2)),
            "eq-3-9: NB_2(2)-NB_2(3) at 5n+2", 60, g,
        ),
        IdentityCase(
            "eq-3-10", NBDifference(2, 1, 4, 3),
            _lam((V, X(3, 1, 0)), (W, X(1, 2, 0))),
            "eq-3-10: NB_2(1)-NB_2(4) at 5n+3, Lambert form", 60, g,
        ),
        IdentityCase(
            "eq-3-11", NBDifference(2, 2, 3, 3),
            _lam((V, X(4, 2, 1)), (W, X(2, 1, 0)), (term(-1, a23=-1), X(1, 2, 0))),
            "eq-3-11: NB_2(2)-NB_2(3) at 5n+3, Lambert form", 60, g,
        ),
        IdentityCase(
            "eq-3-12", NBDifference(2, 1, 4, 3).combo(),
            _pe(term(2, e5=3, e1=-1)),
            "eq-3-12: NB_2(1)-NB_2(4) at 5n+3", 60, g,
        ),
        IdentityCase(
            "eq-3-13", NBDifference(2, 2, 3, 3).combo(),
            _pe(term(-1, e5=3, e1=-1)),
            "eq-3-13: NB_2(2)-NB_2(3) at 5n+3", 60, g,
        ),
        IdentityCase(
            "eq-3-14", NBDifference(2, 1, 4, 4).combo(),
            _pe(term(-1, e5=2, a23=-2)),
            "eq-3-14: NB_2(1)-NB_2(4) at 5n+4", 60, g,
        ),
        IdentityCase(
            "eq-3-15", NBDifference(2, 2, 3, 4).combo(),
            _pe(term(3, e5=2, a23=-2)),
            "eq-3-15: NB_2(2)-NB_2(3) at 5n+4", 60, g,
        ),
    ]


def _other_cases() -> list[IdentityCase]:
    return [
        IdentityCase(
            "eq-3-1", CrankCharacter(1), CrankCharacterRhs(1),
            "eq-3-1: crank product at a primitive fifth root of unity, j = 1",
            60, "garvan",
        ),
        IdentityCase(
            "eq-3-2", CrankCharacter(2), CrankCharacterRhs(2),
            "eq-3-2: crank product at a primitive fifth root of unity, j = 2",
            60, "garvan",
        ),
        IdentityCase(
            "ramanujan-5n4",
            Dissection(Builtin("euler_inverse"), 4, 5),
            _pe(term(5, e5=5, e1=-6)),
            "ramanujan-5n4: generating function of p(5n+4)",
            100, "ramanujan",
        ),
    ]


_REGISTRY: tuple[IdentityCase, ...] | None = None


def registry() -> list[IdentityCase]:
    """Every registered identity, in a fixed order."""
    global _REGISTRY
    if _REGISTRY is None:
        _REGISTRY = tuple(
            _theorem_cases() + _lemma_cases() + _dissection_cases() + _other_cases()
        )
    return list(_REGISTRY)


def case_ids() -> list[str]:
    return [c.id for c in registry()]


def get_case(case_id: str) -> IdentityCase:
    for c in registry():
        if c.id == case_id:
            return c
    raise KeyError(case_id)


def select_cases(pattern: str) -> list[IdentityCase]:
    """Cases whose id matches the shell-style ``pattern``."""
    return [c for c in registry() if fnmatch.fnmatchcase(c.id, pattern)]


# ---------------------------------------------------------------------------
# Congruences
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CongruenceCase:
    """``sum_{m=1..4} w(m) NB_k(m, 5, 5n + residue) = 0 (mod 5)``."""

    id: str
    k: int
    residue: int
    weight_power: int = 1
    n_max: int = 100
    citation: str = ""
    weights_override: tuple[int, ...] | None = None

    def weights(self) -> tuple[int, ...]:
        """Weights for residues 0..4 (residue 0 is never weighted)."""
        if self.weights_override is not None:
            return (0,) + tuple(self.weights_override)
        return tuple(0 if r == 0 else r ** self.weight_power for r in range(5))


@dataclass(frozen=True)
class CongruenceReport:
    id: str
    n_max: int
    violations: tuple[tuple[int, int], ...] = field(default_factory=tuple)
    elapsed_ms: float = 0.0

    @property
    def status(self) -> str:
        return "verified" if not self.violations else "mismatch"

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "n_max": self.n_max,
            "status": self.status,
            "violations": [{"n": n, "value": v} for n, v in self.violations],
            "elapsed_ms": round(self.elapsed_ms, 3),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def congruence_registry() -> list[CongruenceCase]:
    out = [
        CongruenceCase(f"eq-1-2-i{i}", 2, i, 1, citation=f"eq-1-2: k=2, n = {i} mod 5")
        for i in (0, 2, 3, 4)
    ]
    out.append(CongruenceCase("eq-1-3", 3, 0, 1, citation="eq-1-3: k=3, n = 0 mod 5"))
    out += [
        CongruenceCase(f"eq-1-4-j{j}", 4, j, 1, citation=f"eq-1-4: k=4, n = {j} mod 5")
        for j in (0, 3, 4)
    ]
    out += [
        CongruenceCase(f"eq-1-5-t{t}", 5, t, 3, citation=f"eq-1-5: k=5, cubic weights, n = {t} mod 5")
        for t in (2, 4)
    ]
    return out


def get_congruence(case_id: str) -> CongruenceCase:
    for c in congruence_registry():
        if c.id == case_id:
            return c
    raise KeyError(case_id)


def verify_congruence(case: CongruenceCase, n_max: int | None = None) -> CongruenceReport:
    """Check the congruence for every ``0 <= n <= n_max``."""
    top = case.n_max if n_max is None else n_max
    t0 = time.perf_counter()
    table = nb_table(case.k, 5, 5 * top + case.residue)
    w = case.weights()
    bad = []
    for n in range(top + 1):
        idx = 5 * n + case.residue
        value = sum(w[r] * table[r, idx] for r in range(5))
        if value % 5:
            bad.append((n, value))
    return CongruenceReport(case.id, top, tuple(bad), (time.perf_counter() - t0) * 1000)
