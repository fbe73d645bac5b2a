from __future__ import annotations

import json
from dataclasses import dataclass, replace
from fractions import Fraction

import pytest

from nbcrank.coefficients import QQ
from nbcrank.identities import (
    CongruenceCase,
    IdentityCase,
    VerificationReport,
    case_ids,
    congruence_registry,
    corrupted,
    get_case,
    registry,
    select_cases,
    verify,
    verify_all,
    verify_congruence,
)
from nbcrank.products import ProductExpr, eval_monomial
from nbcrank.series import TruncatedSeries


def test_registry_shape():
    ids = case_ids()
    assert len(ids) >= 33
    assert len(set(ids)) == len(ids)
    assert get_case("eq-1-8").rhs == ProductExpr.zero()
    assert "ramanujan-5n4" in ids
    assert len(select_cases("eq-2-*")) == 13
    assert all(c.citation for c in registry())
    assert all(c.citation.startswith(c.id) for c in registry())


@pytest.mark.parametrize("case_id", case_ids())
def test_every_case_verifies(case_id):
    rep = verify(get_case(case_id))
    assert rep.status == "verified", rep.to_json()
    assert rep.first_mismatch is None


@pytest.mark.parametrize("case_id", ["eq-1-7", "eq-1-16", "eq-2-11", "eq-3-5", "eq-3-1", "ramanujan-5n4"])
def test_longer_order_agrees(case_id):
    case = get_case(case_id)
    P = case.default_order
    assert verify(case, P + 10).status == "verified"
    a = case.lhs.evaluate(P)
    b = case.lhs.evaluate(P + 10)
    assert all(a[n] == b[n] for n in range(min(a.valuation, 0), P))


def test_seven_corrupted_to_four():
    case = get_case("eq-1-7")
    bad = replace(case, rhs=case.rhs.with_term_constant(0, 4))
    rep = verify(bad)
    assert rep.status == "mismatch"
    fm = rep.first_mismatch
    assert (fm.exponent, fm.lhs, fm.rhs) == (0, "5", "4")


CONTROL_CASES = [
    ("eq-1-6", 0), ("eq-1-8", 0), ("eq-1-12", 2), ("eq-1-13", 0), ("eq-1-17", 2),
    ("eq-2-4", 0), ("eq-2-11", 1), ("eq-2-14", 0), ("eq-3-12", 0), ("ramanujan-5n4", 0),
]


@pytest.mark.parametrize("case_id,index", CONTROL_CASES)
def test_negative_control_localizes(case_id, index):
    case = get_case(case_id)
    bad = corrupted(case, index)
    rep = verify(bad)
    assert rep.status == "mismatch"
    if case.rhs.terms:
        mono = case.rhs.terms[index].with_constant(1)
        expected = eval_monomial(mono, case.default_order).valuation
    else:
        expected = 0
    assert rep.first_mismatch.exponent == expected
    # the reported pair differs by exactly the coefficient of the shift
    diff = Fraction(rep.first_mismatch.rhs) - Fraction(rep.first_mismatch.lhs)
    assert diff != 0


def test_corrupting_non_product_side_rejected():
    with pytest.raises(TypeError):
        corrupted(get_case("eq-2-15"))


@dataclass(frozen=True)
class ShortSide:
    def evaluate(self, P):
        return TruncatedSeries(QQ, [1], 0, max(P - 3, 1))


@dataclass(frozen=True)
class Exploding:
    def evaluate(self, P):
        raise ArithmeticError("boom")


def test_precision_shortfall_is_error():
    case = IdentityCase("short", ShortSide(), ProductExpr.one(), "short: test", 10)
    rep = verify(case)
    assert rep.status == "error"
    assert "PrecisionError" in rep.message


def test_evaluation_error_carries_id():
    case = IdentityCase("boom-case", Exploding(), ProductExpr.one(), "boom-case: test", 10)
    rep = verify(case)
    assert rep.status == "error" and "boom-case" in rep.message


def _strip(reports):
    return [(r.id, r.order_checked, r.status, r.first_mismatch) for r in reports]


def test_verify_all_deterministic_and_ordered():
    ids = ["eq-2-3", "eq-1-7", "eq-3-8", "theta-2-18"]
    a = verify_all(ids=ids)
    b = verify_all(ids=ids)
    assert _strip(a) == _strip(b)
    assert [r.id for r in a] == ids
    c = verify_all(ids=ids, jobs=2)
    assert _strip(c) == _strip(a)
    assert verify_all(ids=[]) == []


def test_report_json_roundtrip():
    rep = verify(corrupted(get_case("eq-2-11"), 2))
    text = rep.to_json()
    doc = json.loads(text)
    assert set(doc) == {"id", "order", "status", "first_mismatch", "elapsed_ms"}
    assert set(doc["first_mismatch"]) == {"exponent", "lhs", "rhs"}
    assert json.dumps(doc, sort_keys=True) == text
    Fraction(doc["first_mismatch"]["lhs"])
    ok = VerificationReport("x", 5, "verified", None, 1.0)
    assert json.loads(ok.to_json())["first_mismatch"] is None


def test_congruence_registry_complete():
    ids = [c.id for c in congruence_registry()]
    assert ids == [
        "eq-1-2-i0", "eq-1-2-i2", "eq-1-2-i3", "eq-1-2-i4", "eq-1-3",
        "eq-1-4-j0", "eq-1-4-j3", "eq-1-4-j4", "eq-1-5-t2", "eq-1-5-t4",
    ]


def test_cubic_weights_reduce_mod_five():
    case = [c for c in congruence_registry() if c.id == "eq-1-5-t2"][0]
    assert [w % 5 for w in case.weights()[1:]] == [1, 3, 2, 4]


def test_congruence_hand_value():
    case = CongruenceCase("probe", 2, 2, 1, n_max=0)
    rep = verify_congruence(case)
    assert rep.status == "verified"
    # value 1*1 + 2*2 = 5 at n = 2; shifting weight 1 to 2 breaks it
    bad = CongruenceCase("probe", 2, 2, 1, n_max=3, weights_override=(2, 2, 3, 4))
    rep = verify_congruence(bad)
    assert rep.violations[0] == (0, 6)


@pytest.mark.parametrize("case", congruence_registry(), ids=lambda c: c.id)
def test_congruences_hold(case):
    rep = verify_congruence(case)
    assert rep.status == "verified", rep.violations[:3]
