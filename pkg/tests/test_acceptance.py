"""One block per acceptance criterion; conftest prints a PASS/FAIL line each."""

from __future__ import annotations

import random
import time
from fractions import Fraction

import pytest

from nbcrank.coefficients import QQ, CyclotomicQ5, apply_character
from nbcrank.colored_partitions import (
    count_partitions,
    crank_count_series,
    internal_precision,
    nb_enumerate,
    nb_series,
    row_sum_series,
)
from nbcrank.identities import (
    congruence_registry,
    corrupted,
    get_case,
    verify,
    verify_congruence,
)
from nbcrank.products import eval_monomial
from nbcrank.series import TruncatedSeries, component_series, dissect, s_invert, s_shift, s_substitute_qk

LEMMA_IDS = [f"eq-2-{i}" for i in range(3, 16)] + ["theta-2-18"]
THEOREM_1_IDS = [f"eq-1-{i}" for i in range(6, 12)]
THEOREM_234_IDS = [f"eq-1-{i}" for i in range(12, 18)]
COMPONENT_IDS = [f"eq-3-{i}" for i in range(5, 16)]


def _verify_all_of(ids, order):
    reports = [verify(get_case(i), order) for i in ids]
    bad = [r.to_json() for r in reports if r.status != "verified"]
    assert not bad, bad
    return reports


@pytest.mark.criterion(1)
def test_criterion_1_lemmas():
    t0 = time.perf_counter()
    _verify_all_of(LEMMA_IDS, 200)
    assert time.perf_counter() - t0 < 10


@pytest.mark.criterion(2)
def test_criterion_2_ramanujan():
    _verify_all_of(["ramanujan-5n4"], 100)
    assert count_partitions(4) == 5
    assert count_partitions(9) == 30


@pytest.mark.criterion(3)
def test_criterion_3_theorem_k2():
    assert internal_precision(60, 5) >= 305
    t0 = time.perf_counter()
    _verify_all_of(THEOREM_1_IDS, 60)
    assert time.perf_counter() - t0 < 30


@pytest.mark.criterion(4)
@pytest.mark.parametrize("case_id", THEOREM_234_IDS)
def test_criterion_4_theorems_k345(case_id):
    _verify_all_of([case_id], 60)


@pytest.mark.criterion(5)
def test_criterion_5_components():
    _verify_all_of(COMPONENT_IDS, 60)


@pytest.mark.criterion(6)
@pytest.mark.parametrize("case", congruence_registry(), ids=lambda c: c.id)
def test_criterion_6_congruences(case):
    rep = verify_congruence(case, 100)
    assert rep.n_max == 100
    assert rep.violations == ()


@pytest.mark.criterion(7)
def test_criterion_7_oracle_equivalence():
    discrepancies = []
    for k, top in ((2, 12), (3, 8), (4, 8), (5, 8)):
        s = nb_series(k, 5, top + 1)
        for n in range(top + 1):
            e = nb_enumerate(k, 5, n)
            for r in range(5):
                if component_series(s, r)[n] != e[r]:
                    discrepancies.append((k, r, n))
    assert discrepancies == []


# -- criterion 8: seeded property loops --------------------------------------

N_INSTANCES = 100


def _rand_series(rng, val_range=(-2, 2), length=(1, 10), unit=False):
    v = rng.randint(*val_range)
    n = rng.randint(*length)
    cs = [Fraction(rng.randint(-9, 9), rng.randint(1, 6)) for _ in range(n)]
    if unit and cs[0] == 0:
        cs[0] = Fraction(1)
    return TruncatedSeries(QQ, cs, v, v + n)


def _agree(f, g):
    top = min(f.precision, g.precision)
    return all(f[n] == g[n] for n in range(min(f.valuation, g.valuation, top), top))


@pytest.mark.criterion(8)
def test_criterion_8_ring_axioms():
    rng = random.Random(1)
    for _ in range(N_INSTANCES):
        f, g, h = (_rand_series(rng) for _ in range(3))
        assert _agree((f * g) * h, f * (g * h))
        assert _agree(f * (g + h), f * g + f * h)
        assert _agree(f + g, g + f) and _agree(f * g, g * f)


@pytest.mark.criterion(8)
def test_criterion_8_inversion_roundtrip():
    rng = random.Random(2)
    for _ in range(N_INSTANCES):
        f = _rand_series(rng, unit=True)
        one = f * s_invert(f)
        assert one[0] == 1 and all(one[n] == 0 for n in range(1, one.precision))


@pytest.mark.criterion(8)
def test_criterion_8_dissection_reconstruction():
    rng = random.Random(3)
    for _ in range(N_INSTANCES):
        f = _rand_series(rng, length=(1, 20))
        m = rng.randint(1, 6)
        rebuilt = TruncatedSeries.zero(QQ, f.precision)
        for r in range(m):
            rebuilt = rebuilt + s_shift(s_substitute_qk(dissect(f, r, m), m), r)
        assert _agree(rebuilt, f)


@pytest.mark.criterion(8)
def test_criterion_8_crank_symmetry():
    rng = random.Random(4)
    for _ in range(N_INSTANCES):
        k, m, P = rng.randint(2, 6), rng.randint(2, 9), rng.randint(1, 30)
        s = crank_count_series(k, m, P)
        for n in range(P):
            assert all(s[n].component(r) == s[n].component(m - r) for r in range(m))


@pytest.mark.criterion(8)
def test_criterion_8_row_sums():
    rng = random.Random(5)
    for _ in range(N_INSTANCES):
        k, m, P = rng.randint(2, 6), rng.randint(2, 9), rng.randint(1, 30)
        s = nb_series(k, m, P)
        sums = row_sum_series(k, P)
        assert all(s[n].augmentation() == sums[n] for n in range(P))


@pytest.mark.criterion(8)
def test_criterion_8_character_consistency():
    rng = random.Random(6)
    for _ in range(N_INSTANCES):
        k, n, r = rng.randint(2, 5), rng.randint(0, 12), rng.randint(0, 4)
        coeff = nb_series(k, 5, 13)[n]
        acc = CyclotomicQ5([0])
        for j in range(5):
            acc = acc + CyclotomicQ5.zeta(-r * j) * apply_character(coeff, j)
        assert acc * Fraction(1, 5) == CyclotomicQ5([coeff.component(r)])


@pytest.mark.criterion(9)
@pytest.mark.parametrize("case_id,index", [("eq-1-7", 0), ("eq-2-11", 1), ("eq-1-12", 3), ("eq-3-13", 0)])
def test_criterion_9_negative_controls(case_id, index):
    case = get_case(case_id)
    rep = verify(corrupted(case, index))
    assert rep.status == "mismatch"
    expected = eval_monomial(case.rhs.terms[index].with_constant(1), case.default_order).valuation
    assert rep.first_mismatch.exponent == expected
    again = verify(corrupted(case, index))
    assert again.first_mismatch == rep.first_mismatch
