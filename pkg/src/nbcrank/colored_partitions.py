"""NB_k(r, m, n): parts of the first color, summed over k-colored partitions
of n whose crank ``#pi1 - #pi2`` is congruent to r mod m.

Two independent routes are provided:

* :func:`nb_series` builds the generating function over the group ring
  ``ZZ[C_m]``, with the crank variable set to the group generator ``g``::

      (q;q)^(2-k) / prod_{j>=1} (1 - g q^j)(1 - g^(m-1) q^j)
          * sum_{n>=1} g q^n / (1 - g q^n)

  The ``g^r`` component of the coefficient of ``q^n`` is NB_k(r, m, n).
* :func:`nb_enumerate` walks the partitions themselves.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

from .coefficients import QQ, ZZ, GroupRing, GroupRingElement, scalar_to_group_ring
from .series import (
    TruncatedSeries,
    component_series,
    dissect,
    _unpack,
    lift_to_rationals,
    s_invert,
    s_map_ring,
    s_mul,
    s_pow,
)
from .products import euler_inverse, pochhammer

# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------


def partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """All partitions of ``n`` as weakly decreasing tuples."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _partition_list(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(partitions(n))


@lru_cache(maxsize=None)
def _partition_numbers(n: int) -> tuple[int, ...]:
    # cheap p(0..n) for sizing the enumeration before it starts
    p = [1] + [0] * n
    for part in range(1, n + 1):
        for i in range(part, n + 1):
            p[i] += p[i - part]
    return tuple(p)


def count_partitions(n: int) -> int:
    """p(n) by enumeration."""
    return len(_partition_list(n))


@lru_cache(maxsize=None)
def count_colored_partitions(colors: int, n: int) -> int:
    """Number of ``colors``-colored partitions of ``n`` (enumeration based)."""
    if colors == 0:
        return 1 if n == 0 else 0
    return sum(
        count_partitions(s) * count_colored_partitions(colors - 1, n - s)
        for s in range(n + 1)
    )


@dataclass(frozen=True)
class ColoredPartition:
    """A k-tuple of partitions."""

    parts: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.parts) < 2:
            raise ValueError("a k-colored partition needs k >= 2 colors")
        for p in self.parts:
            if any(x <= 0 for x in p) or any(x < y for x, y in zip(p, p[1:])):
                raise ValueError(f"{p} is not a partition")

    @property
    def k(self) -> int:
        return len(self.parts)

    @property
    def size(self) -> int:
        return sum(sum(p) for p in self.parts)

    @property
    def crank(self) -> int:
        return len(self.parts[0]) - len(self.parts[1])

    @property
    def weight(self) -> int:
        return len(self.parts[0])


def colored_partitions(k: int, n: int) -> Iterator[ColoredPartition]:
    """Every k-colored partition of ``n``."""

    def rec(colors: int, remaining: int) -> Iterator[tuple[tuple[int, ...], ...]]:
        if colors == 1:
            for p in _partition_list(remaining):
                yield (p,)
            return
        for size in range(remaining + 1):
            for p in _partition_list(size):
                for tail in rec(colors - 1, remaining - size):
                    yield (p,) + tail

    for parts in rec(k, n):
        yield ColoredPartition(parts)


DEFAULT_MAX_WORK = 2_000_000


def nb_enumerate(k: int, m: int, n: int, max_work: int = DEFAULT_MAX_WORK) -> dict[int, int]:
    """NB_k(r, m, n) for every residue r, by brute force.

    Only the first two colors influence crank and weight, so colors 3..k are
    folded into the count of (k-2)-colored partitions of what is left.
    """
    if k < 2 or m < 2:
        raise ValueError("need k >= 2 and m >= 2")
    pn = _partition_numbers(n)
    work = sum(
        pn[n1] * pn[n2]
        for n1 in range(n + 1)
        for n2 in range(n + 1 - n1)
    )
    if work > max_work:
        raise ValueError(f"enumeration of n={n} needs {work} steps (limit {max_work})")
    out = {r: 0 for r in range(m)}
    for n1 in range(n + 1):
        for n2 in range(n + 1 - n1):
            mult = count_colored_partitions(k - 2, n - n1 - n2)
            if not mult:
                continue
            for p1 in _partition_list(n1):
                if not p1:
                    continue
                for p2 in _partition_list(n2):
                    out[(len(p1) - len(p2)) % m] += len(p1) * mult
    return out


def nb_enumerate_literal(k: int, m: int, n: int) -> dict[int, int]:
    """Same as :func:`nb_enumerate` but walks every k-tuple; tiny n only."""
    out = {r: 0 for r in range(m)}
    for cp in colored_partitions(k, n):
        out[cp.crank % m] += cp.weight
    return out


# ---------------------------------------------------------------------------
# Group-ring generating functions
# ---------------------------------------------------------------------------

_cache: dict[tuple, TruncatedSeries] = {}
_cache_lock = threading.Lock()


def _cached(key: tuple, P: int, build) -> TruncatedSeries:
    with _cache_lock:
        hit = _cache.get(key)
    if hit is not None and hit.precision >= P:
        return hit.truncate(P)
    value = build(P)
    with _cache_lock:
        old = _cache.get(key)
        if old is None or old.precision < value.precision:
            _cache[key] = value
    return value


def clear_cache() -> None:
    with _cache_lock:
        _cache.clear()


def _denominator_slot_bytes(P: int) -> int:
    # |coefficients| of any partial product are dominated by those of
    # prod (1 + q^j)^2 <= 1/(q;q)^2, and p_2(n) <= (n+1) exp(pi sqrt(4n/3)).
    bits = math.pi * math.sqrt(4 * P / 3) / math.log(2) + math.log2(P + 1)
    return (int(bits) + 3 + 7) // 8


def crank_denominator(m: int, P: int) -> TruncatedSeries:
    """``prod_{1<=j<P} (1 - g q^j)(1 - g^(m-1) q^j)`` over ``ZZ[C_m]``.

    Each group component is held as one packed integer in ``q``; multiplying
    by a sparse factor is then a few shifts and additions per component.
    """
    ring = GroupRing(m)
    nbytes = _denominator_slot_bytes(P)
    slot = 8 * nbytes
    mask = (1 << (slot * P)) - 1
    comps = [0] * m
    comps[0] = 1
    for j in range(1, P):
        s1 = slot * j
        s2 = 2 * s1
        new = []
        for r in range(m):
            x = comps[r] - ((comps[(r - 1) % m] + comps[(r + 1) % m]) << s1)
            if 2 * j < P:
                x += comps[r] << s2
            new.append(x & mask)
        comps = new
    cols = [_unpack(c, P, nbytes) for c in comps]
    rows = [GroupRingElement([cols[r][n] for r in range(m)]) for n in range(P)]
    return TruncatedSeries(ring, rows, 0, P)


def _crank_kernel(m: int, P: int) -> TruncatedSeries:
    return _cached(("kernel", m), P, lambda p: s_invert(crank_denominator(m, p)))


def lambert_factor(m: int, P: int) -> TruncatedSeries:
    """``sum_{n>=1} g q^n/(1 - g q^n) = sum_{N>=1} q^N sum_{d|N} g^d``."""
    rows = [[0] * m for _ in range(P)]
    for d in range(1, P):
        r = d % m
        for N in range(d, P, d):
            rows[N][r] += 1
    return TruncatedSeries(GroupRing(m), [GroupRingElement(r) for r in rows], 0, P)


def _euler_part(k: int, m: int, P: int) -> TruncatedSeries:
    base = s_pow(pochhammer(1, 1, P), 2 - k)
    return s_map_ring(base, GroupRing(m), scalar_to_group_ring(m))


def crank_count_series(k: int, m: int, P: int) -> TruncatedSeries:
    """Generating function of k-colored partitions graded by crank mod m."""
    _check_km(k, m, P)

    def build(p: int) -> TruncatedSeries:
        return s_mul(_euler_part(k, m, p), _crank_kernel(m, p))

    return _cached(("crank", k, m), P, build)


def nb_series(k: int, m: int, P: int) -> TruncatedSeries:
    """Series over ``ZZ[C_m]`` whose ``g^r`` parts are NB_k(r, m, n)."""
    _check_km(k, m, P)

    def build(p: int) -> TruncatedSeries:
        return s_mul(crank_count_series(k, m, p), lambert_factor(m, p))

    return _cached(("nb", k, m), P, build)


def internal_precision(P: int, modulus: int) -> int:
    """Precision of the NB series behind a dissected window of length ``P``.

    One full period of headroom: at least ``modulus*P + residue + 1`` for
    every residue.
    """
    return modulus * (P + 1)


def nb_combo_series(
    k: int,
    m: int,
    weights: Sequence[Fraction | int],
    residue: int,
    modulus: int,
    P: int,
) -> TruncatedSeries:
    """``sum_n (sum_r w_r NB_k(r, m, modulus*n + residue)) q^n`` over QQ."""
    if len(weights) != m:
        raise ValueError(f"expected {m} weights, got {len(weights)}")
    if not 0 <= residue < modulus:
        raise ValueError("need 0 <= residue < modulus")
    need = internal_precision(P, modulus)
    full = nb_series(k, m, need)
    combo = TruncatedSeries.zero(QQ, need)
    for r, w in enumerate(weights):
        if w:
            combo = combo + lift_to_rationals(component_series(full, r)) * Fraction(w)
    return dissect(combo, residue, modulus).truncate(P)


def _check_km(k: int, m: int, P: int) -> None:
    if k < 2:
        raise ValueError(f"need k >= 2 colors, got {k}")
    if m < 2:
        raise ValueError(f"need modulus m >= 2, got {m}")
    if P < 1:
        raise ValueError("precision must be positive")


def divisor_count_series(P: int) -> TruncatedSeries:
    """``sum_{j>=1} q^j/(1-q^j)`` over ZZ."""
    acc = [0] * P
    for d in range(1, P):
        for N in range(d, P, d):
            acc[N] += 1
    return TruncatedSeries(ZZ, acc, 0, P)


def row_sum_series(k: int, P: int) -> TruncatedSeries:
    """``(q;q)^(-k) * sum_j q^j/(1-q^j)``: total parts of color 1 over all
    k-colored partitions, independent of the crank."""
    return s_mul(s_pow(euler_inverse(P), k), divisor_count_series(P))


# ---------------------------------------------------------------------------
# Tables
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NBTable:
    """``values[r][n] = NB_k(r, m, n)`` for ``0 <= n <= max_n``."""

    k: int
    m: int
    max_n: int
    values: tuple[tuple[int, ...], ...]

    def __getitem__(self, rn: tuple[int, int]) -> int:
        r, n = rn
        return self.values[r % self.m][n]

    def row(self, n: int) -> tuple[int, ...]:
        return tuple(self.values[r][n] for r in range(self.m))

    def row_sum(self, n: int) -> int:
        return sum(self.row(n))


def nb_table(k: int, m: int, max_n: int) -> NBTable:
    s = nb_series(k, m, max_n + 1)
    cols = []
    for r in range(m):
        comp = component_series(s, r)
        cols.append(tuple(int(comp[n]) for n in range(max_n + 1)))
    return NBTable(k, m, max_n, tuple(cols))
