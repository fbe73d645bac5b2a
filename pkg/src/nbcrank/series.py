"""Truncated Laurent series over an exact coefficient ring.

A :class:`TruncatedSeries` knows its coefficients exactly for exponents in
``[valuation, precision)``.  Nothing is claimed at or above ``precision``;
asking for such a coefficient raises :class:`PrecisionError`.

Products are computed by Kronecker substitution: both operands are packed
into one big integer, multiplied (with GMP when available) and unpacked.
:func:`schoolbook_product` is kept as the reference path and for rings with
no packed representation.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .coefficients import (
    QQ,
    ZZ,
    CyclotomicField5,
    GroupRing,
    GroupRingElement,
    NotInvertibleError,
    Ring,
    RingMismatchError,
    common_denominator,
)

try:
    import gmpy2

    def _bigmul(x: int, y: int) -> int:
        return int(gmpy2.mpz(x) * gmpy2.mpz(y))

except ImportError:  # pragma: no cover - gmpy2 is a declared dependency

    def _bigmul(x: int, y: int) -> int:
        return x * y


class PrecisionError(ArithmeticError):
    """A coefficient outside the known window was requested."""


# ---------------------------------------------------------------------------
# Packed integer convolution
# ---------------------------------------------------------------------------


def _pack(values: Sequence[int], nbytes: int) -> int:
    pos = b"".join((v if v > 0 else 0).to_bytes(nbytes, "little") for v in values)
    neg = b"".join((-v if v < 0 else 0).to_bytes(nbytes, "little") for v in values)
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _unpack(value: int, nslots: int, nbytes: int) -> list[int]:
    half = 1 << (8 * nbytes - 1)
    bias = int.from_bytes((b"\x00" * (nbytes - 1) + b"\x80") * nslots, "little")
    width = 8 * nbytes * nslots
    shifted = (value + bias) & ((1 << width) - 1)
    raw = shifted.to_bytes(nbytes * nslots, "little")
    return [
        int.from_bytes(raw[i : i + nbytes], "little") - half
        for i in range(0, nbytes * nslots, nbytes)
    ]


def _slot_bytes(a: Sequence[int], b: Sequence[int], terms: int) -> int:
    amax = max((abs(v) for v in a), default=0)
    bmax = max((abs(v) for v in b), default=0)
    bound = max(amax * bmax * max(terms, 1), amax, bmax)
    return (bound.bit_length() + 2 + 7) // 8


def int_convolve(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    """First ``n`` coefficients of the product of two integer polynomials."""
    a = list(a[:n])
    b = list(b[:n])
    if n <= 0:
        return []
    if not a or not b:
        return [0] * n
    nbytes = _slot_bytes(a, b, min(len(a), len(b)))
    prod = _bigmul(_pack(a, nbytes), _pack(b, nbytes))
    return _unpack(prod, n, nbytes)


def group_int_convolve(
    a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], m: int, n: int
) -> list[list[int]]:
    """Truncated product of series with coefficients in ``ZZ[C_m]``.

    Each coefficient is a length-``m`` component list.  The group variable is
    packed next to ``q`` with stride ``2m - 1`` so no carries collide, and
    folded modulo ``m`` afterwards.
    """
    a = list(a[:n])
    b = list(b[:n])
    if n <= 0:
        return []
    if not a or not b:
        return [[0] * m for _ in range(n)]
    stride = 2 * m - 1
    pad = [0] * (m - 1)
    flat_a = [c for comps in a for c in list(comps) + pad]
    flat_b = [c for comps in b for c in list(comps) + pad]
    nbytes = _slot_bytes(flat_a, flat_b, m * min(len(a), len(b)))
    prod = _bigmul(_pack(flat_a, nbytes), _pack(flat_b, nbytes))
    slots = _unpack(prod, n * stride, nbytes)
    out = []
    for i in range(n):
        row = slots[i * stride : (i + 1) * stride]
        comps = row[:m]
        for j in range(m, stride):
            comps[j - m] += row[j]
        out.append(comps)
    return out


def schoolbook_product(ring: Ring, a: Sequence, b: Sequence, n: int) -> list:
    """Reference O(n^2) truncated product using the ring's own arithmetic."""
    out = [ring.zero] * max(n, 0)
    for i, x in enumerate(a[:n]):
        if ring.is_zero(x):
            continue
        for j in range(min(len(b), n - i)):
            y = b[j]
            if not ring.is_zero(y):
                out[i + j] = out[i + j] + x * y
    return out


def ring_product(ring: Ring, a: Sequence, b: Sequence, n: int) -> list:
    """First ``n`` coefficients of ``a * b``, dispatching on the ring."""
    if ring is ZZ:
        return int_convolve(a, b, n)
    if ring is QQ:
        da = common_denominator(a)
        db = common_denominator(b)
        ia = [int(x * da) for x in a]
        ib = [int(x * db) for x in b]
        den = da * db
        return [Fraction(v, den) for v in int_convolve(ia, ib, n)]
    if isinstance(ring, GroupRing):
        m = ring.m
        if ring.base is ZZ:
            rows = group_int_convolve(
                [x.components for x in a], [x.components for x in b], m, n
            )
            return [GroupRingElement(r) for r in rows]
        da = common_denominator([c for x in a for c in x.components])
        db = common_denominator([c for x in b for c in x.components])
        rows = group_int_convolve(
            [[int(c * da) for c in x.components] for x in a],
            [[int(c * db) for c in x.components] for x in b],
            m,
            n,
        )
        den = da * db
        return [GroupRingElement([Fraction(c, den) for c in r]) for r in rows]
    return schoolbook_product(ring, a, b, n)


# ---------------------------------------------------------------------------
# The series type
# ---------------------------------------------------------------------------


class TruncatedSeries:
    """Laurent series known exactly on ``[valuation, precision)``.

    Stored densely from the valuation up to ``precision - 1``.  The leading
    stored coefficient is nonzero; an identically zero window is stored with
    ``valuation == precision`` and no coefficients.
    """

    __slots__ = ("ring", "valuation", "precision", "coeffs")

    def __init__(
        self,
        ring: Ring,
        coeffs: Iterable,
        valuation: int = 0,
        precision: int | None = None,
    ) -> None:
        values = [ring.coerce(c) for c in coeffs]
        if precision is None:
            precision = valuation + len(values)
        del values[max(precision - valuation, 0) :]
        values += [ring.zero] * (precision - valuation - len(values))
        lead = 0
        while lead < len(values) and ring.is_zero(values[lead]):
            lead += 1
        self.ring = ring
        self.precision = precision
        if lead == len(values):
            self.valuation = precision
            self.coeffs: tuple = ()
        else:
            self.valuation = valuation + lead
            self.coeffs = tuple(values[lead:])

    @classmethod
    def _raw(cls, ring: Ring, coeffs: list, valuation: int, precision: int) -> TruncatedSeries:
        # coeffs already coerced; skips per-element coercion on hot paths
        obj = cls.__new__(cls)
        lead = 0
        while lead < len(coeffs) and ring.is_zero(coeffs[lead]):
            lead += 1
        obj.ring = ring
        obj.precision = precision
        if lead == len(coeffs) or valuation + lead >= precision:
            obj.valuation = precision
            obj.coeffs = ()
        else:
            obj.valuation = valuation + lead
            kept = list(coeffs[lead : precision - valuation])
            kept += [ring.zero] * (precision - obj.valuation - len(kept))
            obj.coeffs = tuple(kept)
        return obj

    @classmethod
    def zero(cls, ring: Ring, precision: int) -> TruncatedSeries:
        return cls._raw(ring, [], precision, precision)

    @classmethod
    def constant(cls, ring: Ring, value: object, precision: int) -> TruncatedSeries:
        return cls(ring, [value], 0, precision)

    @classmethod
    def monomial(cls, ring: Ring, value: object, exponent: int, precision: int) -> TruncatedSeries:
        return cls(ring, [value], exponent, precision)

    @classmethod
    def from_dict(cls, ring: Ring, terms: dict[int, object], precision: int) -> TruncatedSeries:
        if not terms:
            return cls.zero(ring, precision)
        low = min(terms)
        values = [ring.zero] * max(precision - low, 0)
        for e, c in terms.items():
            if e < precision:
                values[e - low] = values[e - low] + ring.coerce(c)
        return cls._raw(ring, values, low, precision)

    # -- inspection --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, n: int):
        if n >= self.precision:
            raise PrecisionError(
                f"coefficient of q^{n} requested but series is only known below q^{self.precision}"
            )
        if n < self.valuation:
            return self.ring.zero
        return self.coeffs[n - self.valuation]

    def coefficients(self, start: int, stop: int) -> list:
        return [self[n] for n in range(start, stop)]

    def items(self) -> Iterable[tuple[int, object]]:
        for i, c in enumerate(self.coeffs):
            yield self.valuation + i, c

    def truncate(self, precision: int) -> TruncatedSeries:
        if precision >= self.precision:
            return self
        return TruncatedSeries._raw(
            self.ring, list(self.coeffs), self.valuation, precision
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.precision == other.precision
            and self.valuation == other.valuation
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((repr(self.ring), self.valuation, self.precision, self.coeffs))

    def __repr__(self) -> str:
        return f"TruncatedSeries({self.ring!r}, val={self.valuation}, prec={self.precision}, {self})"

    def __str__(self) -> str:
        terms = []
        for e, c in self.items():
            if self.ring.is_zero(c):
                continue
            terms.append(f"({c})*q^{e}")
            if len(terms) >= 12:
                terms.append("...")
                break
        body = " + ".join(terms) if terms else "0"
        return f"{body} + O(q^{self.precision})"

    # -- operators ---------------------------------------------------------

    def __add__(self, other: object) -> TruncatedSeries:
        return s_add(self, _promote(other, self))

    def __radd__(self, other: object) -> TruncatedSeries:
        return s_add(_promote(other, self), self)

    def __sub__(self, other: object) -> TruncatedSeries:
        return s_sub(self, _promote(other, self))

    def __rsub__(self, other: object) -> TruncatedSeries:
        return s_sub(_promote(other, self), self)

    def __neg__(self) -> TruncatedSeries:
        return TruncatedSeries._raw(
            self.ring, [-c for c in self.coeffs], self.valuation, self.precision
        )

    def __mul__(self, other: object) -> TruncatedSeries:
        if isinstance(other, TruncatedSeries):
            return s_mul(self, other)
        return s_scale(self, other)

    def __rmul__(self, other: object) -> TruncatedSeries:
        return s_scale(self, other)

    def __truediv__(self, other: object) -> TruncatedSeries:
        if isinstance(other, TruncatedSeries):
            return s_mul(self, s_invert(other))
        return s_scale(self, self.ring.inverse(self.ring.coerce(other)))

    def __pow__(self, e: int) -> TruncatedSeries:
        return s_pow(self, e)


def _promote(x: object, like: TruncatedSeries) -> TruncatedSeries:
    if isinstance(x, TruncatedSeries):
        return x
    return TruncatedSeries.constant(like.ring, x, max(like.precision, 1))


def _check_ring(f: TruncatedSeries, g: TruncatedSeries) -> None:
    if f.ring != g.ring:
        raise RingMismatchError(f"cannot combine series over {f.ring!r} and {g.ring!r}")


def s_add(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    _check_ring(f, g)
    prec = min(f.precision, g.precision)
    low = min(f.valuation, g.valuation)
    if low >= prec:
        return TruncatedSeries.zero(f.ring, prec)
    zero = f.ring.zero
    out = [zero] * (prec - low)
    for src in (f, g):
        off = src.valuation - low
        for i, c in enumerate(src.coeffs):
            if off + i >= len(out):
                break
            out[off + i] = out[off + i] + c
    return TruncatedSeries._raw(f.ring, out, low, prec)


def s_sub(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    return s_add(f, -g)


def s_neg(f: TruncatedSeries) -> TruncatedSeries:
    return -f


def s_mul(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """Product, exact below ``min(prec_f + val_g, prec_g + val_f)``."""
    _check_ring(f, g)
    prec = min(f.precision + g.valuation, g.precision + f.valuation)
    low = f.valuation + g.valuation
    if f.is_zero() or g.is_zero() or low >= prec:
        return TruncatedSeries.zero(f.ring, prec)
    n = prec - low
    coeffs = ring_product(f.ring, f.coeffs, g.coeffs, n)
    return TruncatedSeries._raw(f.ring, coeffs, low, prec)


def s_scale(f: TruncatedSeries, c: object) -> TruncatedSeries:
    c = f.ring.coerce(c)
    if f.ring.is_zero(c):
        return TruncatedSeries.zero(f.ring, f.precision)
    return TruncatedSeries._raw(f.ring, [x * c for x in f.coeffs], f.valuation, f.precision)


def s_shift(f: TruncatedSeries, d: int) -> TruncatedSeries:
    """Multiply by ``q**d``."""
    return TruncatedSeries._raw(f.ring, list(f.coeffs), f.valuation + d, f.precision + d)


def s_invert(f: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse by Newton iteration.

    The leading coefficient must be a unit.  If ``f`` is known on
    ``[v, p)`` the inverse is known on ``[-v, p - 2v)``.
    """
    if f.is_zero():
        raise NotInvertibleError("zero series is not invertible")
    ring = f.ring
    lead = f.coeffs[0]
    if not ring.is_unit(lead):
        raise NotInvertibleError("not invertible in this ring")
    n = f.precision - f.valuation
    u = list(f.coeffs)
    g = [ring.inverse(lead)]
    two = ring.one + ring.one
    k = 1
    while k < n:
        k = min(2 * k, n)
        e = ring_product(ring, u[:k], g, k)
        t = [-x for x in e]
        t[0] = t[0] + two
        g = ring_product(ring, g, t, k)
    return TruncatedSeries._raw(ring, g, -f.valuation, -f.valuation + n)


def s_pow(f: TruncatedSeries, e: int) -> TruncatedSeries:
    """Integer power by repeated squaring; negative ``e`` inverts first."""
    if e < 0:
        return s_pow(s_invert(f), -e)
    if e == 0:
        # constant 1, known as far as f is known relative to its valuation
        return TruncatedSeries.constant(f.ring, f.ring.one, f.precision - f.valuation)
    result: TruncatedSeries | None = None
    base = f
    while True:
        if e & 1:
            result = base if result is None else s_mul(result, base)
        e >>= 1
        if not e:
            break
        base = s_mul(base, base)
    assert result is not None
    return result


def s_substitute_qk(f: TruncatedSeries, k: int) -> TruncatedSeries:
    """Replace ``q`` by ``q**k``."""
    if k < 1:
        raise ValueError("substitution exponent must be positive")
    if k == 1:
        return f
    zero = f.ring.zero
    out = [zero] * (k * (len(f.coeffs) - 1) + 1) if f.coeffs else []
    for i, c in enumerate(f.coeffs):
        out[k * i] = c
    return TruncatedSeries._raw(f.ring, out, k * f.valuation, k * f.precision)


def dissect(f: TruncatedSeries, r: int, m: int) -> TruncatedSeries:
    """``sum_n c[m*n + r] q^n``: the residue-``r`` part of ``f`` modulo ``m``."""
    if m < 1 or not 0 <= r < m:
        raise ValueError("need 0 <= r < m")
    prec = (f.precision - r - 1) // m + 1
    if f.is_zero():
        return TruncatedSeries.zero(f.ring, prec)
    low = -((r - f.valuation) // m)  # ceil((val - r) / m)
    out = []
    for n in range(low, prec):
        out.append(f[m * n + r])
    return TruncatedSeries._raw(f.ring, out, low, prec)


def s_map_ring(
    f: TruncatedSeries, target: Ring, embedding: Callable[[object], object]
) -> TruncatedSeries:
    """Apply a ring morphism coefficient-wise."""
    return TruncatedSeries(target, [embedding(c) for c in f.coeffs], f.valuation, f.precision)


def component_series(f: TruncatedSeries, r: int) -> TruncatedSeries:
    """Read the ``g**r`` component of a group-ring series."""
    if not isinstance(f.ring, GroupRing):
        raise RingMismatchError("component read needs a group-ring series")
    base = f.ring.base
    return TruncatedSeries._raw(
        base, [c.component(r) for c in f.coeffs], f.valuation, f.precision
    )


def lift_to_rationals(f: TruncatedSeries) -> TruncatedSeries:
    """ZZ -> QQ and ZZ[C_m] -> QQ[C_m]; other rings are returned unchanged."""
    if f.ring is ZZ:
        return TruncatedSeries._raw(QQ, [Fraction(c) for c in f.coeffs], f.valuation, f.precision)
    if isinstance(f.ring, GroupRing) and f.ring.base is ZZ:
        ring = GroupRing(f.ring.m, QQ)
        return TruncatedSeries._raw(
            ring,
            [GroupRingElement([Fraction(c) for c in x.components]) for x in f.coeffs],
            f.valuation,
            f.precision,
        )
    return f


def to_cyclotomic(f: TruncatedSeries) -> TruncatedSeries:
    """Embed a ZZ or QQ series into ``Q(zeta5)``."""
    from .coefficients import CYCLOTOMIC5, CyclotomicQ5

    if isinstance(f.ring, CyclotomicField5):
        return f
    if f.ring not in (ZZ, QQ):
        raise RingMismatchError(f"no embedding of {f.ring!r} into Q(zeta5)")
    return TruncatedSeries._raw(
        CYCLOTOMIC5, [CyclotomicQ5([c]) for c in f.coeffs], f.valuation, f.precision
    )


def series_product(factors: Sequence[TruncatedSeries]) -> TruncatedSeries:
    """Balanced product tree; much cheaper than a left fold for many factors."""
    if not factors:
        raise ValueError("empty product")
    layer = list(factors)
    while len(layer) > 1:
        nxt = [s_mul(layer[i], layer[i + 1]) for i in range(0, len(layer) - 1, 2)]
        if len(layer) % 2:
            nxt.append(layer[-1])
        layer = nxt
    return layer[0]
