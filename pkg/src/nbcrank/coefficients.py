"""Exact coefficient rings.

Three kinds of coefficients are used by the series engine:

* ``ZZ``: Python ints.
* ``QQ``: :class:`fractions.Fraction` (always in lowest terms).
* ``GroupRing(m, base)``: the group ring of the cyclic group of order ``m``
  over ``ZZ`` or ``QQ``.  Its generator ``g`` satisfies ``g**m == 1``.  With
  ``m = 5`` it stands in for a primitive fifth root of unity while keeping all
  five residue classes apart.

``CYCLOTOMIC5`` is the field ``Q(zeta_5)``, reached from the group ring through
:func:`apply_character`.  It exists to cross-check the group-ring shortcut
against the literal root-of-unity filter.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Callable, Sequence, Union

BigRat = Fraction

Scalar = Union[int, Fraction]


class RingMismatchError(TypeError):
    """Operands live in different coefficient rings."""


class NotInvertibleError(ArithmeticError):
    """An element is not a unit of its ring."""


# ---------------------------------------------------------------------------
# Group ring elements
# ---------------------------------------------------------------------------


class GroupRingElement:
    """An element ``sum(c[j] * g**j for j < m)`` of a cyclic group ring."""

    __slots__ = ("components",)

    def __init__(self, components: Sequence[Scalar]) -> None:
        if len(components) < 1:
            raise ValueError("group ring element needs at least one component")
        self.components: tuple[Scalar, ...] = tuple(
            _normalize_scalar(c) for c in components
        )

    @property
    def order(self) -> int:
        return len(self.components)

    @classmethod
    def scalar(cls, m: int, value: Scalar) -> GroupRingElement:
        return cls((value,) + (0,) * (m - 1))

    @classmethod
    def gen(cls, m: int, power: int = 1, coeff: Scalar = 1) -> GroupRingElement:
        comps = [0] * m
        comps[power % m] = coeff
        return cls(comps)

    def component(self, r: int) -> Scalar:
        return self.components[r % self.order]

    def augmentation(self) -> Scalar:
        return _normalize_scalar(sum(self.components))

    def is_zero(self) -> bool:
        return not any(self.components)

    def _coerce(self, other: object) -> GroupRingElement | None:
        if isinstance(other, GroupRingElement):
            if other.order != self.order:
                raise RingMismatchError(
                    f"group rings of order {self.order} and {other.order}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return GroupRingElement.scalar(self.order, other)
        return None

    def __add__(self, other: object) -> GroupRingElement:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GroupRingElement([x + y for x, y in zip(self.components, o.components)])

    __radd__ = __add__

    def __neg__(self) -> GroupRingElement:
        return GroupRingElement([-x for x in self.components])

    def __sub__(self, other: object) -> GroupRingElement:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GroupRingElement([x - y for x, y in zip(self.components, o.components)])

    def __rsub__(self, other: object) -> GroupRingElement:
        return (-self) + other

    def __mul__(self, other: object) -> GroupRingElement:
        if isinstance(other, (int, Fraction)):
            return GroupRingElement([x * other for x in self.components])
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        m = self.order
        out = [0] * m
        for i, x in enumerate(self.components):
            if not x:
                continue
            for j, y in enumerate(o.components):
                if y:
                    out[(i + j) % m] += x * y
        return GroupRingElement(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> GroupRingElement:
        if e < 0:
            return group_ring_inverse(self) ** (-e)
        result = GroupRingElement.scalar(self.order, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, GroupRingElement):
            return self.components == other.components
        if isinstance(other, (int, Fraction)):
            return self.components == GroupRingElement.scalar(self.order, other).components
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("GR", self.components))

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self) -> str:
        return f"GroupRingElement({list(self.components)!r})"

    def __str__(self) -> str:
        terms = []
        for j, c in enumerate(self.components):
            if not c:
                continue
            if j == 0:
                terms.append(str(c))
            else:
                mon = "g" if j == 1 else f"g^{j}"
                terms.append(mon if c == 1 else f"{c}*{mon}")
        return " + ".join(terms) if terms else "0"


def group_ring_inverse(x: GroupRingElement, base: "Ring | None" = None) -> GroupRingElement:
    """Inverse of ``x`` by solving the circulant system exactly.

    Over ``ZZ`` the inverse must also have integer components.
    """
    m = x.order
    # Multiplication by x is the circulant matrix M[i][j] = x[(i - j) % m];
    # solve M y = e_0.
    rows = [[Fraction(x.components[(i - j) % m]) for j in range(m)] + [Fraction(int(i == 0))]
            for i in range(m)]
    for col in range(m):
        pivot = next((r for r in range(col, m) if rows[r][col] != 0), None)
        if pivot is None:
            raise NotInvertibleError("not invertible in this ring")
        rows[col], rows[pivot] = rows[pivot], rows[col]
        inv = 1 / rows[col][col]
        rows[col] = [v * inv for v in rows[col]]
        for r in range(m):
            if r != col and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[col])]
    y = [rows[i][m] for i in range(m)]
    if base is ZZ:
        if any(v.denominator != 1 for v in y):
            raise NotInvertibleError("not invertible in this ring")
        return GroupRingElement([v.numerator for v in y])
    return GroupRingElement(y)


# ---------------------------------------------------------------------------
# Q(zeta_5)
# ---------------------------------------------------------------------------


class CyclotomicQ5:
    """``a + b*z + c*z^2 + d*z^3`` with ``1 + z + z^2 + z^3 + z^4 = 0``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[Scalar]) -> None:
        vals = [Fraction(c) for c in coeffs]
        if len(vals) > 5:
            raise ValueError("at most five powers of zeta are accepted")
        vals += [Fraction(0)] * (5 - len(vals))
        # z^4 = -(1 + z + z^2 + z^3)
        top = vals[4]
        self.coeffs: tuple[Fraction, ...] = tuple(v - top for v in vals[:4])

    @classmethod
    def from_cyclic(cls, vec: Sequence[Scalar]) -> CyclotomicQ5:
        """Reduce a vector indexed by powers of zeta modulo 5."""
        acc = [Fraction(0)] * 5
        for j, c in enumerate(vec):
            acc[j % 5] += c
        return cls(acc)

    @classmethod
    def zeta(cls, power: int = 1) -> CyclotomicQ5:
        vec = [0] * 5
        vec[power % 5] = 1
        return cls(vec)

    def _vec5(self) -> list[Fraction]:
        return list(self.coeffs) + [Fraction(0)]

    def _coerce(self, other: object) -> CyclotomicQ5 | None:
        if isinstance(other, CyclotomicQ5):
            return other
        if isinstance(other, (int, Fraction)):
            return CyclotomicQ5([other])
        return None

    def __add__(self, other: object) -> CyclotomicQ5:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CyclotomicQ5([x + y for x, y in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self) -> CyclotomicQ5:
        return CyclotomicQ5([-x for x in self.coeffs])

    def __sub__(self, other: object) -> CyclotomicQ5:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> CyclotomicQ5:
        return (-self) + other

    def __mul__(self, other: object) -> CyclotomicQ5:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = [Fraction(0)] * 5
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(o.coeffs):
                    if y:
                        out[(i + j) % 5] += x * y
        return CyclotomicQ5(out)

    __rmul__ = __mul__

    def conjugate(self, k: int) -> CyclotomicQ5:
        """Galois image under ``zeta -> zeta**k`` (k prime to 5)."""
        if k % 5 == 0:
            raise ValueError("k must be prime to 5")
        out = [Fraction(0)] * 5
        for j, c in enumerate(self.coeffs):
            out[(j * k) % 5] += c
        return CyclotomicQ5(out)

    def norm(self) -> Fraction:
        prod = self
        for k in (2, 3, 4):
            prod = prod * self.conjugate(k)
        if any(prod.coeffs[1:]):
            raise ArithmeticError("norm did not land in Q")
        return prod.coeffs[0]

    def inverse(self) -> CyclotomicQ5:
        if self.is_zero():
            raise NotInvertibleError("not invertible in this ring")
        others = self.conjugate(2) * self.conjugate(3) * self.conjugate(4)
        n = self.norm()
        return CyclotomicQ5([c / n for c in others.coeffs])

    def __truediv__(self, other: object) -> CyclotomicQ5:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other: object) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self) -> int:
        return hash(("Q5", self.coeffs))

    def __repr__(self) -> str:
        return f"CyclotomicQ5({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        names = ["", "z", "z^2", "z^3"]
        terms = []
        for c, name in zip(self.coeffs, names):
            if not c:
                continue
            if not name:
                terms.append(str(c))
            elif c == 1:
                terms.append(name)
            else:
                terms.append(f"{c}*{name}")
        return " + ".join(terms) if terms else "0"


def apply_character(x: GroupRingElement, j: int) -> CyclotomicQ5:
    """Evaluate ``x`` at ``g = zeta_5**j``."""
    if x.order != 5:
        raise RingMismatchError("characters are only provided for C5")
    vec = [Fraction(0)] * 5
    for r, c in enumerate(x.components):
        vec[(r * j) % 5] += c
    return CyclotomicQ5(vec)


def root_of_unity_filter(x: GroupRingElement, r: int) -> CyclotomicQ5:
    """``(1/5) * sum_j zeta**(-r*j) * apply_character(x, j)``.

    Equals the embedded component ``r`` of ``x``.
    """
    acc = CyclotomicQ5([0])
    for j in range(5):
        acc = acc + CyclotomicQ5.zeta(-r * j) * apply_character(x, j)
    return acc * Fraction(1, 5)


# ---------------------------------------------------------------------------
# Ring descriptors
# ---------------------------------------------------------------------------


class Ring:
    """Describes a coefficient ring; elements are plain Python objects."""

    name = "ring"
    zero: object
    one: object

    def coerce(self, x: object) -> object:
        raise NotImplementedError

    def is_zero(self, x: object) -> bool:
        return not x

    def is_unit(self, x: object) -> bool:
        raise NotImplementedError

    def inverse(self, x: object) -> object:
        raise NotImplementedError

    def __repr__(self) -> str:
        return self.name


class IntegerRing(Ring):
    name = "ZZ"
    zero = 0
    one = 1

    def coerce(self, x: object) -> int:
        if isinstance(x, bool):
            return int(x)
        if isinstance(x, int):
            return x
        if isinstance(x, Fraction) and x.denominator == 1:
            return x.numerator
        raise RingMismatchError(f"{x!r} is not an integer")

    def is_unit(self, x: object) -> bool:
        return x in (1, -1)

    def inverse(self, x: object) -> int:
        if x not in (1, -1):
            raise NotInvertibleError("not invertible in this ring")
        return x  # type: ignore[return-value]


class RationalField(Ring):
    name = "QQ"
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, x: object) -> Fraction:
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        raise RingMismatchError(f"{x!r} is not rational")

    def is_unit(self, x: object) -> bool:
        return x != 0

    def inverse(self, x: object) -> Fraction:
        if x == 0:
            raise NotInvertibleError("not invertible in this ring")
        return 1 / Fraction(x)  # type: ignore[arg-type]


ZZ = IntegerRing()
QQ = RationalField()


@dataclass(frozen=True, eq=True)
class GroupRing(Ring):
    """``base[C_m]``."""

    m: int
    base: Ring = ZZ

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError("group order must be positive")
        if self.base not in (ZZ, QQ):
            raise ValueError("group ring base must be ZZ or QQ")

    @property
    def name(self) -> str:  # type: ignore[override]
        return f"{self.base.name}[C{self.m}]"

    @property
    def zero(self) -> GroupRingElement:  # type: ignore[override]
        return GroupRingElement.scalar(self.m, 0)

    @property
    def one(self) -> GroupRingElement:  # type: ignore[override]
        return GroupRingElement.scalar(self.m, 1)

    def gen(self, power: int = 1) -> GroupRingElement:
        return GroupRingElement.gen(self.m, power)

    def coerce(self, x: object) -> GroupRingElement:
        if isinstance(x, GroupRingElement):
            if x.order != self.m:
                raise RingMismatchError(f"element of C{x.order} given to {self.name}")
            comps = [self.base.coerce(c) for c in x.components]
            return GroupRingElement(comps)
        return GroupRingElement.scalar(self.m, self.base.coerce(x))

    def is_zero(self, x: object) -> bool:
        return not x

    def is_unit(self, x: object) -> bool:
        try:
            group_ring_inverse(x, self.base)  # type: ignore[arg-type]
        except NotInvertibleError:
            return False
        return True

    def inverse(self, x: object) -> GroupRingElement:
        return group_ring_inverse(x, self.base)  # type: ignore[arg-type]

    def __repr__(self) -> str:
        return self.name

    def __hash__(self) -> int:
        return hash(("GroupRing", self.m, self.base.name))


class CyclotomicField5(Ring):
    name = "Q(zeta5)"

    @property
    def zero(self) -> CyclotomicQ5:  # type: ignore[override]
        return CyclotomicQ5([0])

    @property
    def one(self) -> CyclotomicQ5:  # type: ignore[override]
        return CyclotomicQ5([1])

    def coerce(self, x: object) -> CyclotomicQ5:
        if isinstance(x, CyclotomicQ5):
            return x
        if isinstance(x, (int, Fraction)):
            return CyclotomicQ5([x])
        raise RingMismatchError(f"{x!r} is not in Q(zeta5)")

    def is_unit(self, x: object) -> bool:
        return not self.coerce(x).is_zero()

    def inverse(self, x: object) -> CyclotomicQ5:
        return self.coerce(x).inverse()


CYCLOTOMIC5 = CyclotomicField5()


# Ring morphisms used by series.s_map_ring -----------------------------------

Morphism = Callable[[object], object]


def integer_to_rational(x: object) -> Fraction:
    return Fraction(x)  # type: ignore[arg-type]


def scalar_to_group_ring(m: int) -> Morphism:
    return lambda x: GroupRingElement.scalar(m, x)  # type: ignore[arg-type]


def group_ring_to_rational(x: object) -> GroupRingElement:
    return GroupRingElement([Fraction(c) for c in x.components])  # type: ignore[attr-defined]


def character(j: int) -> Morphism:
    return lambda x: apply_character(x, j)  # type: ignore[arg-type]


def augmentation(x: object) -> Scalar:
    return x.augmentation()  # type: ignore[attr-defined]


def rational_to_cyclotomic(x: object) -> CyclotomicQ5:
    return CyclotomicQ5([x])  # type: ignore[list-item]


def _normalize_scalar(c: object) -> Scalar:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return int(c)
    # gmpy2 integers and similar
    return int(c)  # type: ignore[call-overload]


def common_denominator(values: Sequence[Scalar]) -> int:
    den = 1
    for v in values:
        if isinstance(v, Fraction) and v.denominator != 1:
            den = lcm(den, v.denominator)
    return den
