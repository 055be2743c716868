"""Truncated power series over a commutative ring.

A :class:`TruncatedSeries` carries its own truncation order ``N`` and stores
``c_0, ..., c_N``; all arithmetic is exact modulo ``t^(N+1)``.  Combining two
series of different orders truncates to the smaller one.

Coefficient rings are described by small ring handles (:class:`IntegerRing`,
:class:`GwRing`).  The coefficients themselves only need ``+``, ``-``, ``*``
and equality, which both Python ints and :class:`~gwhilb.gw.GwElement`
provide; no division is ever used.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, List, Mapping, Sequence, Union

from .errors import GwError
from .gw import FieldModel, GwElement


@dataclass(frozen=True)
class IntegerRing:
    name: str = "Z"

    def zero(self) -> int:
        return 0

    def one(self) -> int:
        return 1

    def from_int(self, n: int) -> int:
        return n

    def eq(self, a, b) -> bool:
        return a == b

    def contains(self, a) -> bool:
        return isinstance(a, int) and not isinstance(a, bool)

    def text(self, a) -> str:
        return str(a)

    def to_json(self, a):
        return a

    def convolve(self, a: Sequence[int], b: Sequence[int], n: int) -> List[int]:
        nz_b = [(j, y) for j, y in enumerate(b[: n + 1]) if y]
        out = [0] * (n + 1)
        for i, x in enumerate(a[: n + 1]):
            if x:
                for j, y in nz_b:
                    if i + j > n:
                        break
                    out[i + j] += x * y
        return out


@dataclass(frozen=True)
class GwRing:
    field: FieldModel

    @property
    def name(self) -> str:
        return f"GW({self.field.name})"

    def zero(self) -> GwElement:
        return GwElement.zero(self.field)

    def one(self) -> GwElement:
        return GwElement.one(self.field)

    def from_int(self, n: int) -> GwElement:
        return GwElement.from_int(self.field, n)

    def eq(self, a, b) -> bool:
        return a == b

    def contains(self, a) -> bool:
        return isinstance(a, GwElement) and (a.field is self.field or a.field == self.field)

    def text(self, a) -> str:
        return f"({a.text()})" if len(a.terms) > 1 else a.text()

    def to_json(self, a):
        return a.to_json()

    def convolve(self, a: Sequence[GwElement], b: Sequence[GwElement], n: int) -> List[GwElement]:
        # accumulate each output coefficient in one dict; building a
        # GwElement per partial product dominates the run time otherwise
        mul = self.field.mul_classes
        nz_b = [(j, y._terms) for j, y in enumerate(b[: n + 1]) if y._terms]
        acc: List[dict] = [{} for _ in range(n + 1)]
        for i, x in enumerate(a[: n + 1]):
            xt = x._terms
            if not xt:
                continue
            for j, yt in nz_b:
                if i + j > n:
                    break
                d = acc[i + j]
                for ka, ma in xt.items():
                    for kb, mb in yt.items():
                        k = mul(ka, kb)
                        d[k] = d.get(k, 0) + ma * mb
        return [GwElement._raw(self.field, d) for d in acc]


ZZ = IntegerRing()
Ring = Union[IntegerRing, GwRing]


class TruncatedSeries:
    """``c_0 + c_1 t + ... + c_N t^N + O(t^(N+1))`` over ``ring``."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: Ring, coeffs: Iterable, order: int = None):
        cs = list(coeffs)
        if order is not None:
            if order < 0:
                raise GwError("order must be non-negative")
            cs = cs[: order + 1] + [ring.zero()] * (order + 1 - len(cs))
        if not cs:
            raise GwError("a truncated series needs at least c_0")
        for c in cs:
            if not ring.contains(c):
                raise GwError(f"coefficient {c!r} is not in {ring.name}")
        self.ring = ring
        self.coeffs = tuple(cs)

    @classmethod
    def one(cls, ring: Ring, order: int) -> "TruncatedSeries":
        return cls(ring, [ring.one()], order)

    @classmethod
    def from_ints(cls, ring: Ring, values: Sequence[int], order: int = None) -> "TruncatedSeries":
        return cls(ring, [ring.from_int(v) for v in values], order)

    @classmethod
    def monomial(cls, ring: Ring, coeff, degree: int, order: int) -> "TruncatedSeries":
        """``1 + coeff * t^degree`` truncated at ``order``."""
        cs = [ring.one()] + [ring.zero()] * order
        if degree <= order:
            cs[degree] = cs[degree] + coeff
        return cls(ring, cs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int):
        return self.coeffs[n]

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise GwError(f"cannot raise precision from {self.order} to {order}")
        return TruncatedSeries(self.ring, self.coeffs[: order + 1])

    def _check(self, other: "TruncatedSeries") -> int:
        if not isinstance(other, TruncatedSeries):
            raise TypeError(f"expected a TruncatedSeries, got {type(other).__name__}")
        if other.ring != self.ring:
            raise GwError(f"ring mismatch: {self.ring.name} vs {other.ring.name}")
        return min(self.order, other.order)

    def __add__(self, other):
        n = self._check(other)
        return TruncatedSeries(self.ring, [self.coeffs[i] + other.coeffs[i] for i in range(n + 1)])

    def __neg__(self):
        return TruncatedSeries(self.ring, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries(self.ring, [c * other for c in self.coeffs])
        n = self._check(other)
        return TruncatedSeries(self.ring, self.ring.convolve(self.coeffs, other.coeffs, n))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        n = self._check(other)
        return all(self.ring.eq(self.coeffs[i], other.coeffs[i]) for i in range(n + 1))

    __hash__ = None

    def inverse(self) -> "TruncatedSeries":
        return inverse(self)

    def substitute_power(self, i: int) -> "TruncatedSeries":
        return substitute_power(self, i)

    def map(self, fn: Callable, ring: Ring) -> "TruncatedSeries":
        """Apply a coefficientwise ring map (e.g. rank) into ``ring``."""
        return TruncatedSeries(ring, [fn(c) for c in self.coeffs])

    def is_one_plus_t(self) -> bool:
        return self.ring.eq(self.coeffs[0], self.ring.one())

    def text(self) -> str:
        terms = []
        for n, c in enumerate(self.coeffs):
            if _is_structural_zero(c):
                continue
            body = self.ring.text(c)
            if n == 0:
                terms.append(body)
            elif n == 1:
                terms.append(f"{body}*t")
            else:
                terms.append(f"{body}*t^{n}")
        terms.append(f"O(t^{self.order + 1})")
        return " + ".join(terms)

    __str__ = text

    def __repr__(self):
        return f"TruncatedSeries[{self.ring.name}]({self.text()})"

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [self.ring.to_json(c) for c in self.coeffs]}


def _is_structural_zero(x) -> bool:
    if isinstance(x, GwElement):
        return not x.terms
    return x == 0


def inverse(a: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse of a series with constant term 1."""
    ring = a.ring
    if not ring.eq(a.coeffs[0], ring.one()):
        raise GwError("inverse needs constant term 1")
    b = [ring.one()]
    for n in range(1, a.order + 1):
        acc = ring.zero()
        for i in range(1, n + 1):
            if not _is_structural_zero(a.coeffs[i]):
                acc = acc + a.coeffs[i] * b[n - i]
        b.append(-acc)
    return TruncatedSeries(ring, b)


def substitute_power(a: TruncatedSeries, i: int) -> TruncatedSeries:
    """``A(t) -> A(t^i)`` at the same truncation order."""
    if i < 1:
        raise GwError("substitute_power needs i >= 1")
    ring = a.ring
    out = [ring.zero()] * (a.order + 1)
    for n, c in enumerate(a.coeffs):
        if n * i > a.order:
            break
        out[n * i] = c
    return TruncatedSeries(ring, out)


def product_of_family(
    factors: Union[Callable[[int], TruncatedSeries], Mapping[int, TruncatedSeries]],
    order: int,
    ring: Ring = None,
) -> TruncatedSeries:
    """``prod_{n>=1} F_n`` to ``order``, where ``F_n`` lies in ``1 + t^n R[[t]]``.

    Only ``n <= order`` can contribute.  ``factors`` is a callable ``n -> F_n``
    or a mapping (missing keys are 1).  ``ring`` is required only when the
    family is empty.
    """
    get = factors.get if isinstance(factors, Mapping) else factors
    result = None
    for n in range(1, order + 1):
        f = get(n)
        if f is None:
            continue
        if f.order < order:
            raise GwError(f"factor {n} has order {f.order} < {order}")
        f = f.truncate(order)
        fr = f.ring
        if not fr.eq(f.coeffs[0], fr.one()) or any(
            not _is_structural_zero(c) and not fr.eq(c, fr.zero()) for c in f.coeffs[1:n]
        ):
            raise GwError(f"factor {n} is not congruent to 1 mod t^{n}")
        result = f if result is None else result * f
    if result is None:
        if ring is None:
            raise GwError("empty family needs an explicit ring")
        return TruncatedSeries.one(ring, order)
    return result
