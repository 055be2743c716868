"""Grothendieck-Witt rings of a few concrete fields.

Elements are virtual symmetric bilinear forms, stored as integer combinations
of rank one forms ``<a>`` indexed by square classes.  Four field models are
supported:

``cclosed``
    quadratically closed (every unit is a square); GW is Z via rank.
``rclosed``
    real closed; square classes are the signs, GW embeds in Z x Z via
    (rank, signature).
``fq:<q>``
    the finite field with q elements, q odd.  The square classes are 1 and a
    non-square ``u``; the relation ``2<u> = 2<1>`` is used to keep the
    multiplicity of ``<u>`` in {0, 1}.
``q``
    the rationals; square classes are squarefree integers and equality is
    decided by Hasse-Minkowski.

The discriminant is the plain determinant class, i.e. the product of the
diagonal entries.  No ``(-1)^(n(n-1)/2)`` twist is applied.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, Mapping, Optional, Tuple, Union

from .errors import FieldMismatchError, GwError, InvalidClassError

QUADRATICALLY_CLOSED = "cclosed"
REAL_CLOSED = "rclosed"
FINITE = "finite"
RATIONALS = "rationals"

INF = "inf"

# Canonical keys for square classes are plain ints.  For the finite model the
# key is the value of the quadratic character: 1 for squares, -1 for u.
_NONSQUARE = -1


def _factor_prime_power(q: int) -> Optional[Tuple[int, int]]:
    if q < 2:
        return None
    p = 2
    while p * p <= q:
        if q % p == 0:
            break
        p += 1
    else:
        return q, 1
    k = 0
    while q % p == 0:
        q //= p
        k += 1
    return (p, k) if q == 1 else None


def _is_prime(n: int) -> bool:
    f = _factor_prime_power(n)
    return f is not None and f[1] == 1


@lru_cache(maxsize=4096)
def squarefree_part(a: int) -> int:
    """Return the squarefree integer in the same rational square class as ``a``."""
    if a == 0:
        raise InvalidClassError("0 is not a unit")
    sign = -1 if a < 0 else 1
    a = abs(a)
    out = 1
    d = 2
    while d * d <= a:
        e = 0
        while a % d == 0:
            a //= d
            e += 1
        if e % 2:
            out *= d
        d += 1
    return sign * out * a


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a|p) for an odd prime p; 0 when p divides a."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


@dataclass(frozen=True)
class FieldModel:
    kind: str
    q: Optional[int] = None
    characteristic: int = 0

    def __post_init__(self):
        if self.kind not in (QUADRATICALLY_CLOSED, REAL_CLOSED, FINITE, RATIONALS):
            raise GwError(f"unknown field kind {self.kind!r}")
        if self.characteristic == 2:
            raise GwError("characteristic 2 is excluded")
        if self.characteristic and not _is_prime(self.characteristic):
            raise GwError(f"characteristic {self.characteristic} is not prime")
        if self.kind == FINITE:
            f = _factor_prime_power(self.q or 0)
            if f is None or f[0] == 2:
                raise GwError(f"fq:{self.q} needs an odd prime power")
            if self.characteristic != f[0]:
                object.__setattr__(self, "characteristic", f[0])
        elif self.q is not None:
            raise GwError("q is only meaningful for finite fields")
        if self.kind in (REAL_CLOSED, RATIONALS) and self.characteristic:
            raise GwError("ordered fields have characteristic 0")

    @classmethod
    def quadratically_closed(cls, characteristic: int = 0) -> "FieldModel":
        return cls(QUADRATICALLY_CLOSED, characteristic=characteristic)

    @classmethod
    def real_closed(cls) -> "FieldModel":
        return cls(REAL_CLOSED)

    @classmethod
    def finite(cls, q: int) -> "FieldModel":
        return cls(FINITE, q=q)

    @classmethod
    def rationals(cls) -> "FieldModel":
        return cls(RATIONALS)

    @classmethod
    def parse(cls, text: str) -> "FieldModel":
        """Parse the command-line spelling ``cclosed|rclosed|fq:<q>|q``."""
        t = text.strip().lower()
        if t == "cclosed":
            return cls.quadratically_closed()
        if t == "rclosed":
            return cls.real_closed()
        if t == "q":
            return cls.rationals()
        if t.startswith("fq:"):
            try:
                q = int(t[3:])
            except ValueError:
                raise GwError(f"bad field spec {text!r}") from None
            return cls.finite(q)
        raise GwError(f"bad field spec {text!r}; expected cclosed, rclosed, fq:<q> or q")

    @property
    def name(self) -> str:
        if self.kind == FINITE:
            return f"fq:{self.q}"
        if self.kind == RATIONALS:
            return "q"
        return self.kind

    def orderings(self) -> int:
        return 1 if self.kind in (REAL_CLOSED, RATIONALS) else 0

    @property
    def torsion_free(self) -> bool:
        return self.kind in (QUADRATICALLY_CLOSED, REAL_CLOSED)

    # -- square classes -------------------------------------------------

    def square_class(self, a: Union[int, str]) -> int:
        """Canonical key of the class of ``a``.

        ``a`` is an integer read as an element of the field; for finite fields
        the string ``"u"`` names the non-square class.
        """
        if isinstance(a, str):
            if self.kind == FINITE and a.strip().lower() == "u":
                return _NONSQUARE
            try:
                a = int(a)
            except ValueError:
                raise InvalidClassError(f"bad square class {a!r}") from None
        if isinstance(a, bool) or not isinstance(a, int):
            raise InvalidClassError(f"bad square class {a!r}")
        if a == 0:
            raise InvalidClassError("0 is not a unit")
        p = self.characteristic
        if p and a % p == 0:
            raise InvalidClassError(f"{a} is zero in characteristic {p}")
        if self.kind == QUADRATICALLY_CLOSED:
            return 1
        if self.kind == REAL_CLOSED:
            return 1 if a > 0 else -1
        if self.kind == RATIONALS:
            return squarefree_part(a)
        # F_p is inside the squares of F_q exactly when [F_q : F_p] is even.
        _, k = _factor_prime_power(self.q)
        if k % 2 == 0:
            return 1
        return legendre(a, p)

    def mul_classes(self, a: int, b: int) -> int:
        if self.kind == RATIONALS:
            return squarefree_part(a * b)
        return a * b

    def label(self, key: int) -> str:
        if self.kind == FINITE:
            return "1" if key == 1 else "u"
        return str(key)

    def class_sign(self, key: int) -> int:
        if self.kind not in (REAL_CLOSED, RATIONALS):
            raise GwError(f"{self.name} has no ordering")
        return 1 if key > 0 else -1

    def is_square(self, a: Union[int, str]) -> bool:
        return self.square_class(a) == 1

    def __str__(self) -> str:
        return self.name


def _sort_key(key: int):
    return (abs(key) != 1, abs(key), -key)


class GwElement:
    """An element of GW(k) for one of the supported field models.

    Arithmetic uses the operators; integers are coerced to multiples of
    ``<1>``.  ``==`` is the model's decision procedure (:func:`is_equal`),
    not structural comparison, so ``<1>+<1> == <2>+<2>`` over the rationals.
    """

    __slots__ = ("field", "_terms", "_hash")

    def __init__(self, field: FieldModel, terms: Mapping[int, int] | Iterable = ()):
        self.field = field
        self._terms = _normalize(field, terms)
        self._hash = None

    @classmethod
    def _raw(cls, field: FieldModel, terms: Dict[int, int]) -> "GwElement":
        obj = cls.__new__(cls)
        obj.field = field
        obj._terms = _normalize(field, terms)
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, field: FieldModel) -> "GwElement":
        return cls._raw(field, {})

    @classmethod
    def one(cls, field: FieldModel) -> "GwElement":
        return cls._raw(field, {1: 1})

    @classmethod
    def from_int(cls, field: FieldModel, n: int) -> "GwElement":
        return cls._raw(field, {1: n})

    @classmethod
    def from_rank_signature(cls, field: FieldModel, rank: int, signature: int = None) -> "GwElement":
        """The element ``a<1> + b<-1>`` with the given rank and signature.

        Over a quadratically closed field the signature is ignored.
        """
        if field.kind == QUADRATICALLY_CLOSED:
            return cls._raw(field, {1: rank})
        if signature is None:
            raise GwError("signature required")
        if (rank - signature) % 2:
            from .errors import ParityError

            raise ParityError(f"rank {rank} and signature {signature} differ in parity")
        minus = field.square_class(-1)
        return cls._raw(field, {1: (rank + signature) // 2}) + cls._raw(
            field, {minus: (rank - signature) // 2}
        )

    @property
    def terms(self) -> Dict[int, int]:
        """Normal-form multiplicities keyed by canonical square class."""
        return dict(self._terms)

    # -- ring operations ------------------------------------------------

    def _coerce(self, other) -> "GwElement":
        if isinstance(other, GwElement):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatchError(f"{self.field.name} vs {other.field.name}")
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return GwElement._raw(self.field, {1: other})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, m in other._terms.items():
            out[k] = out.get(k, 0) + m
        return GwElement._raw(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return GwElement._raw(self.field, {k: -m for k, m in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if type(other) is int:
            return GwElement._raw(self.field, {k: m * other for k, m in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: Dict[int, int] = {}
        mul = self.field.mul_classes
        for a, m in self._terms.items():
            for b, n in other._terms.items():
                c = mul(a, b)
                out[c] = out.get(c, 0) + m * n
        return GwElement._raw(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise GwError("only non-negative integer powers exist in GW(k)")
        out = GwElement.one(self.field)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def scale(self, n: int) -> "GwElement":
        return self * n

    # -- invariants -----------------------------------------------------

    def rank(self) -> int:
        return sum(self._terms.values())

    def signature(self) -> int:
        if not self.field.orderings():
            raise GwError(f"signature undefined: {self.field.name} has no ordering")
        sign = self.field.class_sign
        return sum(sign(k) * m for k, m in self._terms.items())

    def discriminant(self) -> int:
        """Canonical key of the determinant class (no sign twist)."""
        d = 1
        for k, m in self._terms.items():
            if m % 2:
                d = self.field.mul_classes(d, k)
        return d

    def discriminant_label(self) -> str:
        return self.field.label(self.discriminant())

    def is_zero(self) -> bool:
        return is_equal(self, GwElement.zero(self.field))

    def is_torsion(self) -> bool:
        return is_torsion(self)

    # -- comparison and rendering --------------------------------------

    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            other = GwElement.from_int(self.field, other)
        if not isinstance(other, GwElement):
            return NotImplemented
        return is_equal(self, other)

    def __hash__(self):
        if self._hash is None:
            f = self.field
            sig = self.signature() if f.orderings() else None
            disc = self.discriminant() if f.kind in (FINITE, RATIONALS) else None
            self._hash = hash((f, self.rank(), sig, disc))
        return self._hash

    def _sorted(self):
        return sorted(self._terms.items(), key=lambda km: _sort_key(km[0]))

    def __bool__(self):
        return not self.is_zero()

    def text(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for i, (k, m) in enumerate(self._sorted()):
            body = f"{abs(m)}<{self.field.label(k)}>"
            if i == 0:
                parts.append(body if m > 0 else "-" + body)
            else:
                parts.append(("+ " if m > 0 else "- ") + body)
        return " ".join(parts)

    __str__ = text

    def __repr__(self):
        return f"GwElement({self.field.name}: {self.text()})"

    def to_json(self) -> dict:
        f = self.field
        return {
            "field": f.name,
            "terms": [{"class": f.label(k), "mult": m} for k, m in self._sorted()],
            "rank": self.rank(),
            "signature": self.signature() if f.orderings() else None,
            "discriminant": f.label(self.discriminant()),
        }


def _normalize(field: FieldModel, terms) -> Dict[int, int]:
    if type(terms) is dict:
        acc = terms
    else:
        acc = {}
        for k, m in (terms.items() if isinstance(terms, Mapping) else terms):
            acc[k] = acc.get(k, 0) + m
    if field.kind == FINITE and _NONSQUARE in acc:
        # 2<u> = 2<1>: binary forms over F_q are classified by discriminant.
        m = acc[_NONSQUARE]
        r = m % 2
        acc[_NONSQUARE] = r
        acc[1] = acc.get(1, 0) + (m - r)
    return {k: m for k, m in acc.items() if m}


# -- constructors ---------------------------------------------------------


def form(field: FieldModel, a: Union[int, str]) -> GwElement:
    """The rank one form ``<a>``."""
    return GwElement._raw(field, {field.square_class(a): 1})


def n_epsilon(field: FieldModel, n: int) -> GwElement:
    """``<1> + <-1> + <1> + ...`` with n summands; ``0_eps = 0``."""
    if n < 0:
        raise GwError("n_epsilon needs n >= 0")
    minus = field.square_class(-1)
    return GwElement._raw(field, {1: (n + 1) // 2}) + GwElement._raw(field, {minus: n // 2})


def hyperbolic(field: FieldModel) -> GwElement:
    return form(field, 1) + form(field, -1)


def trace_form_quadratic(field: FieldModel, a: Union[int, str]) -> GwElement:
    """Trace form of k(sqrt a)/k, which is ``<2> + <2a>``.

    Raises if ``a`` is already a square: then Spec k(sqrt a) is two rational
    points and the caller should use ``2<1>``.
    """
    key = field.square_class(a)
    if key == 1:
        raise InvalidClassError(f"{a} is a square in {field.name}; k(sqrt a) is not a field")
    two = field.square_class(2)
    return GwElement._raw(field, {two: 1, field.mul_classes(two, key): 1})


# -- decision procedures --------------------------------------------------


def hilbert_symbol(a: int, b: int, p) -> int:
    """Hilbert symbol (a, b)_p over Q_p, or over R when ``p`` is ``"inf"``."""
    if a == 0 or b == 0:
        raise GwError("Hilbert symbol needs nonzero arguments")
    if p == INF or p == math.inf:
        return -1 if (a < 0 and b < 0) else 1
    if not isinstance(p, int) or not _is_prime(p):
        raise GwError(f"{p!r} is not a prime or 'inf'")
    alpha, u = _split_valuation(a, p)
    beta, v = _split_valuation(b, p)
    if p == 2:
        eps = lambda x: ((x - 1) // 2) % 2
        omega = lambda x: ((x * x - 1) // 8) % 2
        e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)
        return -1 if e % 2 else 1
    s = (-1) ** (alpha * beta * ((p - 1) // 2))
    if beta % 2:
        s *= legendre(u, p)
    if alpha % 2:
        s *= legendre(v, p)
    return s


def _split_valuation(a: int, p: int) -> Tuple[int, int]:
    v = 0
    while a % p == 0:
        a //= p
        v += 1
    return v, a


def _hasse_witt(counts: Mapping[int, int], p) -> int:
    # prod_{i<j} (a_i, a_j)_p for the diagonal form with given multiplicities
    keys = list(counts)
    s = 1
    for i, a in enumerate(keys):
        m = counts[a]
        if (m * (m - 1) // 2) % 2 and hilbert_symbol(a, a, p) == -1:
            s = -s
        for b in keys[i + 1:]:
            if (m * counts[b]) % 2 and hilbert_symbol(a, b, p) == -1:
                s = -s
    return s


def _primes_dividing(n: int) -> set:
    out = set()
    n = abs(n)
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1
    if n > 1:
        out.add(n)
    return out


def _same_rational_form(pos: Mapping[int, int], neg: Mapping[int, int]) -> bool:
    # pos and neg are genuine diagonal forms; Hasse-Minkowski
    if sum(pos.values()) != sum(neg.values()):
        return False
    sig = lambda c: sum((1 if k > 0 else -1) * m for k, m in c.items())
    if sig(pos) != sig(neg):
        return False
    disc = lambda c: squarefree_part(math.prod(k for k, m in c.items() if m % 2) or 1)
    if disc(pos) != disc(neg):
        return False
    primes = {2}
    for k in list(pos) + list(neg):
        primes |= _primes_dividing(k)
    return all(_hasse_witt(pos, p) == _hasse_witt(neg, p) for p in sorted(primes))


def is_equal(a: GwElement, b: GwElement) -> bool:
    """Decide a = b in GW(k) using the complete invariants of each model."""
    if a.field != b.field:
        raise FieldMismatchError(f"{a.field.name} vs {b.field.name}")
    f = a.field
    if a.rank() != b.rank():
        return False
    if f.kind == QUADRATICALLY_CLOSED:
        return True
    if f.kind == REAL_CLOSED:
        return a.signature() == b.signature()
    if f.kind == FINITE:
        return a.discriminant() == b.discriminant()
    # a - b = P - N with P, N genuine forms; a = b iff P and N are isometric
    # (Witt cancellation).
    pos: Dict[int, int] = {}
    neg: Dict[int, int] = {}
    for k, m in (a - b)._terms.items():
        if m > 0:
            pos[k] = m
        else:
            neg[k] = -m
    return _same_rational_form(pos, neg)


def is_torsion(q: GwElement) -> bool:
    """Torsion test: rank zero and all signatures zero (Pfister)."""
    if q.rank() != 0:
        return False
    if q.field.orderings():
        return q.signature() == 0
    return True
