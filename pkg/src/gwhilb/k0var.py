"""Variety expressions and their compactly supported Euler characteristic.

A :class:`VarietyExpr` is a tree over constructor leaves (points, affine and
projective spaces, Grassmannians, ...) and ring operations (disjoint union,
product, formal difference) plus a few geometric constructions (bundles, blow
ups, symmetric powers).  It stands in for a class in K_0(Var_k); no normal
form for such classes is attempted.  :func:`eval_chi` maps a tree to GW(k)
by applying the standard computation rules bottom-up.

Symmetric powers are evaluated from rank and signature (:func:`sym_invariants`)
and so only over the quadratically closed and real closed models.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .errors import GwError, ParityError, UnsupportedFieldError
from .gw import QUADRATICALLY_CLOSED, REAL_CLOSED, FieldModel, GwElement, form, n_epsilon, trace_form_quadratic
from .partitions import partitions


class VarietyExpr:
    """Base class; ``+`` is disjoint union, ``*`` product, ``-`` formal difference."""

    def __add__(self, other):
        return DisjointUnion(self, _check_expr(other))

    def __sub__(self, other):
        return Difference(self, _check_expr(other))

    def __mul__(self, other):
        return Product(self, _check_expr(other))

    def __str__(self):
        from .parser import render

        return render(self)


def _check_expr(x):
    if not isinstance(x, VarietyExpr):
        raise TypeError(f"expected a VarietyExpr, got {type(x).__name__}")
    return x


def _nonneg(name, v):
    if isinstance(v, bool) or not isinstance(v, int) or v < 0:
        raise GwError(f"{name} must be a non-negative integer, got {v!r}")


# -- leaves ---------------------------------------------------------------


@dataclass(frozen=True, eq=True)
class Point(VarietyExpr):
    pass


@dataclass(frozen=True)
class Gm(VarietyExpr):
    pass


@dataclass(frozen=True)
class Lefschetz(VarietyExpr):
    """The class of the affine line, written ``L``."""


@dataclass(frozen=True)
class Affine(VarietyExpr):
    n: int

    def __post_init__(self):
        _nonneg("affine dimension", self.n)


@dataclass(frozen=True)
class Proj(VarietyExpr):
    n: int

    def __post_init__(self):
        _nonneg("projective dimension", self.n)


@dataclass(frozen=True)
class QuadExt(VarietyExpr):
    """Spec k(sqrt a), a degree two point."""

    a: int

    def __post_init__(self):
        if isinstance(self.a, bool) or not isinstance(self.a, int) or self.a == 0:
            raise GwError(f"quadext needs a nonzero integer, got {self.a!r}")


@dataclass(frozen=True)
class PuncturedAffine(VarietyExpr):
    """Affine n-space minus r distinct rational points."""

    n: int
    r: int

    def __post_init__(self):
        _nonneg("affine dimension", self.n)
        _nonneg("number of removed points", self.r)


@dataclass(frozen=True)
class Grassmannian(VarietyExpr):
    """r-planes in n-space."""

    r: int
    n: int

    def __post_init__(self):
        _nonneg("n", self.n)
        if isinstance(self.r, bool) or not isinstance(self.r, int) or not 1 <= self.r <= self.n:
            raise GwError(f"grassmannian needs 1 <= r <= n, got r={self.r!r}, n={self.n}")


@dataclass(frozen=True)
class HilbLocalA2(VarietyExpr):
    """The punctual Hilbert scheme of length m subschemes of A^2 at the origin."""

    m: int

    def __post_init__(self):
        _nonneg("length", self.m)


# -- nodes ----------------------------------------------------------------


@dataclass(frozen=True)
class DisjointUnion(VarietyExpr):
    left: VarietyExpr
    right: VarietyExpr


@dataclass(frozen=True)
class Product(VarietyExpr):
    left: VarietyExpr
    right: VarietyExpr


@dataclass(frozen=True)
class Difference(VarietyExpr):
    """Formal difference; containment is not checked."""

    left: VarietyExpr
    right: VarietyExpr


@dataclass(frozen=True)
class VectorBundle(VarietyExpr):
    rank: int
    base: VarietyExpr

    def __post_init__(self):
        _nonneg("bundle rank", self.rank)
        _check_expr(self.base)


@dataclass(frozen=True)
class ProjBundle(VarietyExpr):
    """Projectivisation of a rank ``rank`` vector bundle."""

    rank: int
    base: VarietyExpr

    def __post_init__(self):
        _nonneg("bundle rank", self.rank)
        _check_expr(self.base)


@dataclass(frozen=True)
class BlowUp(VarietyExpr):
    """Blow up of ``base`` along a codimension ``codim`` lci ``center``."""

    base: VarietyExpr
    center: VarietyExpr
    codim: int

    def __post_init__(self):
        _check_expr(self.base)
        _check_expr(self.center)
        if isinstance(self.codim, bool) or not isinstance(self.codim, int) or self.codim < 1:
            raise GwError(f"blow up codimension must be >= 1, got {self.codim!r}")


@dataclass(frozen=True)
class Sym(VarietyExpr):
    n: int
    base: VarietyExpr

    def __post_init__(self):
        _nonneg("symmetric power", self.n)
        _check_expr(self.base)


# -- symmetric power invariants ------------------------------------------


def _binom_rising(r: int, n: int) -> int:
    # binom(r + n - 1, n) via falling factorials; r may be negative
    num = 1
    for k in range(n):
        num *= r + k
    return num // math.factorial(n)


def sym_invariants(r: int, s: Optional[int], n: int) -> Tuple[int, Optional[int]]:
    """Rank and signature of ``chi^c(Sym^n X)`` from those of ``chi^c(X)``.

    The rank is ``binom(r+n-1, n)``.  The real points of Sym^n X are the
    disjoint union over ``a + 2b = n`` of Sym^a of the real points and Sym^b
    of the conjugate pairs, whose Euler characteristic is ``(r - s)/2``.
    Pass ``s=None`` to get the rank alone.
    """
    if n < 0:
        raise GwError("n must be non-negative")
    rank = _binom_rising(r, n)
    if s is None:
        return rank, None
    if (r - s) % 2:
        raise ParityError(f"rank {r} and signature {s} differ in parity")
    pairs = (r - s) // 2
    sig = sum(_binom_rising(s, n - 2 * b) * _binom_rising(pairs, b) for b in range(n // 2 + 1))
    return rank, sig


def conf_rank(r: int, m: int) -> int:
    """Euler characteristic of ordered m-point configurations: r(r-1)...(r-m+1)."""
    if m < 1:
        raise GwError("m must be >= 1")
    out = 1
    for k in range(m):
        out *= r - k
    return out


def sym_delta_strata_rank(r: int, n: int) -> Fraction:
    """``sum_{lambda |- n} conf_rank(r, l(lambda)) / |S_lambda|``."""
    if n == 0:
        return Fraction(1)
    return sum(
        (Fraction(conf_rank(r, lam.length), lam.automorphisms) for lam in partitions(n)),
        Fraction(0),
    )


def sym_delta_rank_check(r: int, n: int) -> bool:
    """Compare the partition-stratified count with ``binom(r+n-1, n)``."""
    total = sym_delta_strata_rank(r, n)
    return total.denominator == 1 and total == _binom_rising(r, n)


# -- evaluation -----------------------------------------------------------


def _require_sym_field(field: FieldModel):
    if field.kind not in (QUADRATICALLY_CLOSED, REAL_CLOSED):
        raise UnsupportedFieldError(field, "chi^c of a symmetric power")


def sym_chi(q: GwElement, n: int) -> GwElement:
    """``chi^c(Sym^n X)`` from ``q = chi^c(X)`` by rank/signature reconstruction."""
    f = q.field
    _require_sym_field(f)
    if f.kind == REAL_CLOSED:
        rank, sig = sym_invariants(q.rank(), q.signature(), n)
    else:
        rank, sig = sym_invariants(q.rank(), None, n)
    return GwElement.from_rank_signature(f, rank, sig)


def grassmannian_chi(field: FieldModel, r: int, n: int) -> GwElement:
    n_c = math.comb(n, r)
    # chi of the real Grassmannian vanishes when n is even and r odd.
    n_r = 0 if (n % 2 == 0 and r % 2 == 1) else math.comb(n // 2, r // 2)
    if field.kind == QUADRATICALLY_CLOSED:
        return GwElement.from_int(field, n_c)
    minus = form(field, -1)
    return GwElement.from_int(field, (n_c + n_r) // 2) + minus * ((n_c - n_r) // 2)


def local_hilb_chi(field: FieldModel, m: int) -> GwElement:
    """chi^c of the punctual Hilbert scheme: one cell L^(m - l) per partition."""
    minus = form(field, -1)
    out = GwElement.zero(field)
    for lam in partitions(m):
        out = out + minus ** (m - lam.length)
    return out


def eval_chi(x: VarietyExpr, field: FieldModel) -> GwElement:
    """Motivic Euler characteristic of ``x`` in GW(field)."""
    one = GwElement.one(field)
    minus = form(field, -1)
    if isinstance(x, Point):
        return one
    if isinstance(x, (Lefschetz,)):
        return minus
    if isinstance(x, Affine):
        return minus ** x.n
    if isinstance(x, Proj):
        return n_epsilon(field, x.n + 1)
    if isinstance(x, Gm):
        return minus - one
    if isinstance(x, PuncturedAffine):
        return minus ** x.n - x.r * one
    if isinstance(x, QuadExt):
        return trace_form_quadratic(field, x.a)
    if isinstance(x, Grassmannian):
        return grassmannian_chi(field, x.r, x.n)
    if isinstance(x, HilbLocalA2):
        return local_hilb_chi(field, x.m)
    if isinstance(x, DisjointUnion):
        return eval_chi(x.left, field) + eval_chi(x.right, field)
    if isinstance(x, Difference):
        return eval_chi(x.left, field) - eval_chi(x.right, field)
    if isinstance(x, Product):
        return eval_chi(x.left, field) * eval_chi(x.right, field)
    if isinstance(x, VectorBundle):
        return minus ** x.rank * eval_chi(x.base, field)
    if isinstance(x, ProjBundle):
        return n_epsilon(field, x.rank) * eval_chi(x.base, field)
    if isinstance(x, BlowUp):
        base = eval_chi(x.base, field)
        center = eval_chi(x.center, field)
        return base + minus * n_epsilon(field, x.codim - 1) * center
    if isinstance(x, Sym):
        _require_sym_field(field)
        return sym_chi(eval_chi(x.base, field), x.n)
    raise TypeError(f"not a variety expression: {x!r}")


# -- identity checks ------------------------------------------------------


def _entry(check, params, lhs, rhs):
    return {"check": check, "params": params, "ok": lhs == rhs, "lhs": lhs.text(), "rhs": rhs.text()}


def identity_checks(
    x: VarietyExpr,
    y: VarietyExpr,
    field: FieldModel,
    sym_max: int = 6,
    totaro_m: int = 4,
    totaro_n: int = 3,
) -> List[dict]:
    """Check three identities on chi^c; returns one record per instance.

    * Sym of a disjoint union is the convolution of the Sym powers.
    * Totaro: Sym^m(A^(n-1) x X) = L^(m(n-1)) Sym^m X.
    * chi^c(L)^2 = <1>.
    """
    out = []
    minus = form(field, -1)
    for n in range(sym_max + 1):
        lhs = eval_chi(Sym(n, x + y), field)
        rhs = GwElement.zero(field)
        for a in range(n + 1):
            rhs = rhs + eval_chi(Sym(a, x), field) * eval_chi(Sym(n - a, y), field)
        out.append(_entry("sym_of_union", {"n": n}, lhs, rhs))
    for m in range(1, totaro_m + 1):
        for n in range(1, totaro_n + 1):
            lhs = eval_chi(Sym(m, Affine(n - 1) * x), field)
            rhs = minus ** (m * (n - 1)) * eval_chi(Sym(m, x), field)
            out.append(_entry("totaro", {"m": m, "n": n}, lhs, rhs))
    lef = eval_chi(Lefschetz(), field)
    out.append(_entry("lefschetz_square", {}, lef * lef, GwElement.one(field)))
    return out


def kernel_inventory(field: FieldModel) -> List[VarietyExpr]:
    """Expressions whose chi^c vanishes over ``field``.

    Punctured even-dimensional affine spaces and balanced differences
    ``X + Y - Y'``; candidates that do not evaluate to 0 over ``field`` (or
    cannot be evaluated there) are dropped.
    """
    candidates: List[VarietyExpr] = [PuncturedAffine(2 * m, 1) for m in (1, 2, 3)]
    candidates += [
        Gm() + Point() - Lefschetz(),
        Proj(1) - Point() - Lefschetz(),
        Proj(2) - Affine(2) - Proj(1),
        Proj(3) - Proj(1) * Proj(1),
        Grassmannian(2, 4) - Proj(2) - Proj(2),
        BlowUp(Proj(2), Point(), 2) - Proj(1) * Proj(1),
        Sym(2, Proj(1)) - Proj(2),
        VectorBundle(2, Proj(1)) + Point() - (Proj(1) * Affine(2) + Point()),
        QuadExt(-1) - Proj(1),
        PuncturedAffine(2, 1) * Proj(3) + Gm() - (Gm() * Point()),
    ]
    out = []
    for c in candidates:
        try:
            if eval_chi(c, field).is_zero():
                out.append(c)
        except GwError:
            continue
    return out
