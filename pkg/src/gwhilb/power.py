"""Power structures from a seed ``r -> (1 - t)^(-r)``.

A seed fixes the series ``(1-t)^(-r)`` for every ring element ``r``.  Every
``A(t)`` in ``1 + t R[[t]]`` factors uniquely as ``prod_i (1 - t^i)^(-b_i)``
(:func:`euler_factorize`), and ``A(t)^m`` is then defined factorwise as
``prod_i (1 - t^i)^(-b_i m)``.  This is the only exponentiation code path;
there is no separate multinomial evaluation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, List, Sequence, Tuple

from .errors import GwError, UnsupportedFieldError
from .gw import QUADRATICALLY_CLOSED, REAL_CLOSED, FieldModel, GwElement
from .series import ZZ, GwRing, IntegerRing, TruncatedSeries, substitute_power


def rising_binomial(r: int, n: int) -> int:
    """``binom(r + n - 1, n)`` as a polynomial in r, valid for negative r too."""
    c = 1
    for k in range(1, n + 1):
        c = c * (r + k - 1) // k
    return c


@dataclass(frozen=True)
class PowerSeed:
    """The data ``r -> (1-t)^(-r)`` that determines a power structure."""

    ring: object
    base_fn: Callable = field(repr=False, compare=False)
    name: str = ""

    def base(self, r, order: int) -> TruncatedSeries:
        return self.base_fn(r, order)


@dataclass(frozen=True)
class EulerExponents:
    """Exponents with ``A(t) = prod_{i=1..N} (1 - t^i)^(-b_i) mod t^(N+1)``."""

    ring: object
    exponents: Tuple
    order: int

    def __getitem__(self, i: int):
        """1-based access: ``self[i]`` is ``b_i``."""
        return self.exponents[i - 1]

    def to_json(self):
        return [self.ring.to_json(b) for b in self.exponents]


# -- seeds ----------------------------------------------------------------


@lru_cache(maxsize=None)
def _int_base(r: int, order: int) -> TruncatedSeries:
    return TruncatedSeries(ZZ, [rising_binomial(r, n) for n in range(order + 1)])


def int_seed() -> PowerSeed:
    """The natural power structure on Z: ``(1-t)^(-r) = sum binom(r+n-1, n) t^n``."""
    return PowerSeed(ZZ, lambda r, order: _int_base(_as_int(r), order), "Z")


def _as_int(r) -> int:
    if isinstance(r, bool) or not isinstance(r, int):
        raise GwError(f"exponent {r!r} is not an integer")
    return r


@lru_cache(maxsize=None)
def _signature_base(r: int, s: int, order: int) -> Tuple[int, ...]:
    # Real points of Sym^n X split as Sym^a(X(R)) x Sym^b(conjugate pairs),
    # a + 2b = n, and the pairs have Euler characteristic (r - s)/2.
    h = (r - s) // 2
    real = _int_base(s, order)
    pairs = substitute_power(_int_base(h, order), 2)
    return (real * pairs).coeffs


@lru_cache(maxsize=None)
def _gw_base(f: FieldModel, r: int, s, order: int) -> TruncatedSeries:
    ring = GwRing(f)
    ranks = _int_base(r, order).coeffs
    if f.kind == QUADRATICALLY_CLOSED:
        return TruncatedSeries(ring, [GwElement.from_int(f, c) for c in ranks])
    sigs = _signature_base(r, s, order)
    return TruncatedSeries(
        ring, [GwElement.from_rank_signature(f, a, b) for a, b in zip(ranks, sigs)]
    )


def gw_seed(f: FieldModel) -> PowerSeed:
    """Power structure on GW(k) induced from varieties, for torsion-free models.

    For ``q`` of rank r and signature s the coefficient of ``t^n`` in
    ``(1-t)^(-q)`` has rank ``binom(r+n-1, n)`` and signature
    ``[t^n] (1-t)^(-s) (1-t^2)^(-(r-s)/2)``.  Over a quadratically closed
    field only the rank is present.
    """
    if f.kind not in (QUADRATICALLY_CLOSED, REAL_CLOSED):
        raise UnsupportedFieldError(f, "the induced power structure on GW")
    ring = GwRing(f)

    def base(q, order):
        if isinstance(q, int) and not isinstance(q, bool):
            q = GwElement.from_int(f, q)
        if not ring.contains(q):
            raise GwError(f"exponent {q!r} is not in {ring.name}")
        s = q.signature() if f.kind == REAL_CLOSED else None
        return _gw_base(f, q.rank(), s, order)

    return PowerSeed(ring, base, ring.name)


def default_seed(ring) -> PowerSeed:
    if isinstance(ring, IntegerRing):
        return int_seed()
    if isinstance(ring, GwRing):
        return gw_seed(ring.field)
    raise GwError(f"no default power structure on {ring!r}")


# -- factorisation and exponentiation -------------------------------------


def _lifted(seed: PowerSeed, r, i: int, order: int) -> TruncatedSeries:
    # (1 - t^i)^(-r) at the given order
    inner = seed.base(r, order // i)
    if i == 1:
        return inner
    ring = inner.ring
    out = [ring.zero()] * (order + 1)
    for n, c in enumerate(inner.coeffs):
        out[n * i] = c
    return TruncatedSeries(ring, out)


def _is_zero(x) -> bool:
    if isinstance(x, GwElement):
        return not x.terms
    return x == 0


def euler_factorize(a: TruncatedSeries, seed: PowerSeed = None) -> EulerExponents:
    """Exponents ``b_i`` with ``A = prod (1 - t^i)^(-b_i)`` to the order of A."""
    seed = seed or default_seed(a.ring)
    if a.ring != seed.ring:
        raise GwError(f"seed over {seed.ring.name} used on a series over {a.ring.name}")
    if not a.is_one_plus_t():
        raise GwError("euler_factorize needs constant term 1")
    n = a.order
    cur = a
    exps: List = []
    for i in range(1, n + 1):
        b = cur.coeffs[i]
        exps.append(b)
        if not _is_zero(b):
            cur = cur * _lifted(seed, -b, i, n)
    return EulerExponents(a.ring, tuple(exps), n)


def recompose(exps: EulerExponents, seed: PowerSeed = None, scale=None) -> TruncatedSeries:
    """``prod_i (1 - t^i)^(-b_i * scale)``; ``scale`` defaults to 1."""
    seed = seed or default_seed(exps.ring)
    n = exps.order
    out = TruncatedSeries.one(exps.ring, n)
    for i, b in enumerate(exps.exponents, start=1):
        e = b if scale is None else b * scale
        if not _is_zero(e):
            out = out * _lifted(seed, e, i, n)
    return out


def raise_to(a: TruncatedSeries, m, seed: PowerSeed = None) -> TruncatedSeries:
    """``A(t)^m`` in the power structure determined by ``seed``."""
    seed = seed or default_seed(a.ring)
    if isinstance(m, int) and not isinstance(m, bool):
        m = seed.ring.from_int(m)
    return recompose(euler_factorize(a, seed), seed, scale=m)


# -- axiom suite ----------------------------------------------------------

AXIOMS = (
    "(i) A^0 = 1",
    "(ii) A^1 = A",
    "(iii) (AB)^r = A^r B^r",
    "(iv) A^(r+s) = A^r A^s",
    "(v) A^(rs) = (A^r)^s",
    "(vi) (1+t)^r = 1 + rt + o(t^2)",
    "(vii) A(t^i)^r = A(t)^r at t^i",
)


def _random_element(ring, rng: random.Random, bound: int):
    if isinstance(ring, IntegerRing):
        return rng.randint(-bound, bound)
    f = ring.field
    one = GwElement.from_int(f, rng.randint(-bound, bound))
    if f.kind == QUADRATICALLY_CLOSED:
        return one
    return one + rng.randint(-bound, bound) * GwElement.from_rank_signature(f, 1, -1)


def _random_series(ring, rng: random.Random, order: int, bound: int = 2) -> TruncatedSeries:
    cs = [ring.one()] + [_random_element(ring, rng, bound) for _ in range(order)]
    return TruncatedSeries(ring, cs)


def axiom_suite(seed: PowerSeed, trials: int = 200, order: int = 10, rng_seed: int = 0) -> List[dict]:
    """Check the power-structure axioms on random data; failures are reported.

    Returns one record per axiom: ``{"axiom", "trials", "failures",
    "first_counterexample"}``.  Deterministic given ``rng_seed``.
    """
    ring = seed.ring
    rng = random.Random(rng_seed)
    fails = {name: 0 for name in AXIOMS}
    first = {name: None for name in AXIOMS}
    one = TruncatedSeries.one(ring, order)
    t_plus_1 = TruncatedSeries.monomial(ring, ring.one(), 1, order)

    def record(name, ok, data):
        if not ok:
            fails[name] += 1
            if first[name] is None:
                first[name] = data

    pw = lambda s, e: raise_to(s, e, seed)
    for _ in range(trials):
        a = _random_series(ring, rng, order)
        b = _random_series(ring, rng, order)
        r = _random_element(ring, rng, 3)
        s = _random_element(ring, rng, 3)
        i = rng.randint(2, 3)
        ctx = lambda **kw: {k: _jsonable(ring, v) for k, v in kw.items()}

        ar = pw(a, r)
        record(AXIOMS[0], pw(a, ring.zero()) == one, ctx(A=a))
        record(AXIOMS[1], pw(a, ring.one()) == a, ctx(A=a))
        record(AXIOMS[2], pw(a * b, r) == ar * pw(b, r), ctx(A=a, B=b, r=r))
        record(AXIOMS[3], pw(a, r + s) == ar * pw(a, s), ctx(A=a, r=r, s=s))
        record(AXIOMS[4], pw(a, r * s) == pw(ar, s), ctx(A=a, r=r, s=s))
        lin = pw(t_plus_1, r)
        record(
            AXIOMS[5],
            ring.eq(lin[0], ring.one()) and ring.eq(lin[1], r),
            ctx(r=r),
        )
        record(
            AXIOMS[6],
            pw(substitute_power(a, i), r) == substitute_power(ar, i),
            ctx(A=a, r=r, i=i),
        )
    return [
        {"axiom": name, "trials": trials, "failures": fails[name], "first_counterexample": first[name]}
        for name in AXIOMS
    ]


def _jsonable(ring, v):
    if isinstance(v, TruncatedSeries):
        return v.to_json()
    if isinstance(v, int) and isinstance(ring, IntegerRing):
        return v
    if isinstance(v, int):
        return v
    return ring.to_json(v)
