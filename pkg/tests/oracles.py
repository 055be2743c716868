"""Brute-force reference computations that share no code with the package.

Everything here works on plain ints and lists.
"""

from __future__ import annotations

import itertools
from collections import Counter
from math import comb


# -- power series on plain lists ----------------------------------------


def mul(a, b, n):
    out = [0] * (n + 1)
    for i, x in enumerate(a[: n + 1]):
        if x:
            for j, y in enumerate(b[: n + 1 - i]):
                out[i + j] += x * y
    return out


def geometric_power(c, step, e, n):
    """Coefficients of (1 - c t^step)^(-e) for integer e, by repeated multiplication."""
    one = [1] + [0] * n
    base = [0] * (n + 1)
    base[0] = 1
    if step <= n:
        base[step] = -c
    if e >= 0:
        # (1 - c t^step)^(-1) = sum (c t^step)^k
        inv = [0] * (n + 1)
        for k in range(n // step + 1):
            inv[k * step] = c**k
        out = one
        for _ in range(e):
            out = mul(out, inv, n)
        return out
    out = one
    for _ in range(-e):
        out = mul(out, base, n)
    return out


def partition_numbers(n):
    """p(0..n) by the standard coin-change recurrence."""
    p = [1] + [0] * n
    for part in range(1, n + 1):
        for m in range(part, n + 1):
            p[m] += p[m - part]
    return p


def real_punctual_signature(n):
    """Coefficients of prod_k (1 + (-t)^k)^(-1)."""
    out = [1] + [0] * n
    for k in range(1, n + 1):
        out = mul(out, geometric_power(-((-1) ** k), k, 1, n), n)
    return out


# -- Galois orbits on zero-dimensional varieties over R -----------------


def sym_galois_orbits(j, n):
    """Rank and signature of chi^c(Sym^n(Spec C + j points)) over R.

    The geometric points are z, conj(z) and p_1..p_j.  A multiset of size n
    fixed by conjugation is a real point and contributes <1>; a pair of
    conjugate multisets is a point with residue field C and contributes
    <1> + <-1>.
    """
    pts = ["z", "w"] + [f"p{i}" for i in range(j)]
    swap = {"z": "w", "w": "z"}
    rank = fixed = 0
    for ms in itertools.combinations_with_replacement(pts, n):
        rank += 1
        image = tuple(sorted(swap.get(p, p) for p in ms))
        if image == tuple(sorted(ms)):
            fixed += 1
    return rank, fixed


# -- quadratic forms over F_p -------------------------------------------


def representation_counts(diag, p):
    """For each c in F_p, the number of vectors v with sum a_i v_i^2 = c."""
    counts = Counter()
    for v in itertools.product(range(p), repeat=len(diag)):
        counts[sum(a * x * x for a, x in zip(diag, v)) % p] += 1
    return tuple(counts[c] for c in range(p))


# -- Hilbert symbols by solubility search -------------------------------


def hilbert_brute(a, b, p):
    """(a, b)_p for squarefree-ish a, b by searching z^2 = a x^2 + b y^2.

    Looks for a primitive solution modulo p^2 (odd p) or 2^5; enough when the
    p-adic valuations of a and b are at most 1.
    """
    mod = p**2 if p != 2 else 32
    squares_any = {(z * z) % mod for z in range(mod)}
    squares_unit = {(z * z) % mod for z in range(mod) if z % p}
    for x in range(mod):
        for y in range(mod):
            rhs = (a * x * x + b * y * y) % mod
            if x % p or y % p:
                if rhs in squares_any:
                    return 1
            elif rhs in squares_unit:
                return 1
    return -1


def binom_rising(r, n):
    """binom(r+n-1, n) for any integer r, via the sign rule for negative tops."""
    if r >= 0:
        return comb(r + n - 1, n) if n else 1
    return (-1) ** n * comb(-r, n)
