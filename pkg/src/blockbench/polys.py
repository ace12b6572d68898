"""Univariate polynomials over GF(q) as code arrays (lowest degree first).

Only what the MeatAxe and the character-table code need: Euclid, modular
powering, evaluation at a matrix and complete factorisation (square-free,
distinct-degree and Cantor-Zassenhaus equal-degree splitting).
"""
from __future__ import annotations

import numpy as np

from .gfq import FieldSpec


def trim(f: np.ndarray) -> np.ndarray:
    f = np.asarray(f, dtype=np.int64)
    nz = np.nonzero(f)[0]
    return f[: nz[-1] + 1].copy() if nz.size else f[:0].copy()


def deg(f) -> int:
    return len(trim(f)) - 1


def monic(F: FieldSpec, f):
    f = trim(f)
    if not len(f):
        return f
    return F.mul(F.inv(f[-1]), f)


def add(F, f, g):
    n = max(len(f), len(g))
    a = np.zeros(n, dtype=np.int64)
    b = np.zeros(n, dtype=np.int64)
    a[: len(f)] = f
    b[: len(g)] = g
    return trim(F.add(a, b))


def sub(F, f, g):
    n = max(len(f), len(g))
    a = np.zeros(n, dtype=np.int64)
    b = np.zeros(n, dtype=np.int64)
    a[: len(f)] = f
    b[: len(g)] = g
    return trim(F.sub(a, b))


def mul(F, f, g):
    f, g = trim(f), trim(g)
    if not len(f) or not len(g):
        return np.zeros(0, dtype=np.int64)
    if F.is_prime:
        return trim(np.convolve(f, g) % F.p)
    out = np.zeros(len(f) + len(g) - 1, dtype=np.int64)
    for i, c in enumerate(f):
        if c:
            seg = out[i : i + len(g)]
            out[i : i + len(g)] = F.add(seg, F.mul(int(c), g))
    return trim(out)


def divmod_(F, f, g):
    f, g = trim(f), trim(g)
    if not len(g):
        raise ZeroDivisionError("polynomial division by zero")
    r = f.copy()
    dg = len(g) - 1
    if len(r) - 1 < dg:
        return np.zeros(0, dtype=np.int64), r
    qt = np.zeros(len(r) - dg, dtype=np.int64)
    lead_inv = int(F.inv(g[-1]))
    for i in range(len(r) - 1, dg - 1, -1):
        c = int(r[i])
        if c:
            c = int(F.mul(c, lead_inv))
            qt[i - dg] = c
            r[i - dg : i + 1] = F.sub(r[i - dg : i + 1], F.mul(c, g))
    return trim(qt), trim(r[:dg])


def rem(F, f, g):
    return divmod_(F, f, g)[1]


def gcd(F, f, g):
    f, g = trim(f), trim(g)
    while len(g):
        f, g = g, rem(F, f, g)
    return monic(F, f)


def powmod(F, f, e: int, m):
    result = np.array([1], dtype=np.int64)
    base = rem(F, f, m)
    while e:
        if e & 1:
            result = rem(F, mul(F, result, base), m)
        base = rem(F, mul(F, base, base), m)
        e >>= 1
    return result


def derivative(F, f):
    f = trim(f)
    if len(f) <= 1:
        return np.zeros(0, dtype=np.int64)
    ks = np.arange(1, len(f)) % F.p
    return trim(F.mul(f[1:], ks))


def evaluate(F, f, x):
    """Evaluate f at field elements x (array, vectorised Horner)."""
    x = np.asarray(x, dtype=np.int64)
    acc = np.zeros_like(x)
    for c in trim(f)[::-1]:
        acc = F.add(F.mul(acc, x), int(c))
    return acc


def roots(F: FieldSpec, f) -> list[int]:
    """All roots of f in F by exhaustive evaluation (fields here are small)."""
    vals = evaluate(F, f, F.elements())
    return [int(x) for x in np.nonzero(vals == 0)[0]]


def _pth_root(F, f):
    # f = g(x^p); coefficient-wise p-th roots a^(q/p)
    f = trim(f)
    coeffs = f[:: F.p]
    return trim(np.array([F.power(int(c), F.q // F.p) for c in coeffs], dtype=np.int64))


def squarefree(F, f) -> list[tuple[np.ndarray, int]]:
    """Square-free decomposition: list of (g, e) with f = prod g^e (monic)."""
    f = monic(F, f)
    if deg(f) < 1:
        return []
    out = []
    d = derivative(F, f)
    if not len(d):
        for g, e in squarefree(F, _pth_root(F, f)):
            out.append((g, e * F.p))
        return out
    c = gcd(F, f, d)
    w = divmod_(F, f, c)[0]
    i = 1
    while deg(w) > 0:
        y = gcd(F, w, c)
        z = divmod_(F, w, y)[0]
        if deg(z) > 0:
            out.append((monic(F, z), i))
        i += 1
        w = y
        c = divmod_(F, c, y)[0]
    if deg(c) > 0:
        for g, e in squarefree(F, _pth_root(F, c)):
            out.append((g, e * F.p))
    return out


def distinct_degree(F, f) -> list[tuple[np.ndarray, int]]:
    """Split a square-free monic f into products of equal-degree factors."""
    out = []
    x = np.array([0, 1], dtype=np.int64)
    h = x.copy()
    d = 0
    f = monic(F, f)
    while deg(f) >= 2 * (d + 1):
        d += 1
        h = powmod(F, h, F.q, f)
        g = gcd(F, f, sub(F, h, x))
        if deg(g) > 0:
            out.append((g, d))
            f = divmod_(F, f, g)[0]
            h = rem(F, h, f)
    if deg(f) > 0:
        out.append((f, deg(f)))
    return out


def equal_degree(F, f, d: int, rng) -> list[np.ndarray]:
    """Cantor-Zassenhaus splitting of f, a product of degree-d irreducibles."""
    f = monic(F, f)
    n = deg(f)
    if n == d:
        return [f]
    while True:
        a = trim(F.random(rng, size=n))
        if deg(a) < 1:
            continue
        if F.p == 2:
            # trace map a + a^2 + ... + a^(2^(k d - 1))
            t = a.copy()
            cur = a.copy()
            for _ in range(F.k * d - 1):
                cur = rem(F, mul(F, cur, cur), f)
                t = add(F, t, cur)
            b = t
        else:
            e = (F.q**d - 1) // 2
            b = sub(F, powmod(F, a, e, f), np.array([1], dtype=np.int64))
        g = gcd(F, f, b)
        if 0 < deg(g) < n:
            h = divmod_(F, f, g)[0]
            return equal_degree(F, g, d, rng) + equal_degree(F, h, d, rng)


def factor(F: FieldSpec, f, rng=None) -> list[tuple[np.ndarray, int]]:
    """Irreducible factorisation as (monic factor, multiplicity), sorted by
    degree and then by coefficients."""
    if rng is None:
        rng = np.random.default_rng(0)
    out = []
    for g, e in squarefree(F, f):
        for h, d in distinct_degree(F, g):
            for irr in equal_degree(F, h, d, rng):
                out.append((irr, e))
    merged: dict[tuple, int] = {}
    for g, e in out:
        key = tuple(int(c) for c in g)
        merged[key] = merged.get(key, 0) + e
    items = sorted(merged.items(), key=lambda kv: (len(kv[0]), kv[0]))
    return [(np.array(k, dtype=np.int64), e) for k, e in items]


def from_roots(F, rts) -> np.ndarray:
    f = np.array([1], dtype=np.int64)
    for r in rts:
        f = mul(F, f, np.array([int(F.neg(r)), 1], dtype=np.int64))
    return f
