"""Finite fields GF(p^k) with Conway-polynomial generators.

Elements are encoded as integers ``0 <= code < q``: the base-p digits of a
code are the coefficients (lowest degree first) of the element written as a
polynomial in the canonical generator.  For ``k == 1`` the code is simply the
residue mod p and the generator is the least primitive root.

All arithmetic helpers are vectorised over numpy integer arrays.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import product
from math import gcd

import numpy as np

from .cyclotomic import CycInt

MAX_FIELD_SIZE = 2**20
_TABLE_LIMIT = 1024


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def p_part(n: int, p: int) -> int:
    r = 1
    while n % p == 0:
        n //= p
        r *= p
    return r


# -- small polynomial helpers over GF(p), coefficient lists low -> high ------

def _pmod(a: list[int], f: list[int], p: int) -> list[int]:
    """Remainder of a modulo the monic polynomial f."""
    a = list(a)
    n = len(f) - 1
    for i in range(len(a) - 1, n - 1, -1):
        c = a[i] % p
        if c:
            for j in range(n + 1):
                a[i - n + j] = (a[i - n + j] - c * f[j]) % p
    a = [x % p for x in a[:n]]
    return a + [0] * (n - len(a))


def _pmulmod(a, b, f, p):
    prod_ = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod_[i + j] += x * y
    return _pmod(prod_, f, p)


def _ppowmod(a, e, f, p):
    result = _pmod([1], f, p)
    base = _pmod(a, f, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, f, p)
        base = _pmulmod(base, base, f, p)
        e >>= 1
    return result


def _peval_poly_at(g, x, f, p):
    """Evaluate g (over GF(p)) at the residue x modulo f."""
    acc = [0] * (len(f) - 1)
    for c in reversed(g):
        acc = _pmulmod(acc, x, f, p)
        acc[0] = (acc[0] + c) % p
    return acc


def _is_primitive(f: list[int], p: int) -> bool:
    n = len(f) - 1
    if f[0] % p == 0:
        return False
    order = p**n - 1
    one = _pmod([1], f, p)
    x = _pmod([0, 1], f, p)
    if _ppowmod(x, order, f, p) != one:
        return False
    return all(_ppowmod(x, order // r, f, p) != one for r in prime_factors(order))


@lru_cache(maxsize=None)
def conway_polynomial(p: int, k: int) -> tuple[int, ...]:
    """Conway polynomial of degree k over GF(p), coefficients low -> high.

    Candidates are scanned in Conway order: the polynomial
    ``x^k - a_{k-1} x^{k-1} + a_{k-2} x^{k-2} - ...`` is identified with the
    word ``(a_{k-1}, ..., a_0)`` and words are compared lexicographically.
    """
    divisors = [d for d in range(1, k) if k % d == 0]
    for word in product(range(p), repeat=k):
        f = [0] * (k + 1)
        f[k] = 1
        for pos, a in enumerate(word):
            i = k - 1 - pos
            f[i] = ((-1) ** (k - i) * a) % p
        if not _is_primitive(f, p):
            continue
        ok = True
        x = _pmod([0, 1], f, p)
        for d in divisors:
            root = _ppowmod(x, (p**k - 1) // (p**d - 1), f, p)
            if any(_peval_poly_at(list(conway_polynomial(p, d)), root, f, p)):
                ok = False
                break
        if ok:
            return tuple(f)
    raise FieldError(f"no Conway polynomial found for p={p}, k={k}")


class FieldSpec:
    """GF(p^k) with Conway generator, log/exp tables and vectorised ops."""

    def __init__(self, p: int, k: int):
        self.p = p
        self.k = k
        self.q = p**k
        self.poly = conway_polynomial(p, k)
        q = self.q
        exp = np.zeros(q - 1, dtype=np.int64)
        if k == 1:
            g = (-self.poly[0]) % p
            x = 1
            for i in range(q - 1):
                exp[i] = x
                x = x * g % p
        else:
            cur = [1] + [0] * (k - 1)
            f = list(self.poly)
            for i in range(q - 1):
                exp[i] = sum(c * p**j for j, c in enumerate(cur))
                # multiply by the generator x
                top = cur[-1]
                cur = [0] + cur[:-1]
                if top:
                    cur = [(c - top * f[j]) % p for j, c in enumerate(cur)]
        log = np.full(q, -1, dtype=np.int64)
        log[exp] = np.arange(q - 1)
        if (log[1:] < 0).any():
            raise FieldError("generator is not primitive")
        self.exp_table = exp
        self.log_table = log
        self.generator = int(exp[1 % (q - 1)]) if q > 2 else 1
        self._inv = np.zeros(q, dtype=np.int64)
        self._inv[1:] = exp[(-log[1:]) % (q - 1)]
        self._digits = None
        self._add = self._sub = self._mul = None
        if k > 1:
            codes = np.arange(q)
            self._digits = np.stack([(codes // p**j) % p for j in range(k)])
            self._weights = p ** np.arange(k, dtype=np.int64)
            self._fdigits = self._digits.astype(np.float64)
            if q <= _TABLE_LIMIT:
                d = self._digits
                self._add = ((d[:, :, None] + d[:, None, :]) % p * self._weights[:, None, None]).sum(0)
                self._sub = ((d[:, :, None] - d[:, None, :]) % p * self._weights[:, None, None]).sum(0)
                la = log[:, None] + log[None, :]
                mul = exp[la % (q - 1)]
                mul[0, :] = 0
                mul[:, 0] = 0
                self._mul = mul

    # -- identity --------------------------------------------------------
    def __repr__(self):
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self):
        return hash((self.p, self.k))

    def __reduce__(self):
        return (ff_make, (self.p, self.k))

    @property
    def is_prime(self) -> bool:
        return self.k == 1

    # -- vectorised arithmetic -------------------------------------------
    def _from_digits(self, d):
        return np.tensordot(self._weights, d, axes=1)

    def add(self, a, b):
        if self.k == 1:
            return (np.asarray(a) + b) % self.p
        if self._add is not None:
            return self._add[a, b]
        a, b = np.broadcast_arrays(np.asarray(a), np.asarray(b))
        return self._from_digits((self._digits[:, a] + self._digits[:, b]) % self.p)

    def sub(self, a, b):
        if self.k == 1:
            return (np.asarray(a) - b) % self.p
        if self._sub is not None:
            return self._sub[a, b]
        a, b = np.broadcast_arrays(np.asarray(a), np.asarray(b))
        return self._from_digits((self._digits[:, a] - self._digits[:, b]) % self.p)

    def neg(self, a):
        return self.sub(0, a)

    def mul(self, a, b):
        if self.k == 1:
            return (np.asarray(a) * b) % self.p
        if self._mul is not None:
            return self._mul[a, b]
        a, b = np.broadcast_arrays(np.asarray(a), np.asarray(b))
        r = self.exp_table[(self.log_table[a] + self.log_table[b]) % (self.q - 1)]
        r = np.where((a == 0) | (b == 0), 0, r)
        return r

    def inv(self, a):
        a = np.asarray(a)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self._inv[a]

    def power(self, a: int, e: int) -> int:
        if a == 0:
            return 0 if e > 0 else 1
        return int(self.exp_table[(int(self.log_table[a]) * e) % (self.q - 1)])

    def from_int(self, n: int) -> int:
        """Image of the integer n under Z -> GF(p) -> GF(q)."""
        return n % self.p

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Matrix product of code arrays (supports numpy batch broadcasting)."""
        p = self.p
        if self.k == 1:
            return _exact_matmul(a, b, p) % p
        k = self.k
        inner = a.shape[-1] if a.ndim else 1
        if inner * k * (p - 1) ** 2 >= 2**52:
            raise FieldError("matrix product too large for exact float accumulation")
        da = np.take(self._fdigits, a, axis=1)
        db = np.take(self._fdigits, b, axis=1)
        comps = [None] * (2 * k - 1)
        for i in range(k):
            for j in range(k):
                t = da[i] @ db[j]
                comps[i + j] = t if comps[i + j] is None else comps[i + j] + t
        comps = [np.rint(c).astype(np.int64) for c in comps]
        f = self.poly
        # reduce x^m for m >= k using x^k = -sum f_j x^j
        for m in range(2 * k - 2, k - 1, -1):
            c = comps[m] % p
            for j in range(k):
                if f[j]:
                    comps[m - k + j] = comps[m - k + j] - c * f[j]
        out = comps[0] % p
        for j in range(1, k):
            out = out + (comps[j] % p) * p**j
        return out

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def random(self, rng, size=None, nonzero=False):
        if nonzero:
            return rng.integers(1, self.q, size=size)
        return rng.integers(0, self.q, size=size)

    def order(self, x: int) -> int:
        """Multiplicative order of a nonzero element."""
        if x == 0:
            raise FieldError("zero has no multiplicative order")
        j = int(self.log_table[x])
        return (self.q - 1) // gcd(j, self.q - 1)

    def to_str(self, x: int) -> str:
        if self.k == 1:
            return str(int(x))
        if x == 0:
            return "0"
        return f"z^{int(self.log_table[x])}"


def _exact_matmul(a, b, p):
    # float64 products go through BLAS and stay exact below 2^53
    inner = a.shape[-1] if a.ndim else 1
    if inner * (p - 1) ** 2 < 2**52:
        return np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64)
    return a.astype(np.int64) @ b.astype(np.int64)


@lru_cache(maxsize=None)
def ff_make(p: int, k: int = 1) -> FieldSpec:
    """Return the canonical GF(p^k); repeated calls return the same object."""
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if k < 1:
        raise FieldError("extension degree must be >= 1")
    if p**k > MAX_FIELD_SIZE:
        raise FieldError(f"field size {p}^{k} exceeds the cap {MAX_FIELD_SIZE}")
    return FieldSpec(p, k)


def ff_log(F: FieldSpec, x: int) -> int:
    if x == 0:
        raise FieldError("log of zero")
    return int(F.log_table[x])


def brauer_lift(F: FieldSpec, x: int) -> CycInt:
    """Lift a nonzero element to a complex root of unity.

    The Conway generator of GF(p^k) goes to exp(2 pi i / (p^k - 1)); the
    result is reported at conductor equal to the order of x.
    """
    j = ff_log(F, x)
    m = F.order(x)
    return CycInt.zeta(m, j * m // (F.q - 1))


def splitting_degree(p: int, m: int) -> int:
    """Least k with m | p^k - 1 (m coprime to p)."""
    if m % p == 0:
        raise FieldError(f"{m} is not prime to {p}")
    k, r = 1, p % m if m > 1 else 0
    if m == 1:
        return 1
    while r != 1:
        r = r * p % m
        k += 1
    return k


def embed(F: FieldSpec, E: FieldSpec, x: int) -> int:
    """Image of x in F under the Conway-compatible embedding F -> E."""
    if E.p != F.p or E.k % F.k:
        raise FieldError(f"{F} is not a subfield of {E}")
    if x == 0:
        return 0
    j = int(F.log_table[x])
    return int(E.exp_table[j * ((E.q - 1) // (F.q - 1)) % (E.q - 1)])


def restrict_to_subfield(E: FieldSpec, F: FieldSpec, y: int) -> int:
    """Inverse of embed: y must lie in the image of F."""
    if y == 0:
        return 0
    j = int(E.log_table[y])
    step = (E.q - 1) // (F.q - 1)
    if j % step:
        raise FieldError(f"element not in the subfield {F}")
    return int(F.exp_table[j // step])


def reduce_cycint(c: CycInt, F: FieldSpec) -> int:
    """Reduce an element of Z[zeta_m] modulo the canonical prime over p.

    zeta_m is sent to the root of unity of order m' (the p'-part of m) that
    is compatible with brauer_lift; F must contain the m'-th roots of unity.
    """
    p = F.p
    m = c.conductor
    pa = p_part(m, p)
    mp = m // pa
    if (F.q - 1) % mp:
        raise FieldError(f"{F} lacks primitive {mp}-th roots of unity")
    t = pow(pa, -1, mp) if mp > 1 else 0
    base = (F.q - 1) // mp * t
    acc = 0
    for j, a in enumerate(c.coeffs):
        a = int(a) % p
        if a:
            z = int(F.exp_table[(base * j) % (F.q - 1)])
            acc = int(F.add(acc, F.mul(a, z)))
    return acc


def reduction_field(c_conductor: int, p: int) -> FieldSpec:
    """Smallest canonical field into which Z[zeta_m] reduces mod p."""
    mp = c_conductor // p_part(c_conductor, p)
    return ff_make(p, splitting_degree(p, mp))
