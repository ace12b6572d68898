"""Exact arithmetic in the cyclotomic integers Z[zeta_m].

A :class:`CycInt` stores its conductor ``m`` and the integer coordinates in
the power basis ``1, zeta_m, ..., zeta_m^(phi(m)-1)``.  Products are reduced
modulo the m-th cyclotomic polynomial immediately, so every value has a
unique representation at its conductor.  Binary operations between different
conductors lift both operands to the lcm first.
"""
from __future__ import annotations

import cmath
from functools import lru_cache
from math import gcd

import numpy as np


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Integer coefficients (low -> high) of the m-th cyclotomic polynomial."""
    num = [-1] + [0] * (m - 1) + [1]  # x^m - 1
    for d in _divisors(m)[:-1]:
        den = cyclotomic_poly(d)
        num = _exact_div(num, list(den))
    return tuple(num)


def _exact_div(a: list[int], b: list[int]) -> list[int]:
    a = list(a)
    out = [0] * (len(a) - len(b) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = a[i + len(b) - 1]  # b monic
        out[i] = c
        if c:
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    assert not any(a), "non-exact polynomial division"
    return out


def euler_phi(m: int) -> int:
    return len(cyclotomic_poly(m)) - 1


def _reduce(vec: np.ndarray, m: int) -> np.ndarray:
    """Reduce a coefficient vector (any length) modulo Phi_m."""
    f = cyclotomic_poly(m)
    n = len(f) - 1
    v = np.array(vec, dtype=object)
    if len(v) < n:
        return np.concatenate([v, np.zeros(n - len(v), dtype=object)])
    for i in range(len(v) - 1, n - 1, -1):
        c = v[i]
        if c:
            for j in range(n + 1):
                v[i - n + j] -= c * f[j]
    return v[:n].copy()


@lru_cache(maxsize=None)
def _power_table(m: int) -> np.ndarray:
    """Row e = coordinates of zeta_m^e, for e in range(m)."""
    f = cyclotomic_poly(m)
    n = len(f) - 1
    tab = np.zeros((m, n), dtype=object)
    cur = [0] * n
    cur[0] = 1
    for e in range(m):
        tab[e] = cur
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * f[j] for j, c in enumerate(cur)]
    return tab


class CycInt:
    """An element of Z[zeta_m] with exact integer coordinates."""

    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor: int, coeffs):
        n = euler_phi(conductor)
        c = np.array(list(coeffs), dtype=object) if not isinstance(coeffs, np.ndarray) else coeffs.astype(object)
        if len(c) != n:
            c = _reduce(c, conductor)
        self.conductor = conductor
        self.coeffs = c

    # -- constructors ----------------------------------------------------
    @classmethod
    def from_int(cls, n: int) -> "CycInt":
        return cls(1, [int(n)])

    @classmethod
    def zeta(cls, m: int, j: int = 1) -> "CycInt":
        return cls(m, _power_table(m)[j % m])

    @classmethod
    def from_exponents(cls, m: int, mults) -> "CycInt":
        """sum_j mults[j] * zeta_m^j."""
        tab = _power_table(m)
        acc = np.zeros(tab.shape[1], dtype=object)
        for j, a in enumerate(mults):
            if a:
                acc = acc + int(a) * tab[j % m]
        return cls(m, acc)

    @staticmethod
    def coerce(x) -> "CycInt":
        if isinstance(x, CycInt):
            return x
        if isinstance(x, (int, np.integer)):
            return CycInt.from_int(int(x))
        raise TypeError(f"cannot coerce {type(x).__name__} to CycInt")

    # -- conductor changes -------------------------------------------------
    def lift(self, M: int) -> "CycInt":
        """The same number written at conductor M (a multiple of m)."""
        m = self.conductor
        if M == m:
            return self
        if M % m:
            raise ValueError(f"conductor {m} does not divide {M}")
        tab = _power_table(M)
        step = M // m
        acc = np.zeros(tab.shape[1], dtype=object)
        for j, a in enumerate(self.coeffs):
            if a:
                acc = acc + a * tab[(j * step) % M]
        return CycInt(M, acc)

    def simplify(self) -> "CycInt":
        """Rewrite at the least conductor containing the value."""
        m = self.conductor
        if m == 1:
            return self
        if not any(self.coeffs[1:]):
            return CycInt(1, [self.coeffs[0]])
        for d in _divisors(m)[1:-1]:
            if self._in_subfield(d):
                return self._descend(d)
        return self

    def _in_subfield(self, d: int) -> bool:
        m = self.conductor
        for t in range(1, m):
            if gcd(t, m) == 1 and t % d == 1 % d:
                if self.galois(t) != self:
                    return False
        return True

    def _descend(self, d: int) -> "CycInt":
        # Solve c_d * L = c_m where L lifts the conductor-d basis.
        M = self.conductor
        n = euler_phi(d)
        tab = _power_table(M)
        L = np.array([tab[(j * (M // d)) % M] for j in range(n)], dtype=float)
        target = np.array(self.coeffs, dtype=float)
        sol, *_ = np.linalg.lstsq(L.T, target, rcond=None)
        cand = CycInt(d, [int(round(x)) for x in sol])
        if cand.lift(M) != self:
            raise ArithmeticError("descent failed")
        return cand

    # -- arithmetic ------------------------------------------------------
    def _common(self, other):
        other = CycInt.coerce(other)
        if self.conductor == other.conductor:
            return self, other
        M = _lcm(self.conductor, other.conductor)
        return self.lift(M), other.lift(M)

    def __add__(self, other):
        try:
            a, b = self._common(other)
        except TypeError:
            return NotImplemented
        return CycInt(a.conductor, a.coeffs + b.coeffs)

    __radd__ = __add__

    def __neg__(self):
        return CycInt(self.conductor, -self.coeffs)

    def __sub__(self, other):
        try:
            a, b = self._common(other)
        except TypeError:
            return NotImplemented
        return CycInt(a.conductor, a.coeffs - b.coeffs)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return CycInt(self.conductor, self.coeffs * int(other))
        try:
            a, b = self._common(other)
        except TypeError:
            return NotImplemented
        prod = np.convolve(a.coeffs, b.coeffs)
        return CycInt(a.conductor, _reduce(prod, a.conductor))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not cyclotomic integers in general")
        result = CycInt(self.conductor, _power_table(self.conductor)[0])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def exact_div(self, n: int) -> "CycInt":
        """Divide by a rational integer; all coordinates must be divisible."""
        n = int(n)
        if any(int(c) % n for c in self.coeffs):
            raise ArithmeticError(f"{self} is not divisible by {n}")
        return CycInt(self.conductor, [int(c) // n for c in self.coeffs])

    def __eq__(self, other):
        try:
            a, b = self._common(other)
        except TypeError:
            return NotImplemented
        return all(x == y for x, y in zip(a.coeffs, b.coeffs))

    def __hash__(self):
        s = self.simplify()
        return hash((s.conductor, tuple(int(c) for c in s.coeffs)))

    # -- automorphisms and embeddings -----------------------------------
    def galois(self, t: int) -> "CycInt":
        """Image under zeta_m -> zeta_m^t (t coprime to m)."""
        m = self.conductor
        if gcd(t, m) != 1:
            raise ValueError(f"{t} is not a unit mod {m}")
        tab = _power_table(m)
        acc = np.zeros(tab.shape[1], dtype=object)
        for j, a in enumerate(self.coeffs):
            if a:
                acc = acc + a * tab[(j * t) % m]
        return CycInt(m, acc)

    def conj(self) -> "CycInt":
        return self.galois(-1 % self.conductor if self.conductor > 1 else 1)

    def __complex__(self):
        z = cmath.exp(2j * cmath.pi / self.conductor)
        return complex(sum(complex(int(a)) * z**j for j, a in enumerate(self.coeffs)))

    def is_rational(self) -> bool:
        return self.simplify().conductor == 1

    def __int__(self):
        s = self.simplify()
        if s.conductor != 1:
            raise ValueError(f"{self} is not a rational integer")
        return int(s.coeffs[0])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def to_json(self) -> dict:
        s = self.simplify()
        z = complex(s)
        return {
            "conductor": s.conductor,
            "coeffs": [int(c) for c in s.coeffs],
            "approx": [round(z.real, 6) + 0.0, round(z.imag, 6) + 0.0],
        }

    @classmethod
    def from_json(cls, d: dict) -> "CycInt":
        return cls(d["conductor"], [int(c) for c in d["coeffs"]])

    def __repr__(self):
        s = self.simplify()
        if s.conductor == 1:
            return str(int(s.coeffs[0]))
        terms = []
        for j, a in enumerate(s.coeffs):
            a = int(a)
            if not a:
                continue
            mon = "1" if j == 0 else (f"z{s.conductor}" if j == 1 else f"z{s.conductor}^{j}")
            if j == 0:
                terms.append(str(a))
            elif a == 1:
                terms.append(mon)
            elif a == -1:
                terms.append("-" + mon)
            else:
                terms.append(f"{a}*{mon}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def sqrt_minus_two() -> CycInt:
    """zeta_8 + zeta_8^3, the square root of -2 with positive imaginary part."""
    return CycInt.zeta(8, 1) + CycInt.zeta(8, 3)
