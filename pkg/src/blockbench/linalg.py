"""Dense matrices over GF(q).

Entries are field codes held in int64 numpy arrays (see :mod:`gfq`).  Vectors
are rows and matrices act on the right, matching the right-module convention
used everywhere else: a subspace is the row space of a matrix, and the
nullspace of M is ``{v : v M = 0}``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import polys
from .gfq import FieldSpec, ff_make


class DimensionError(ValueError):
    pass


class DenseMatrix:
    __slots__ = ("field", "a")

    def __init__(self, field: FieldSpec, data):
        a = np.asarray(data, dtype=np.int64)
        if a.ndim == 1:
            a = a.reshape(1, -1) if a.size else a.reshape(0, 0)
        self.field = field
        self.a = a

    @classmethod
    def zeros(cls, F, rows, cols):
        return cls(F, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, F, n):
        return cls(F, np.eye(n, dtype=np.int64))

    @classmethod
    def random(cls, F, rows, cols, rng):
        return cls(F, F.random(rng, size=(rows, cols)))

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    @property
    def shape(self):
        return self.a.shape

    def _check(self, other):
        if self.field != other.field:
            raise DimensionError(f"field mismatch: {self.field} vs {other.field}")

    def __matmul__(self, other: "DenseMatrix") -> "DenseMatrix":
        self._check(other)
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        return DenseMatrix(self.field, self.field.matmul(self.a, other.a))

    def __add__(self, other):
        self._check(other)
        return DenseMatrix(self.field, self.field.add(self.a, other.a))

    def __sub__(self, other):
        self._check(other)
        return DenseMatrix(self.field, self.field.sub(self.a, other.a))

    def __neg__(self):
        return DenseMatrix(self.field, self.field.neg(self.a))

    def scale(self, c: int) -> "DenseMatrix":
        return DenseMatrix(self.field, self.field.mul(int(c), self.a))

    @property
    def T(self) -> "DenseMatrix":
        return DenseMatrix(self.field, self.a.T.copy())

    def __eq__(self, other):
        if not isinstance(other, DenseMatrix):
            return NotImplemented
        return self.field == other.field and self.a.shape == other.a.shape and bool(np.array_equal(self.a, other.a))

    __hash__ = None

    def __getitem__(self, idx):
        return DenseMatrix(self.field, np.atleast_2d(self.a[idx]))

    def is_zero(self) -> bool:
        return not self.a.any()

    def copy(self):
        return DenseMatrix(self.field, self.a.copy())

    def trace(self) -> int:
        F = self.field
        acc = 0
        for x in np.diagonal(self.a):
            acc = int(F.add(acc, int(x)))
        return acc

    def power(self, e: int) -> "DenseMatrix":
        result = DenseMatrix.identity(self.field, self.rows)
        base = self
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    def key(self) -> bytes:
        """Canonical key of the row space (echelon form bytes)."""
        R, _ = _rref(self.field, self.a)
        return R.shape[1].to_bytes(4, "little") + R.astype(np.uint16).tobytes()

    def __repr__(self):
        return f"DenseMatrix({self.field}, {self.rows}x{self.cols})"

    def to_text(self) -> str:
        F = self.field
        lines = [f"{F.p} {F.k} {self.rows} {self.cols}"]
        sep = "" if F.q <= 10 else " "
        for row in self.a:
            lines.append(sep.join(str(int(x)) for x in row))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "DenseMatrix":
        lines = [ln for ln in text.strip().splitlines() if ln.strip()]
        return read_matrix(iter(lines))


def read_matrix(lines) -> DenseMatrix:
    """Parse one matrix block (header ``p k rows cols`` then rows)."""
    header = next(lines).split()
    p, k, rows, cols = (int(x) for x in header)
    F = ff_make(p, k)
    data = np.zeros((rows, cols), dtype=np.int64)
    for i in range(rows):
        ln = next(lines).strip()
        vals = [int(c) for c in ln] if F.q <= 10 else [int(c) for c in ln.split()]
        if len(vals) != cols:
            raise ValueError(f"row {i} has {len(vals)} entries, expected {cols}")
        data[i] = vals
    if data.size and (data.min() < 0 or data.max() >= F.q):
        raise ValueError("entry outside the field")
    return DenseMatrix(F, data)


def vstack(F, mats) -> DenseMatrix:
    arrs = [m.a for m in mats if m.rows]
    if not arrs:
        cols = mats[0].cols if mats else 0
        return DenseMatrix(F, np.zeros((0, cols), dtype=np.int64))
    return DenseMatrix(F, np.vstack(arrs))


# -- echelon forms --------------------------------------------------------

def _rref(F: FieldSpec, a: np.ndarray):
    """Reduced row echelon form of a code array; returns (R, pivots)."""
    a = np.array(a, dtype=np.int64, copy=True)
    rows, cols = a.shape
    r = 0
    piv = []
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if not nz.size:
            continue
        i = r + nz[0]
        if i != r:
            a[[r, i]] = a[[i, r]]
        v = int(a[r, c])
        if v != 1:
            a[r, c:] = F.mul(int(F.inv(v)), a[r, c:])
        col = a[:, c].copy()
        col[r] = 0
        others = np.flatnonzero(col)
        if others.size:
            a[others, c:] = F.sub(a[others, c:], F.mul(col[others, None], a[r, c:][None, :]))
        piv.append(c)
        r += 1
    return a[:r], piv


@dataclass
class Echelon:
    R: DenseMatrix
    rank: int
    pivots: list


def echelonize(M: DenseMatrix) -> Echelon:
    R, piv = _rref(M.field, M.a)
    return Echelon(DenseMatrix(M.field, R if R.size or R.shape[0] else np.zeros((0, M.cols), dtype=np.int64)), len(piv), piv)


def rank(M: DenseMatrix) -> int:
    return len(_rref(M.field, M.a)[1])


def _left_null(F: FieldSpec, a: np.ndarray) -> np.ndarray:
    rows = a.shape[0]
    R, piv = _rref(F, a.T)
    free = [j for j in range(rows) if j not in set(piv)]
    basis = np.zeros((len(free), rows), dtype=np.int64)
    if free:
        basis[np.arange(len(free)), free] = 1
        if piv:
            basis[:, piv] = F.neg(R[:, free].T)
    return basis


def nullspace(M: DenseMatrix) -> DenseMatrix:
    """Echelonised basis of the left nullspace {v : v M = 0}."""
    F = M.field
    basis = _left_null(F, M.a)
    if basis.shape[0]:
        basis, _ = _rref(F, basis)
    if not M.rows:
        basis = np.zeros((0, 0), dtype=np.int64)
    return DenseMatrix(F, basis.reshape(-1, M.rows) if M.rows else basis)


def solve(M: DenseMatrix, B: DenseMatrix):
    """Some X with X M = B, or None when a row of B is outside rowspace(M)."""
    F = M.field
    n = M.rows
    aug = np.hstack([M.a.T, B.a.T])  # columns of M^T | B^T
    R, piv = _rref(F, aug)
    if any(c >= n for c in piv):
        return None
    X = np.zeros((B.rows, n), dtype=np.int64)
    if piv:
        X[:, piv] = R[:, n:].T
    return DenseMatrix(F, X)


def inverse(M: DenseMatrix) -> DenseMatrix:
    if M.rows != M.cols:
        raise DimensionError("inverse of a non-square matrix")
    F = M.field
    n = M.rows
    R, piv = _rref(F, np.hstack([M.a, np.eye(n, dtype=np.int64)]))
    if len(piv) < n or piv[n - 1] >= n:
        raise ZeroDivisionError("matrix is singular")
    return DenseMatrix(F, R[:, n:])


def is_invertible(M: DenseMatrix) -> bool:
    return M.rows == M.cols and rank(M) == M.rows


def kron(A: DenseMatrix, B: DenseMatrix) -> DenseMatrix:
    A._check(B)
    F = A.field
    prod = F.mul(A.a[:, None, :, None], B.a[None, :, None, :])
    return DenseMatrix(F, prod.reshape(A.rows * B.rows, A.cols * B.cols))


# -- subspaces ----------------------------------------------------------------

class Subspace:
    """Row space held in reduced echelon form with its pivot columns."""

    def __init__(self, F: FieldSpec, basis: np.ndarray, pivots: list, dim_ambient: int):
        self.field = F
        self.basis = basis
        self.pivots = list(pivots)
        self.n = dim_ambient

    @classmethod
    def span(cls, M: DenseMatrix) -> "Subspace":
        R, piv = _rref(M.field, M.a)
        return cls(M.field, R.reshape(-1, M.cols), piv, M.cols)

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def matrix(self) -> DenseMatrix:
        return DenseMatrix(self.field, self.basis.reshape(-1, self.n))

    def coords(self, v: np.ndarray) -> np.ndarray:
        return v[..., self.pivots]

    def residual(self, v: np.ndarray) -> np.ndarray:
        """v minus its projection along the echelon basis."""
        if not self.pivots:
            return np.array(v, dtype=np.int64, copy=True)
        F = self.field
        return F.sub(v, F.matmul(v[..., self.pivots], self.basis))

    def contains(self, v: np.ndarray) -> bool:
        return not self.residual(np.atleast_2d(v)).any()

    def contains_space(self, other: "Subspace") -> bool:
        return other.dim == 0 or self.contains(other.basis)

    def key(self) -> bytes:
        return self.n.to_bytes(4, "little") + self.basis.astype(np.uint16).tobytes()

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def sum(self, other: "Subspace") -> "Subspace":
        return Subspace.span(DenseMatrix(self.field, np.vstack([self.basis.reshape(-1, self.n), other.basis.reshape(-1, self.n)])))

    def intersect(self, other: "Subspace") -> "Subspace":
        F = self.field
        if self.dim == 0 or other.dim == 0:
            return Subspace(F, np.zeros((0, self.n), dtype=np.int64), [], self.n)
        st = np.vstack([self.basis, other.basis])
        null = _left_null(F, st)
        vecs = F.matmul(null[:, : self.dim], self.basis)
        return Subspace.span(DenseMatrix(F, vecs.reshape(-1, self.n)))

    def complement_pivots(self) -> list:
        s = set(self.pivots)
        return [j for j in range(self.n) if j not in s]


def spin(seeds: DenseMatrix, gens: list) -> DenseMatrix:
    """Echelonised basis of the smallest gens-invariant subspace containing
    the rows of seeds."""
    F = seeds.field
    n = seeds.cols
    for g in gens:
        if g.rows != n or g.cols != n:
            raise DimensionError(f"generator of shape {g.shape} does not act on dimension {n}")
    R, piv = _rref(F, seeds.a)
    space = Subspace(F, R.reshape(-1, n), piv, n)
    frontier = space.basis
    while frontier.shape[0]:
        images = np.vstack([F.matmul(frontier, g.a) for g in gens]) if gens else np.zeros((0, n), dtype=np.int64)
        res = space.residual(images)
        Rn, pn = _rref(F, res)
        if not pn:
            break
        # merge the new rows into the reduced basis
        old = space.basis
        if old.shape[0]:
            old = F.sub(old, F.matmul(old[:, pn], Rn))
        merged = np.vstack([old, Rn])
        allpiv = space.pivots + pn
        order = np.argsort(allpiv, kind="stable")
        space = Subspace(F, merged[order], [allpiv[i] for i in order], n)
        frontier = Rn
    return space.matrix()


def charpoly(M: DenseMatrix) -> np.ndarray:
    """Characteristic polynomial (codes, lowest degree first) via Krylov
    spaces: the product of the relative minimal polynomials of successive
    cyclic subspaces."""
    F = M.field
    n = M.rows
    if n != M.cols:
        raise DimensionError("charpoly of a non-square matrix")
    A = M.a
    basis = np.zeros((0, n), dtype=np.int64)  # reduced echelon rows
    piv: list[int] = []
    trans = np.zeros((0, 0), dtype=np.int64)  # basis = trans @ krylov
    result = np.array([1], dtype=np.int64)
    total = 0
    start = 0
    while total < n:
        while start < n and start in set(piv):
            start += 1
        v = np.zeros(n, dtype=np.int64)
        v[start] = 1
        seg_start = total
        while True:
            w = v
            if piv:
                c = w[piv]
                res = F.sub(w, F.matmul(c, basis))
            else:
                c = np.zeros(0, dtype=np.int64)
                res = w.copy()
            nz = np.flatnonzero(res)
            if not nz.size:
                # w = c @ basis = (c @ trans) @ krylov
                coords = F.matmul(c, trans) if len(c) else np.zeros(0, dtype=np.int64)
                seg = coords[seg_start:total]
                poly = np.concatenate([F.neg(seg), [1]])
                result = polys.mul(F, result, poly)
                break
            pc = int(nz[0])
            inv = int(F.inv(res[pc]))
            res = F.mul(inv, res)
            # new krylov vector index = total; res = inv*(w - c@basis)
            new_trans_row = np.zeros(total + 1, dtype=np.int64)
            if len(c):
                new_trans_row[:total] = F.neg(F.mul(inv, F.matmul(c, trans)))
            new_trans_row[total] = inv
            if basis.shape[0]:
                f = basis[:, pc].copy()
                basis = F.sub(basis, F.mul(f[:, None], res[None, :]))
                trans = np.hstack([trans, np.zeros((trans.shape[0], 1), dtype=np.int64)])
                trans = F.sub(trans, F.mul(f[:, None], new_trans_row[None, :]))
            basis = np.vstack([basis, res])
            trans = np.vstack([np.hstack([trans, np.zeros((trans.shape[0], total + 1 - trans.shape[1]), dtype=np.int64)]), new_trans_row]) if trans.size or total else new_trans_row.reshape(1, 1)
            piv.append(pc)
            total += 1
            v = F.matmul(v, A)
    return result


def poly_at(F: FieldSpec, f: np.ndarray, M: DenseMatrix) -> DenseMatrix:
    """f(M) by Horner's rule."""
    n = M.rows
    acc = np.zeros((n, n), dtype=np.int64)
    eye = np.eye(n, dtype=np.int64)
    for c in polys.trim(f)[::-1]:
        acc = F.matmul(acc, M.a)
        acc = F.add(acc, F.mul(int(c), eye))
    return DenseMatrix(F, acc)
