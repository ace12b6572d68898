import numpy as np
import pytest
from hypothesis import given, strategies as st

from blockbench.gfq import ff_make
from blockbench.linalg import (
    DenseMatrix,
    DimensionError,
    Subspace,
    charpoly,
    echelonize,
    inverse,
    is_invertible,
    kron,
    nullspace,
    poly_at,
    rank,
    solve,
    spin,
)

GF3 = ff_make(3)
GF9 = ff_make(3, 2)
FIELDS = [ff_make(2), GF3, GF9, ff_make(5), ff_make(2, 3)]


@st.composite
def matrices(draw, F=None, max_dim=7):
    F = draw(st.sampled_from(FIELDS)) if F is None else F
    r = draw(st.integers(0, max_dim))
    c = draw(st.integers(1, max_dim))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    a = F.random(rng, size=(r, c))
    # sometimes force low rank
    if r > 2 and draw(st.booleans()):
        a[-1] = F.add(a[0], a[1])
    return DenseMatrix(F, a)


def test_echelon_examples():
    assert echelonize(DenseMatrix.identity(GF3, 3)).rank == 3
    assert echelonize(DenseMatrix.zeros(GF3, 4, 7)).rank == 0
    assert echelonize(DenseMatrix(GF3, [[1, 2], [2, 1]])).rank == 1


def test_nullspace_examples():
    assert nullspace(DenseMatrix.identity(GF3, 4)).rows == 0
    assert nullspace(DenseMatrix.zeros(GF3, 3, 3)).rows == 3
    N = nullspace(DenseMatrix(GF3, [[1, 2], [2, 1]]))
    assert N.rows == 1
    assert np.array_equal(N.a[0], [1, 1])


def _c3_regular(F):
    g = np.zeros((3, 3), dtype=np.int64)
    g[[0, 1, 2], [1, 2, 0]] = 1
    return [DenseMatrix(F, g)]


def test_spin_examples():
    gens = _c3_regular(GF3)
    assert spin(DenseMatrix(GF3, [[1, 1, 1]]), gens).rows == 1
    assert spin(DenseMatrix(GF3, [[1, 0, 0]]), gens).rows == 3
    seeds = DenseMatrix(GF3, [[1, 2, 0], [2, 1, 0]])
    assert spin(seeds, [DenseMatrix.identity(GF3, 3)]).rows == rank(seeds)


def test_spin_dimension_mismatch():
    with pytest.raises(DimensionError):
        spin(DenseMatrix(GF3, [[1, 0]]), _c3_regular(GF3))


def test_kron_examples():
    assert kron(DenseMatrix.identity(GF3, 2), DenseMatrix.identity(GF3, 3)) == DenseMatrix.identity(GF3, 6)
    A = DenseMatrix(GF9, [[1, 2], [3, 4]])
    assert kron(A, DenseMatrix(GF9, [[1]])) == A
    rng = np.random.default_rng(7)
    A, B = DenseMatrix.random(GF9, 3, 3, rng), DenseMatrix.random(GF9, 3, 3, rng)
    assert kron(A, B).trace() == GF9.mul(A.trace(), B.trace())


def test_kron_field_mismatch():
    with pytest.raises(DimensionError):
        kron(DenseMatrix.identity(GF3, 2), DenseMatrix.identity(GF9, 2))


def test_text_roundtrip():
    rng = np.random.default_rng(3)
    for F in (GF3, ff_make(3, 4)):
        A = DenseMatrix.random(F, 4, 5, rng)
        assert DenseMatrix.from_text(A.to_text()) == A
    assert DenseMatrix.from_text("3 1 2 2\n12\n01\n") == DenseMatrix(GF3, [[1, 2], [0, 1]])
    with pytest.raises(ValueError):
        DenseMatrix.from_text("3 1 2 2\n12\n0\n")
    with pytest.raises(ValueError):
        DenseMatrix.from_text("3 1 1 2\n13\n")


def test_inverse_singular():
    with pytest.raises(ZeroDivisionError):
        inverse(DenseMatrix(GF3, [[1, 2], [2, 1]]))


@given(matrices())
def test_rank_nullity(M):
    assert rank(M) + nullspace(M).rows == M.rows
    N = nullspace(M)
    if N.rows:
        assert (N @ M).is_zero()


@given(matrices())
def test_echelonize_is_projection(M):
    E1 = echelonize(M)
    E2 = echelonize(E1.R)
    assert E1.R == E2.R and E1.pivots == E2.pivots
    assert E1.rank == rank(M)


@given(matrices(), st.integers(0, 2**32 - 1))
def test_solve_consistency(M, seed):
    rng = np.random.default_rng(seed)
    F = M.field
    if M.rows == 0:
        return
    X0 = DenseMatrix.random(F, 2, M.rows, rng)
    B = X0 @ M
    X = solve(M, B)
    assert X is not None and X @ M == B


@given(st.sampled_from(FIELDS), st.integers(1, 6), st.integers(0, 2**32 - 1))
def test_inverse(F, n, seed):
    M = DenseMatrix.random(F, n, n, np.random.default_rng(seed))
    if is_invertible(M):
        assert M @ inverse(M) == DenseMatrix.identity(F, n)
    else:
        assert rank(M) < n


@given(st.sampled_from(FIELDS), st.integers(1, 3), st.integers(1, 3), st.integers(0, 2**32 - 1))
def test_kron_mixed_product(F, m, n, seed):
    rng = np.random.default_rng(seed)
    A, C = DenseMatrix.random(F, m, m, rng), DenseMatrix.random(F, m, m, rng)
    B, D = DenseMatrix.random(F, n, n, rng), DenseMatrix.random(F, n, n, rng)
    assert kron(A, B) @ kron(C, D) == kron(A @ C, B @ D)


@given(st.sampled_from(FIELDS), st.integers(1, 6), st.integers(0, 2**32 - 1))
def test_spin_is_invariant_and_idempotent(F, n, seed):
    rng = np.random.default_rng(seed)
    gens = [DenseMatrix.random(F, n, n, rng) for _ in range(2)]
    seeds = DenseMatrix.random(F, 1, n, rng)
    W = spin(seeds, gens)
    S = Subspace.span(W)
    for g in gens:
        if W.rows:
            assert S.contains((W @ g).a)
    assert spin(W, gens) == W


@given(st.sampled_from(FIELDS), st.integers(1, 7), st.integers(0, 2**32 - 1))
def test_cayley_hamilton(F, n, seed):
    M = DenseMatrix.random(F, n, n, np.random.default_rng(seed))
    f = charpoly(M)
    assert len(f) == n + 1 and f[-1] == 1
    assert poly_at(F, f, M).is_zero()


def test_subspace_ops():
    A = Subspace.span(DenseMatrix(GF3, [[1, 0, 0, 0], [0, 1, 0, 0]]))
    B = Subspace.span(DenseMatrix(GF3, [[0, 1, 0, 0], [0, 0, 1, 0]]))
    assert A.sum(B).dim == 3
    I = A.intersect(B)
    assert I.dim == 1 and I.contains(np.array([0, 2, 0, 0]))
    assert A.contains_space(I) and not A.contains_space(B)
    assert A.complement_pivots() == [2, 3]
    assert A == Subspace.span(DenseMatrix(GF3, [[1, 1, 0, 0], [2, 0, 0, 0]]))
