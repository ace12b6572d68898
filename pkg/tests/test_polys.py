import numpy as np
from hypothesis import given, strategies as st

from blockbench import polys
from blockbench.gfq import ff_make


def _prod(F, factors):
    f = np.array([1], dtype=np.int64)
    for g, e in factors:
        for _ in range(e):
            f = polys.mul(F, f, g)
    return f


def test_divmod():
    F = ff_make(3)
    f = np.array([1, 0, 0, 1])  # x^3 + 1 = (x + 1)^3 over GF(3)
    q, r = polys.divmod_(F, f, np.array([1, 1]))
    assert polys.deg(r) < 0
    assert np.array_equal(polys.trim(q), [1, 2, 1])


def test_factor_cube():
    F = ff_make(3)
    fac = polys.factor(F, np.array([1, 0, 0, 1]))
    assert [(list(g), e) for g, e in fac] == [([1, 1], 3)]


def test_factor_x8_minus_1_over_gf9_splits():
    F = ff_make(3, 2)
    f = np.zeros(9, dtype=np.int64)
    f[0], f[8] = F.neg(1), 1
    fac = polys.factor(F, f)
    assert len(fac) == 8 and all(len(g) == 2 and e == 1 for g, e in fac)
    assert sorted(polys.roots(F, f)) == list(range(1, 9))


def test_irreducible_stays_whole():
    F = ff_make(3)
    f = np.array([2, 2, 1])  # x^2 + 2x + 2, the GF(9) defining polynomial
    fac = polys.factor(F, f)
    assert len(fac) == 1 and fac[0][1] == 1


@given(st.sampled_from([(3, 1), (3, 2), (2, 3), (5, 1)]), st.data())
def test_factor_product_recovers_input(pk, data):
    F = ff_make(*pk)
    n = data.draw(st.integers(1, 7))
    coeffs = data.draw(st.lists(st.integers(0, F.q - 1), min_size=n, max_size=n))
    f = np.array(coeffs + [1], dtype=np.int64)
    fac = polys.factor(F, f)
    assert np.array_equal(polys.trim(_prod(F, fac)), polys.trim(f))
    for g, _ in fac:
        assert g[-1] == 1


@given(st.sampled_from([(3, 1), (3, 2), (5, 1)]), st.data())
def test_from_roots_vanishes(pk, data):
    F = ff_make(*pk)
    rts = data.draw(st.lists(st.integers(0, F.q - 1), min_size=1, max_size=5))
    f = polys.from_roots(F, rts)
    for r in rts:
        assert polys.evaluate(F, f, r) == 0
    assert set(polys.roots(F, f)) == set(rts)


@given(st.data())
def test_gcd_divides_both(data):
    F = ff_make(5)
    a = np.array(data.draw(st.lists(st.integers(0, 4), min_size=1, max_size=6)) + [1])
    b = np.array(data.draw(st.lists(st.integers(0, 4), min_size=1, max_size=6)) + [1])
    g = polys.gcd(F, a, b)
    assert polys.deg(polys.rem(F, a, g)) < 0
    assert polys.deg(polys.rem(F, b, g)) < 0
