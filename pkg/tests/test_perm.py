import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from blockbench.perm import (
    CATALOGUE,
    GroupSizeError,
    NotASubgroupError,
    PermGroupData,
    Subgroup,
    alternating,
    centralizer,
    coset_map,
    cyclic,
    double_coset_count,
    group_from_json,
    load_group,
    normalizer,
    p_subgroup_classes,
    psd16,
    save_group,
    sd16,
    sylow,
    symmetric,
    transversal,
)


@pytest.fixture(scope="module")
def G():
    return psd16()


@pytest.fixture(scope="module")
def a9():
    return alternating(9)


def test_sd16_from_presentation():
    H = sd16()
    assert H.order == 16
    r, s = H.gens
    sinv = np.argsort(s)
    # conjugating r by s gives r^3 (apply s^-1, then r, then s)
    assert np.array_equal(s[r[sinv]], r[r[r]])
    assert max(H.class_orders) == 8


def test_orders(G, a9):
    assert G.order == 144
    assert a9.order == 181440
    assert symmetric(3).order == 6


def test_psd16_classes(G):
    assert G.num_classes == 9
    assert sorted(G.centralizer_orders) == sorted([144, 16, 12, 18, 8, 4, 6, 8, 8])
    assert G.class_names() == ["1A", "2A", "2B", "3A", "4A", "4B", "6A", "8A", "8B"]
    assert G.centralizer_orders == [144, 16, 12, 18, 8, 4, 6, 8, 8]


def test_s3_classes():
    S3 = symmetric(3)
    assert sorted(S3.class_sizes) == [1, 2, 3]


def test_a9_classes(a9):
    assert a9.num_classes == 18


@pytest.mark.parametrize("name", sorted(set(CATALOGUE) - {"a9"}))
def test_class_partition(name):
    H = CATALOGUE[name]()
    _check_class_partition(H)


def test_a9_class_partition(a9):
    _check_class_partition(a9)


def _check_class_partition(H):
    sizes = H.class_sizes
    assert sum(sizes) == H.order
    assert all(H.order % s == 0 for s in sizes)
    assert sizes[0] == 1 and H.class_reps[0] == 0
    cls = H.class_of
    # each class is closed under conjugation by the generators
    inv = H.inverse_index
    for gi in H.gen_index():
        idx = np.arange(H.order)
        conj = H.mul(H.mul(np.full(H.order, inv[gi]), idx), np.full(H.order, gi))
        assert np.array_equal(cls[conj], cls)


def test_elements_closed(G):
    idx = np.arange(G.order)
    for j in (1, 17, 100):
        prod = G.mul(idx, np.full(G.order, j))
        assert len(set(prod.tolist())) == G.order
    inv = G.inverse_index
    assert np.all(G.mul(idx, inv) == 0)


def test_enumeration_cap():
    with pytest.raises(GroupSizeError, match="cap"):
        alternating(8, cap=1000)


def test_transversal_examples(G):
    assert transversal(G, G.whole()) == [0]
    assert sorted(transversal(G, G.trivial())) == list(range(G.order))
    P = sylow(G, 3)
    reps = transversal(G, P)
    assert len(reps) == 16 and reps[0] == 0


@given(st.integers(0, 143), st.integers(0, 143))
def test_transversal_partition(i, j):
    G = _psd16_cached()
    H = Subgroup(G, [G.elt(i), G.elt(j)])
    reps = transversal(G, H)
    assert len(reps) * H.order == G.order
    cm = coset_map(G, H, reps)
    assert (cm >= 0).all()
    assert np.bincount(cm).tolist() == [H.order] * len(reps)


_CACHE = {}


def _psd16_cached():
    if "G" not in _CACHE:
        _CACHE["G"] = psd16()
    return _CACHE["G"]


def test_normalizer_examples(G):
    P = sylow(G, 3)
    assert normalizer(G, P).order == 144
    assert centralizer(G, 0).order == 144
    Qs = [Q for Q in p_subgroup_classes(G, 3) if Q.order == 3]
    assert len(Qs) == 1
    assert normalizer(G, Qs[0]).order == 36


def test_sylow_examples(G):
    C6 = cyclic(6)
    assert sylow(C6, 3).order == 3
    P = sylow(G, 3)
    assert P.order == 9
    # elementary abelian: every element cubes to the identity
    assert all(np.array_equal(G.elt(int(i))[G.elt(int(i))][G.elt(int(i))], np.arange(9)) for i in P.idx)
    assert sylow(sd16(), 2).order == 16


@pytest.mark.parametrize("name,p", [("psd16", 2), ("psd16", 3), ("a6", 2), ("a6", 3), ("a6", 5), ("sd16", 3)])
def test_sylow_order_is_p_part(name, p):
    H = CATALOGUE[name]()
    n, pp = H.order, 1
    while n % p == 0:
        n //= p
        pp *= p
    assert sylow(H, p).order == pp


def test_p_subgroup_classes(G):
    orders = [Q.order for Q in p_subgroup_classes(G, 3)]
    assert orders == [1, 3, 9]


def test_double_cosets(G):
    P = sylow(G, 3)
    assert double_coset_count(G, P, P) == 16
    assert double_coset_count(G, G.whole(), G.trivial()) == 1


def test_not_a_subgroup(G):
    with pytest.raises(NotASubgroupError):
        Subgroup(G, [np.array([1, 0, 2, 3, 4, 5, 6, 7, 8])])


def test_group_json_roundtrip(tmp_path):
    H = sd16()
    path = tmp_path / "g.json"
    save_group(H, path)
    d = json.loads(path.read_text())
    assert d["degree"] == 8 and min(min(g) for g in d["gens"]) == 1
    H2 = load_group(path)
    assert H2.order == 16
    with pytest.raises(ValueError):
        group_from_json({"degree": 3, "gens": [[1, 2]]})
    with pytest.raises(ValueError):
        PermGroupData([np.array([0, 0, 1])])
