"""Permutation groups small enough to list every element.

Permutations are 0-based image arrays acting on the right: the point ``i``
is sent to ``g[i]`` and the product ``g*h`` (first g, then h) is ``h[g]``.
Elements are enumerated breadth-first from the generators; each element is
looked up by a packed integer key (base 16 digits for degree <= 16, a dict
keyed by bytes otherwise).
"""
from __future__ import annotations

import json
from functools import cached_property
from math import gcd

import numpy as np

DEFAULT_CAP = 200_000


class GroupSizeError(ValueError):
    pass


class NotASubgroupError(ValueError):
    pass


def _lcm(a, b):
    return a * b // gcd(a, b)


def perm_order(g: np.ndarray) -> int:
    seen = np.zeros(len(g), dtype=bool)
    order = 1
    for i in range(len(g)):
        if not seen[i]:
            n = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = g[j]
                n += 1
            order = _lcm(order, n)
    return order


def cycles(g) -> list[tuple[int, ...]]:
    seen = set()
    out = []
    for i in range(len(g)):
        if i in seen:
            continue
        c = [i]
        seen.add(i)
        j = int(g[i])
        while j != i:
            c.append(j)
            seen.add(j)
            j = int(g[j])
        if len(c) > 1:
            out.append(tuple(c))
    return out


def from_cycles(n: int, cycs) -> np.ndarray:
    """Permutation of {0..n-1} from 1-based cycles."""
    g = np.arange(n)
    for c in cycs:
        c = [x - 1 for x in c]
        for a, b in zip(c, c[1:] + c[:1]):
            g[a] = b
    return g


class PermGroupData:
    """A permutation group together with its full element list."""

    def __init__(self, gens, degree: int | None = None, name: str = "", cap: int | None = None):
        gens = [np.asarray(g, dtype=np.int64) for g in gens]
        if degree is None:
            degree = len(gens[0]) if gens else 1
        for g in gens:
            if len(g) != degree or sorted(g.tolist()) != list(range(degree)):
                raise ValueError("generator is not a permutation of the stated degree")
        # the identity generates the trivial group; keep it out of the BFS
        self.gens = [g for g in gens if not np.array_equal(g, np.arange(degree))]
        self.degree = degree
        self.name = name
        self.cap = DEFAULT_CAP if cap is None else cap
        self._enumerate()

    # -- enumeration ---------------------------------------------------------
    def _keys(self, perms: np.ndarray):
        if self.degree <= 16:
            w = (np.uint64(16) ** np.arange(self.degree, dtype=np.uint64))
            return perms.astype(np.uint64) @ w
        return [bytes(row.astype(np.uint8)) for row in perms]

    def _enumerate(self):
        n = self.degree
        ident = np.arange(n, dtype=np.int64)[None, :]
        elems = [ident]
        parent = [np.array([-1])]
        via = [np.array([-1])]
        small = n <= 16
        if small:
            seen = set(self._keys(ident).tolist())
        else:
            seen = set(self._keys(ident))
        frontier = ident
        frontier_idx = np.array([0])
        total = 1
        while len(frontier):
            new_rows, new_par, new_via = [], [], []
            for gi, g in enumerate(self.gens):
                cand = g[frontier]  # frontier element followed by g
                keys = self._keys(cand)
                if small:
                    keys_l = keys.tolist()
                else:
                    keys_l = keys
                keep = []
                for t, kk in enumerate(keys_l):
                    if kk not in seen:
                        seen.add(kk)
                        keep.append(t)
                if keep:
                    keep = np.array(keep)
                    new_rows.append(cand[keep])
                    new_par.append(frontier_idx[keep])
                    new_via.append(np.full(len(keep), gi))
            if not new_rows:
                break
            frontier = np.vstack(new_rows)
            frontier_idx = np.arange(total, total + len(frontier))
            total += len(frontier)
            if total > self.cap:
                raise GroupSizeError(f"group order exceeds the enumeration cap {self.cap}")
            elems.append(frontier)
            parent.append(np.concatenate(new_par))
            via.append(np.concatenate(new_via))
        self.elements = np.vstack(elems)
        self.order = len(self.elements)
        self.parent = np.concatenate(parent)
        self.via = np.concatenate(via)
        dtype = np.uint8 if n <= 255 else np.int64
        self.elements = self.elements.astype(dtype)
        if small:
            keys = self._keys(self.elements)
            self._sort = np.argsort(keys)
            self._sorted_keys = keys[self._sort]
            self._dict = None
        else:
            self._dict = {k: i for i, k in enumerate(self._keys(self.elements))}

    # -- lookups -------------------------------------------------------------
    def index(self, perms) -> np.ndarray:
        """Indices of permutations (rows) in the element list; -1 if absent."""
        perms = np.atleast_2d(np.asarray(perms))
        if self._dict is None:
            keys = self._keys(perms)
            pos = np.searchsorted(self._sorted_keys, keys)
            pos = np.minimum(pos, self.order - 1)
            found = self._sorted_keys[pos] == keys
            return np.where(found, self._sort[pos], -1)
        return np.array([self._dict.get(k, -1) for k in self._keys(perms)], dtype=np.int64)

    def index_of(self, perm) -> int:
        return int(self.index(perm)[0])

    def contains(self, perm) -> bool:
        return self.index_of(perm) >= 0

    def elt(self, i: int) -> np.ndarray:
        return self.elements[i].astype(np.int64)

    def mul(self, i, j):
        """Index of element i followed by element j (arrays allowed)."""
        a = self.elements[np.atleast_1d(i)]
        b = self.elements[np.atleast_1d(j)]
        prod = np.take_along_axis(b, a.astype(np.int64), axis=1)
        return self.index(prod)

    @cached_property
    def inverse_index(self) -> np.ndarray:
        inv = np.argsort(self.elements, axis=1)
        return self.index(inv)

    def word(self, i: int) -> list[int]:
        """Generator indices whose product (left to right) is element i."""
        w = []
        while i > 0:
            w.append(int(self.via[i]))
            i = int(self.parent[i])
        return w[::-1]

    def gen_index(self) -> list[int]:
        return [self.index_of(g) for g in self.gens]

    # -- conjugacy classes -------------------------------------------------
    @cached_property
    def _class_data(self):
        N = self.order
        label = np.full(N, -1, dtype=np.int64)
        raw = []
        ginv = [np.argsort(g) for g in self.gens]
        for start in range(N):
            if label[start] >= 0:
                continue
            cid = len(raw)
            label[start] = cid
            members = [start]
            frontier = np.array([start])
            while len(frontier):
                x = self.elements[frontier].astype(np.int64)
                found = []
                for g, gi in zip(self.gens, ginv):
                    conj = g[x[:, gi]]  # g^-1 x g
                    idx = self.index(conj)
                    idx = np.unique(idx[label[idx] < 0])
                    if len(idx):
                        label[idx] = cid
                        found.append(idx)
                frontier = np.concatenate(found) if found else np.array([], dtype=np.int64)
                members.extend(frontier.tolist())
            raw.append(np.sort(np.array(members)))
        orders = [perm_order(self.elt(int(m[0]))) for m in raw]
        keys = self._keys(self.elements)
        minkey = [min(keys[m].tolist()) if self._dict is None else min(keys[i] for i in m) for m in raw]
        perm = sorted(range(len(raw)), key=lambda c: (orders[c], len(raw[c]), minkey[c]))
        rank = np.empty(len(raw), dtype=np.int64)
        rank[perm] = np.arange(len(raw))
        classes = [raw[c] for c in perm]
        class_of = rank[label]
        reps = []
        for m in classes:
            # representative: element of least key in the class
            km = keys[m] if self._dict is None else [keys[i] for i in m]
            reps.append(int(m[int(np.argmin(km))]))
        return classes, class_of, reps, [orders[c] for c in perm]

    @property
    def classes(self) -> list[np.ndarray]:
        return self._class_data[0]

    @property
    def class_of(self) -> np.ndarray:
        return self._class_data[1]

    @property
    def class_reps(self) -> list[int]:
        return self._class_data[2]

    @property
    def class_orders(self) -> list[int]:
        return self._class_data[3]

    @property
    def num_classes(self) -> int:
        return len(self.classes)

    @property
    def class_sizes(self) -> list[int]:
        return [len(c) for c in self.classes]

    @property
    def centralizer_orders(self) -> list[int]:
        return [self.order // len(c) for c in self.classes]

    @cached_property
    def exponent(self) -> int:
        e = 1
        for o in self.class_orders:
            e = _lcm(e, o)
        return e

    def power_map(self, t: int) -> list[int]:
        """Class of g^t for each class representative g."""
        out = []
        for r in self.class_reps:
            g = self.elt(r)
            h = np.arange(self.degree)
            for _ in range(t % self.class_orders[len(out)] if self.class_orders[len(out)] else 0):
                h = g[h]
            out.append(int(self.class_of[self.index_of(h)]))
        return out

    def inverse_classes(self) -> list[int]:
        return [int(self.class_of[self.inverse_index[r]]) for r in self.class_reps]

    def class_names(self) -> list[str]:
        names = []
        counts: dict[int, int] = {}
        for o in self.class_orders:
            counts[o] = counts.get(o, 0) + 1
            names.append(f"{o}{chr(ord('A') + counts[o] - 1)}")
        return names

    def p_regular_classes(self, p: int) -> list[int]:
        return [i for i, o in enumerate(self.class_orders) if o % p]

    # -- subgroups -------------------------------------------------------------
    def subgroup(self, gens, name: str = "") -> "Subgroup":
        return Subgroup(self, gens, name=name)

    def subgroup_from_indices(self, idx, name: str = "") -> "Subgroup":
        idx = np.unique(np.asarray(idx, dtype=np.int64))
        return Subgroup(self, [self.elt(int(i)) for i in _small_generating_set(self, idx)], name=name)

    def whole(self) -> "Subgroup":
        return Subgroup(self, self.gens, name=self.name)

    def trivial(self) -> "Subgroup":
        return Subgroup(self, [], name="1")

    def to_json(self) -> dict:
        return {"degree": self.degree, "gens": [[int(x) + 1 for x in g] for g in self.gens], "name": self.name}

    def __repr__(self):
        return f"PermGroupData({self.name or 'group'}, order={self.order})"


def _small_generating_set(G: PermGroupData, idx: np.ndarray) -> list[int]:
    """Greedy generating set for the subgroup whose element indices are idx."""
    target = set(idx.tolist())
    gens: list[int] = []
    span = {0}
    for i in sorted(target):
        if i in span:
            continue
        gens.append(i)
        span = set(_closure(G, gens).tolist())
    if span != target:
        raise NotASubgroupError("element set is not closed under multiplication")
    return gens


def _closure(G: PermGroupData, gen_idx) -> np.ndarray:
    """Indices of the subgroup of G generated by the given element indices."""
    members = np.zeros(G.order, dtype=bool)
    members[0] = True
    frontier = np.array([0])
    gen_idx = [int(g) for g in gen_idx]
    while len(frontier):
        new = []
        for g in gen_idx:
            prod = G.mul(frontier, np.full(len(frontier), g))
            prod = np.unique(prod[~members[prod]])
            members[prod] = True
            new.append(prod)
        frontier = np.concatenate(new) if new else np.array([], dtype=np.int64)
    return np.flatnonzero(members)


class Subgroup:
    """A subgroup of an enumerated group, stored as element indices."""

    def __init__(self, G: PermGroupData, gens, name: str = ""):
        self.G = G
        gens = [np.asarray(g, dtype=np.int64) for g in gens]
        gidx = []
        for g in gens:
            i = G.index_of(g)
            if i < 0:
                raise NotASubgroupError("generator is not an element of the group")
            gidx.append(i)
        self.gens = gens
        self.gen_idx = gidx
        self.idx = _closure(G, gidx)
        self.order = len(self.idx)
        self.name = name
        self._mask = np.zeros(G.order, dtype=bool)
        self._mask[self.idx] = True

    def contains_idx(self, i) -> np.ndarray:
        return self._mask[np.asarray(i)]

    def as_group(self) -> PermGroupData:
        return PermGroupData(self.gens, degree=self.G.degree, name=self.name, cap=max(self.G.cap, self.order))

    def key(self) -> bytes:
        return self.idx.astype(np.int64).tobytes()

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.G is other.G and np.array_equal(self.idx, other.idx)

    def __hash__(self):
        return hash(self.key())

    def is_subgroup_of(self, other: "Subgroup") -> bool:
        return bool(other._mask[self.idx].all())

    def conjugate(self, x: int) -> "Subgroup":
        """x^-1 S x."""
        G = self.G
        xinv = int(G.inverse_index[x])
        gens = []
        for gi in self.gen_idx:
            c = G.mul(G.mul([xinv], [gi]), [x])
            gens.append(G.elt(int(c[0])))
        return Subgroup(G, gens, name=self.name)

    def __repr__(self):
        return f"Subgroup({self.name or '?'}, order={self.order})"


# -- searches in an enumerated group -----------------------------------------

def transversal(G: PermGroupData, H: Subgroup) -> list[int]:
    """Right coset representatives (element indices) of H in G, identity first."""
    if H.G is not G:
        raise NotASubgroupError("subgroup belongs to a different group")
    coset = np.full(G.order, -1, dtype=np.int64)
    reps = []
    for x in range(G.order):
        if coset[x] >= 0:
            continue
        members = G.mul(H.idx, np.full(H.order, x))
        coset[members] = len(reps)
        reps.append(x)
    return reps


def coset_map(G: PermGroupData, H: Subgroup, reps) -> np.ndarray:
    """For every element, the index of its right coset Hx in reps."""
    coset = np.full(G.order, -1, dtype=np.int64)
    for c, x in enumerate(reps):
        coset[G.mul(H.idx, np.full(H.order, x))] = c
    return coset


def coset_action(G: PermGroupData, H: Subgroup, reps=None) -> list[np.ndarray]:
    """Permutations of the right cosets induced by the generators of G."""
    reps = transversal(G, H) if reps is None else reps
    cmap = coset_map(G, H, reps)
    out = []
    for gi in G.gen_index():
        out.append(cmap[G.mul(np.array(reps), np.full(len(reps), gi))])
    return out


def _conj_all(G: PermGroupData, y: int) -> np.ndarray:
    """Indices of x^-1 y x for every x in G (in element order)."""
    E = G.elements.astype(np.int64)
    Einv = G.elements[G.inverse_index].astype(np.int64)
    yv = G.elt(y)
    # x^-1 y x maps i -> x[y[x^-1[i]]]
    conj = np.take_along_axis(E, yv[Einv], axis=1)
    return G.index(conj)


def normalizer(G: PermGroupData, S: Subgroup) -> Subgroup:
    ok = np.ones(G.order, dtype=bool)
    for gi in S.gen_idx:
        ok &= S.contains_idx(_conj_all(G, gi))
    return G.subgroup_from_indices(np.flatnonzero(ok), name=f"N({S.name})" if S.name else "")


def centralizer(G: PermGroupData, x: int) -> Subgroup:
    return G.subgroup_from_indices(np.flatnonzero(_conj_all(G, x) == x))


def element_orders(G: PermGroupData) -> np.ndarray:
    return np.array(G.class_orders)[G.class_of]


def p_part(n: int, p: int) -> int:
    r = 1
    while n % p == 0:
        n //= p
        r *= p
    return r


def sylow(G: PermGroupData, p: int) -> Subgroup:
    target = p_part(G.order, p)
    orders = element_orders(G)
    S = G.trivial()
    ppow = np.array([p_part(int(o), p) == o for o in orders])
    while S.order < target:
        N = normalizer(G, S)
        cand = N.idx[ppow[N.idx] & ~S.contains_idx(N.idx)]
        x = int(cand[0])
        S = Subgroup(G, S.gens + [G.elt(x)])
    S.name = f"Syl{p}"
    return S


def are_conjugate(G: PermGroupData, S: Subgroup, T: Subgroup) -> int | None:
    """Some x with x^-1 S x = T, or None."""
    if S.order != T.order:
        return None
    ok = np.ones(G.order, dtype=bool)
    for gi in S.gen_idx:
        ok &= T.contains_idx(_conj_all(G, gi))
    hits = np.flatnonzero(ok)
    return int(hits[0]) if len(hits) else None


def p_subgroup_classes(G: PermGroupData, p: int) -> list[Subgroup]:
    """Representatives of the conjugacy classes of p-subgroups, by order."""
    orders = element_orders(G)
    ppow = np.array([p_part(int(o), p) == o for o in orders])
    reps = [G.trivial()]
    level = [reps[0]]
    while level:
        nxt: list[Subgroup] = []
        for S in level:
            N = normalizer(G, S)
            for x in N.idx[ppow[N.idx] & ~S.contains_idx(N.idx)]:
                xp = G.elt(int(x))
                y = np.arange(G.degree)
                for _ in range(p):
                    y = xp[y]
                if not S.contains_idx(G.index_of(y)):
                    continue
                T = Subgroup(G, S.gens + [xp])
                if any(T == U or are_conjugate(G, T, U) is not None for U in nxt):
                    continue
                nxt.append(T)
        reps.extend(nxt)
        level = nxt
    return reps


def double_coset_count(G: PermGroupData, H: Subgroup, K: Subgroup) -> int:
    seen = np.zeros(G.order, dtype=bool)
    count = 0
    for x in range(G.order):
        if seen[x]:
            continue
        count += 1
        hx = G.mul(H.idx, np.full(H.order, x))
        for k in K.idx:
            seen[G.mul(hx, np.full(len(hx), k))] = True
    return count


# -- catalogue and file format -------------------------------------------------

def cyclic(n: int) -> PermGroupData:
    return PermGroupData([np.roll(np.arange(n), -1)], degree=n, name=f"C{n}")


def symmetric(n: int) -> PermGroupData:
    if n < 2:
        return PermGroupData([], degree=max(n, 1), name=f"S{n}")
    gens = [from_cycles(n, [(1, 2)])]
    if n > 2:
        gens.append(from_cycles(n, [tuple(range(1, n + 1))]))
    return PermGroupData(gens, degree=n, name=f"S{n}")


def alternating(n: int, cap: int | None = None) -> PermGroupData:
    if n < 3:
        return PermGroupData([], degree=max(n, 1), name=f"A{n}")
    if n % 2:
        gens = [from_cycles(n, [(1, 2, 3)]), from_cycles(n, [tuple(range(1, n + 1))])]
    else:
        gens = [from_cycles(n, [(1, 2, 3)]), from_cycles(n, [tuple(range(2, n + 1))])]
    return PermGroupData(gens, degree=n, name=f"A{n}", cap=cap)


def sd16() -> PermGroupData:
    r = np.array([(i + 1) % 8 for i in range(8)])
    s = np.array([(3 * i) % 8 for i in range(8)])
    return PermGroupData([r, s], degree=8, name="SD16")


def _gl2_3():
    mats = []
    for a in range(81):
        m = np.array([a // 27, (a // 9) % 3, (a // 3) % 3, a % 3]).reshape(2, 2)
        if round(np.linalg.det(m)) % 3:
            mats.append(m)
    return mats


def _affine_perm(M, t):
    # points v = (x, y) numbered 3x + y; v -> vM + t
    out = np.zeros(9, dtype=np.int64)
    for x in range(3):
        for y in range(3):
            w = (np.array([x, y]) @ M + np.asarray(t)) % 3
            out[3 * x + y] = 3 * w[0] + w[1]
    return out


def psd16() -> PermGroupData:
    """Affine group of the plane over GF(3) with linear part a Sylow
    2-subgroup (semidihedral of order 16) of GL(2,3); order 144 on 9 points."""
    mats = _gl2_3()

    def order(m):
        k, x = 1, m % 3
        while not np.array_equal(x, np.eye(2, dtype=np.int64)):
            x = (x @ m) % 3
            k += 1
        return k

    a = next(m for m in mats if order(m) == 8)
    lin = [_affine_perm(a, (0, 0))]
    for b in mats:
        H = PermGroupData(lin + [_affine_perm(b, (0, 0))], degree=9)
        if H.order == 16:
            lin.append(_affine_perm(b, (0, 0)))
            break
    gens = lin + [_affine_perm(np.eye(2, dtype=np.int64), (0, 1))]
    return PermGroupData(gens, degree=9, name="P:SD16")


CATALOGUE = {
    "psd16": psd16,
    "sd16": sd16,
    "a6": lambda: alternating(6),
    "a9": lambda: alternating(9),
    "s3": lambda: symmetric(3),
    "c3": lambda: cyclic(3),
}


def group_from_json(d: dict, cap: int | None = None) -> PermGroupData:
    n = int(d["degree"])
    gens = []
    for g in d["gens"]:
        if len(g) != n:
            raise ValueError("generator length differs from degree")
        gens.append(np.array([int(x) - 1 for x in g], dtype=np.int64))
    return PermGroupData(gens, degree=n, name=d.get("name", ""), cap=cap)


def load_group(path, cap: int | None = None) -> PermGroupData:
    with open(path) as fh:
        return group_from_json(json.load(fh), cap=cap)


def save_group(G: PermGroupData, path):
    with open(path, "w") as fh:
        json.dump(G.to_json(), fh)
        fh.write("\n")
