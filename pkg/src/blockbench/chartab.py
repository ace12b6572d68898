"""Ordinary character tables by the Dixon-Schneider method.

Central characters are found as common eigenvectors of the class matrices
over a prime field GF(l) with l = 1 mod exponent, then lifted to exact
cyclotomic integers by a discrete Fourier transform along the power maps.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt

import numpy as np

from .cyclotomic import CycInt
from .gfq import FieldSpec, ff_make, is_prime, p_part, reduce_cycint, reduction_field
from .linalg import DenseMatrix, _left_null, charpoly
from . import polys
from .perm import PermGroupData

TABLE_CAP = 250_000


class CharTableError(ValueError):
    pass


def class_mult_column(G: PermGroupData, j: int) -> np.ndarray:
    """Matrix A with A[i, k] = a_ijk, the structure constants of
    K_i K_j = sum_k a_ijk K_k."""
    r = G.num_classes
    A = np.zeros((r, r), dtype=np.int64)
    Cj = G.classes[j]
    yinv = G.elements[G.inverse_index[Cj]].astype(np.int64)
    for k, z in enumerate(G.class_reps):
        zv = G.elt(z)
        prod = zv[yinv]  # z then y^-1
        ci = G.class_of[G.index(prod)]
        A[:, k] = np.bincount(ci, minlength=r)
    return A


def class_mult_coeffs(G: PermGroupData, i: int, j: int) -> np.ndarray:
    """The vector (a_ijk)_k."""
    return class_mult_column(G, j)[i]


def working_prime(G: PermGroupData) -> int:
    e = G.exponent
    bound = 2 * isqrt(G.order) + 2
    l = e + 1
    while l <= bound or not is_prime(l):
        l += e
    return l


def _primitive_root(l: int) -> int:
    return ff_make(l).generator


@dataclass
class ClassInfo:
    rep: int
    size: int
    order: int
    centralizer: int
    name: str


@dataclass
class CharacterTable:
    group: PermGroupData
    classes: list
    irreducibles: list  # list of lists of CycInt, rows in canonical order
    exponent: int
    labels: list = field(default_factory=list)

    @property
    def degrees(self) -> list[int]:
        return [int(row[0]) for row in self.irreducibles]

    @property
    def class_names(self) -> list[str]:
        return [c.name for c in self.classes]

    @property
    def order(self) -> int:
        return self.group.order

    def __len__(self):
        return len(self.irreducibles)

    def row(self, i) -> list:
        return self.irreducibles[i]

    def character_index(self, label: str) -> int:
        return self.labels.index(label)

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "classes": [
                {"name": c.name, "size": c.size, "order": c.order, "centralizer": c.centralizer}
                for c in self.classes
            ],
            "characters": [
                {"label": lab, "values": [v.to_json() for v in row]}
                for lab, row in zip(self.labels, self.irreducibles)
            ],
        }


def _common_eigenvectors(G: PermGroupData, F: FieldSpec):
    """Row vectors w (w[0] = 1) with w A_j^T = lambda_j w for all j."""
    r = G.num_classes
    spaces = [np.eye(r, dtype=np.int64)]
    done = []
    for j in range(1, r):
        if not spaces:
            break
        At = class_mult_column(G, j).T % F.p  # w -> w A^T
        nxt = []
        for B in spaces:
            d = B.shape[0]
            # action on the subspace in coordinates: B A^T = R B
            img = F.matmul(B, At)
            R = _coords(F, B, img)
            cp = charpoly(DenseMatrix(F, R))
            for lam in polys.roots(F, cp):
                shifted = F.sub(R, F.mul(lam, np.eye(d, dtype=np.int64)))
                null = _left_null(F, shifted)
                if null.shape[0] == 0:
                    continue
                sub = F.matmul(null, B)
                (done if sub.shape[0] == 1 else nxt).append(sub)
        spaces = nxt
    if spaces:
        raise CharTableError("class matrices failed to split the centre")
    out = []
    for w in done:
        w = w[0]
        out.append(F.mul(int(F.inv(w[0])), w))
    if len(out) != r:
        raise CharTableError(f"found {len(out)} central characters for {r} classes")
    return out


def _coords(F, B, V):
    """Coordinates X with X B = V for B of full row rank."""
    aug = np.hstack([B.T, V.T])
    from .linalg import _rref

    R, piv = _rref(F, aug)
    d = B.shape[0]
    return R[:d, d:].T


def dixon_schneider(G: PermGroupData) -> CharacterTable:
    if G.order > TABLE_CAP:
        raise CharTableError(f"group order {G.order} exceeds the table cap {TABLE_CAP}")
    l = working_prime(G)
    F = ff_make(l)
    r = G.num_classes
    sizes = G.class_sizes
    inv_cls = G.inverse_classes()
    e = G.exponent
    z_e = F.power(_primitive_root(l), (l - 1) // e)
    omegas = _common_eigenvectors(G, F)
    rows = []
    orders = G.class_orders
    # power maps needed: for each class c of order m, classes of g^t, t < m
    pmaps = {t: G.power_map(t) for t in range(max(orders))}
    for w in omegas:
        s = 0
        for k in range(r):
            s = (s + int(w[k]) * int(w[inv_cls[k]]) * pow(sizes[k], -1, l)) % l
        d2 = G.order * pow(s, -1, l) % l
        deg = next((d for d in range(1, isqrt(G.order) + 1) if d * d % l == d2), None)
        if deg is None:
            raise CharTableError("degree does not lift to an integer")
        vals = [int(w[k]) * deg * pow(sizes[k], -1, l) % l for k in range(r)]
        row = []
        for k in range(r):
            m = orders[k]
            zm = F.power(z_e, e // m)
            mults = []
            for jj in range(m):
                acc = 0
                for t in range(m):
                    c = pmaps[t][k]
                    acc += vals[c] * pow(zm, (-jj * t) % m, l)
                mults.append(acc * pow(m, -1, l) % l)
            if sum(mults) != deg:
                raise CharTableError("eigenvalue multiplicities do not sum to the degree")
            row.append(CycInt.from_exponents(m, mults).simplify())
        rows.append(row)
    classes = [
        ClassInfo(rep=G.class_reps[k], size=sizes[k], order=orders[k], centralizer=G.order // sizes[k], name=nm)
        for k, nm in enumerate(G.class_names())
    ]
    rows.sort(key=_row_key)
    labels = _labels([int(r_[0]) for r_ in rows])
    T = CharacterTable(group=G, classes=classes, irreducibles=rows, exponent=e, labels=labels)
    return T


def _row_key(row):
    # degree ascending, then values in descending lexicographic order of
    # their complex embeddings (real part first)
    vals = []
    for v in row:
        z = complex(v)
        vals.append((-round(z.real, 9), -round(z.imag, 9)))
    return (int(row[0]), vals)


def _labels(degrees: list[int]) -> list[str]:
    labels = []
    count: dict[int, int] = {}
    for d in degrees:
        count[d] = count.get(d, 0) + 1
        labels.append(f"{d}{_suffix(count[d] - 1)}")
    return labels


def _suffix(i: int) -> str:
    s = ""
    i += 1
    while i:
        i, rem = divmod(i - 1, 26)
        s = chr(ord("a") + rem) + s
    return s


# -- class functions -----------------------------------------------------------

def inner_product(T: CharacterTable, phi, psi) -> CycInt:
    if len(phi) != len(T.classes) or len(psi) != len(T.classes):
        raise CharTableError("class function length does not match the class count")
    acc = CycInt.from_int(0)
    for c, a, b in zip(T.classes, phi, psi):
        acc = acc + CycInt.coerce(a) * CycInt.coerce(b).conj() * c.size
    return acc.simplify().exact_div(T.order)


def fusion_map(H: PermGroupData, G: PermGroupData) -> list[int]:
    """Class of G containing each class representative of H (H given on the
    same points as G)."""
    out = []
    for r in H.class_reps:
        i = G.index_of(H.elt(r))
        if i < 0:
            raise CharTableError("subgroup element missing from the group")
        out.append(int(G.class_of[i]))
    return out


def induce_classfn(TH: CharacterTable, phi, TG: CharacterTable, fusion) -> list:
    if len(fusion) != len(TH.classes) or len(phi) != len(TH.classes):
        raise CharTableError("fusion map does not match the subgroup classes")
    # ind(g) = |C_G(g)| / |H| * sum of |h^H| phi(h) over H-classes inside g^G
    out = []
    for k, cg in enumerate(TG.classes):
        acc = CycInt.from_int(0)
        for h, ch in enumerate(TH.classes):
            if fusion[h] == k:
                acc = acc + CycInt.coerce(phi[h]) * ch.size
        out.append((acc * cg.centralizer).simplify().exact_div(TH.order))
    return out


def permutation_character(T: CharacterTable, H_idx) -> list:
    """1_H induced to G, from the subgroup's element index set."""
    G = T.group
    out = []
    Hset = np.zeros(G.order, dtype=bool)
    Hset[np.asarray(H_idx)] = True
    for k, c in enumerate(T.classes):
        hits = int(Hset[G.classes[k]].sum())
        out.append(CycInt.from_int(hits * c.centralizer // len(H_idx)))
    return out


def decompose_character(T: CharacterTable, phi) -> list[int]:
    return [int(inner_product(T, phi, chi)) for chi in T.irreducibles]


# -- blocks ----------------------------------------------------------------------

@dataclass
class BlockPartition:
    p: int
    blocks: list  # lists of row indices
    defects: list
    central_chars: list  # reduced omega vectors (tuples of codes)
    field: FieldSpec

    def block_of(self, i: int) -> int:
        for b, rows in enumerate(self.blocks):
            if i in rows:
                return b
        raise KeyError(i)


def central_character(T: CharacterTable, i: int) -> list[CycInt]:
    chi = T.irreducibles[i]
    d = int(chi[0])
    return [(chi[k] * c.size).simplify().exact_div(d) for k, c in enumerate(T.classes)]


def p_blocks(T: CharacterTable, p: int) -> BlockPartition:
    F = reduction_field(T.exponent, p)
    keyed: dict[tuple, list[int]] = {}
    for i in range(len(T)):
        om = tuple(reduce_cycint(w, F) for w in central_character(T, i))
        keyed.setdefault(om, []).append(i)
    items = sorted(keyed.items(), key=lambda kv: kv[1][0])
    blocks = [rows for _, rows in items]
    gp = p_part(T.order, p)
    defects = []
    for rows in blocks:
        m = min(p_part(T.degrees[i], p) for i in rows)
        d, x = 0, gp // m
        while x > 1:
            x //= p
            d += 1
        defects.append(d)
    return BlockPartition(p=p, blocks=blocks, defects=defects, central_chars=[k for k, _ in items], field=F)


def block_project(T: CharacterTable, phi, block) -> list:
    out = [CycInt.from_int(0)] * len(T.classes)
    for i in block:
        chi = T.irreducibles[i]
        a = inner_product(T, phi, chi)
        out = [(o + a * v) for o, v in zip(out, chi)]
    return [o.simplify() for o in out]


def regular_character(T: CharacterTable) -> list:
    return [CycInt.from_int(T.order if k == 0 else 0) for k in range(len(T.classes))]
