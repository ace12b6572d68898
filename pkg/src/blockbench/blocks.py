"""p-blocks of group algebras: central idempotents, decomposition and Cartan
matrices, and block membership of modules."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

import numpy as np

from .chartab import CharacterTable, class_mult_column, p_blocks
from .cyclotomic import CycInt
from .gfq import FieldError, FieldSpec, embed, ff_make, reduce_cycint, restrict_to_subfield
from .modrep.homs import hom_dim
from .modrep.module import GModule

IDEMPOTENT_CAP = 2000


class BlockError(ValueError):
    pass


@dataclass
class BlockData:
    p: int
    index: int
    irr_indices: list
    defect: int
    idempotent: list | None = None  # coefficients on class sums, or None above the cap
    simple_labels: list = field(default_factory=list)
    dec_matrix: list = field(default_factory=list)
    cartan: list = field(default_factory=list)

    def to_json(self, T: CharacterTable | None = None) -> dict:
        d = {
            "index": self.index,
            "defect": self.defect,
            "irr": list(self.irr_indices),
            "simples": list(self.simple_labels),
            "dec_matrix": [list(map(int, r)) for r in self.dec_matrix],
            "cartan": [list(map(int, r)) for r in self.cartan],
        }
        if T is not None:
            d["irr_labels"] = [T.labels[i] for i in self.irr_indices]
            d["degrees"] = [T.degrees[i] for i in self.irr_indices]
        return d


# -- the centre of kG ---------------------------------------------------------------

def structure_constants(G, p: int) -> np.ndarray:
    """a[i, j, k] mod p with K_i K_j = sum_k a_ijk K_k."""
    r = G.num_classes
    out = np.zeros((r, r, r), dtype=np.int64)
    for j in range(r):
        out[:, j, :] = class_mult_column(G, j) % p
    return out


def center_mul(F: FieldSpec, consts: np.ndarray, a, b) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    r = len(a)
    out = np.zeros(r, dtype=np.int64)
    for i in range(r):
        if not a[i]:
            continue
        for j in range(r):
            if not b[j]:
                continue
            ab = int(F.mul(int(a[i]), int(b[j])))
            out = F.add(out, F.mul(ab, consts[i, j]))
    return out


def block_idempotents(T: CharacterTable, p: int, F: FieldSpec | None = None) -> list[np.ndarray]:
    """Central primitive idempotents of kG as coefficient vectors on class sums.

    The ordinary idempotent of a block has coefficient
    sum_chi chi(1) chi(g_C^-1) / |G| on the class sum of C; it is p-integral,
    so dividing the numerator by the p-part of |G| is exact in Z[zeta] and the
    result reduces modulo p after dividing by the p'-part.
    """
    G = T.group
    if G.order > IDEMPOTENT_CAP:
        raise BlockError(f"group order {G.order} exceeds the idempotent cap {IDEMPOTENT_CAP}")
    part = p_blocks(T, p)
    F0 = part.field
    F = F0 if F is None else F
    inv = G.inverse_classes()
    pa = 1
    while G.order % (pa * p) == 0:
        pa *= p
    mprime_inv = int(F.inv(F.from_int(G.order // pa)))
    out = []
    for rows in part.blocks:
        e = np.zeros(len(T.classes), dtype=np.int64)
        for k in range(len(T.classes)):
            s = CycInt.from_int(0)
            for i in rows:
                chi = T.irreducibles[i]
                s = s + chi[inv[k]] * int(chi[0])
            s = s.simplify().exact_div(pa)
            v = reduce_cycint(s, F0)
            if F != F0:
                v = embed(F0, F, v)
            e[k] = int(F.mul(v, mprime_inv))
        out.append(e)
    return out


def check_idempotents(T: CharacterTable, p: int, idems, F: FieldSpec) -> bool:
    """Sum to one, squares equal themselves, distinct ones multiply to zero."""
    consts = structure_constants(T.group, p)
    total = np.zeros(len(T.classes), dtype=np.int64)
    for i, e in enumerate(idems):
        total = F.add(total, e)
        if not np.array_equal(center_mul(F, consts, e, e), e):
            return False
        for f in idems[i + 1 :]:
            if center_mul(F, consts, e, f).any():
                return False
    one = np.zeros(len(T.classes), dtype=np.int64)
    one[0] = 1
    return bool(np.array_equal(total, one))


# -- decomposition and Cartan matrices ----------------------------------------------

def _coeff_rows(values, conductor: int) -> list[list[int]]:
    rows = []
    for v in values:
        rows.append([int(c) for c in CycInt.coerce(v).lift(conductor).coeffs])
    return rows


def _solve_rational(A: list[list[Fraction]], b: list[Fraction]):
    """The unique x with A x = b (A has full column rank), or None."""
    m = len(A)
    n = len(A[0]) if A else 0
    aug = [list(A[i]) + [b[i]] for i in range(m)]
    piv_cols = []
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, m) if aug[i][c] != 0), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
    if len(piv_cols) < n:
        raise BlockError("Brauer characters are linearly dependent")
    if any(aug[i][n] != 0 for i in range(r, m)):
        return None
    x = [Fraction(0)] * n
    for i, c in enumerate(piv_cols):
        x[c] = aug[i][n]
    return x


def decomposition_matrix(T: CharacterTable, rows, brauer: dict, p: int):
    """Integer matrix D with chi = sum_phi D[chi, phi] phi on p-regular classes.

    ``brauer`` maps simple labels to Brauer characters on the p-regular classes
    (in the group's class order).  Columns for simples not occurring in any of
    the given rows are dropped.  Returns (D, column labels).
    """
    G = T.group
    preg = G.p_regular_classes(p)
    labels = list(brauer)
    cond = T.exponent
    cols = [_coeff_rows(brauer[lab], cond) for lab in labels]
    A = []
    for ci in range(len(preg)):
        for t in range(len(cols[0][ci])):
            A.append([Fraction(cols[j][ci][t]) for j in range(len(labels))])
    D = []
    for i in range(len(T)) if rows is None else rows:
        chi = [T.irreducibles[i][c] for c in preg]
        b = [Fraction(x) for row in _coeff_rows(chi, cond) for x in row]
        x = _solve_rational(A, b)
        if x is None:
            raise BlockError(f"{T.labels[i]} is not a combination of the given Brauer characters")
        if any(v.denominator != 1 or v < 0 for v in x):
            raise BlockError(f"non-integral or negative decomposition numbers for {T.labels[i]}")
        D.append([int(v) for v in x])
    keep = [j for j in range(len(labels)) if any(r[j] for r in D)]
    return [[r[j] for j in keep] for r in D], [labels[j] for j in keep]


def cartan_matrix(D) -> list[list[int]]:
    Dn = np.asarray(D, dtype=np.int64)
    return (Dn.T @ Dn).tolist()


def cartan_from_pims(pims: dict, simples) -> list[list[int]]:
    """c(S, T) = [P(S) : T] = dim Hom(P(T), P(S)) over a splitting field."""
    labs = [s.label for s in simples]
    return [[hom_dim(pims[t], pims[s]) for t in labs] for s in labs]


def cross_check_cartan(C, pims: dict, simples) -> None:
    Cm = cartan_from_pims(pims, simples)
    if [list(r) for r in C] != Cm:
        raise BlockError("Cartan matrix from characters disagrees with the projective modules")


# -- modules ------------------------------------------------------------------------

def class_sum_action(M: GModule, c: int) -> np.ndarray:
    G = M.group
    F = M.field
    acc = np.zeros((M.dim, M.dim), dtype=np.int64)
    for g in G.classes[c]:
        acc = F.add(acc, M.element_array(int(g)))
    return acc


def idempotent_action(M: GModule, e) -> np.ndarray:
    F = M.field
    acc = np.zeros((M.dim, M.dim), dtype=np.int64)
    for c, coef in enumerate(e):
        if coef:
            acc = F.add(acc, F.mul(int(coef), class_sum_action(M, c)))
    return acc


def block_of_module(M: GModule, T: CharacterTable, simples=None) -> int:
    """Index of the block containing M.

    With the group below the idempotent cap, the block idempotent acting as the
    identity on M is found directly.  Otherwise every composition factor is
    matched by its central character (the scalars by which class sums act).
    """
    G = M.group
    p = M.p
    part = p_blocks(T, p)
    if G.order <= IDEMPOTENT_CAP:
        idems = [_to_field(part.field, M.field, e) for e in block_idempotents(T, p)]
        eye = np.eye(M.dim, dtype=np.int64)
        hits = []
        for b, e in enumerate(idems):
            act = idempotent_action(M, e)
            if np.array_equal(act, eye):
                hits.append(b)
            elif act.any():
                raise BlockError("module has components in several blocks")
        if len(hits) != 1:
            raise BlockError("no block acts as the identity")
        return hits[0]
    from .modrep.meataxe import chop

    found = set()
    for s in (chop(M) if simples is None else simples):
        om = simple_central_character(s.module)
        k = lcm(s.module.field.k, part.field.k)
        E = ff_make(p, k)
        om = [embed(s.module.field, E, x) for x in om]
        for b, key in enumerate(part.central_chars):
            if [embed(part.field, E, int(x)) for x in key] == om:
                found.add(b)
                break
        else:
            raise BlockError("composition factor matches no central character")
    if len(found) != 1:
        raise BlockError("composition factors lie in several blocks")
    return found.pop()


def _to_field(F0: FieldSpec, F1: FieldSpec, e) -> np.ndarray:
    """Move coefficients from F0 into F1 (an extension or a subfield holding
    all of them)."""
    if F0 == F1:
        return np.asarray(e, dtype=np.int64)
    try:
        if F1.k % F0.k == 0:
            return np.array([embed(F0, F1, int(x)) for x in e], dtype=np.int64)
        if F0.k % F1.k == 0:
            return np.array([restrict_to_subfield(F0, F1, int(x)) for x in e], dtype=np.int64)
    except FieldError as exc:
        raise BlockError(f"block idempotent does not lie in {F1}") from exc
    raise BlockError(f"{F1} and {F0} are not nested")


def orbit_vectors(M: GModule, v: np.ndarray) -> np.ndarray:
    """v rho(g) for every element g, following the enumeration tree layer by
    layer (no element matrices are stored)."""
    G = M.group
    F = M.field
    parent = np.asarray(G.parent, dtype=np.int64)
    via = np.asarray(G.via, dtype=np.int64)
    depth = np.zeros(G.order, dtype=np.int64)
    for i in range(1, G.order):
        depth[i] = depth[parent[i]] + 1
    out = np.zeros((G.order, M.dim), dtype=np.int64)
    out[0] = v
    for d in range(1, int(depth.max()) + 1 if G.order > 1 else 1):
        layer = np.flatnonzero(depth == d)
        for gi, g in enumerate(M.gens):
            idx = layer[via[layer] == gi]
            if len(idx):
                out[idx] = F.matmul(out[parent[idx]], g.a)
    return out


def simple_central_character(S: GModule) -> list[int]:
    """Scalars by which the class sums act on the simple module S."""
    G = S.group
    F = S.field
    v = np.zeros(S.dim, dtype=np.int64)
    v[0] = 1
    vecs = orbit_vectors(S, v)[:, 0]
    out = []
    for c in range(G.num_classes):
        acc = 0
        for x in vecs[G.classes[c]]:
            acc = int(F.add(acc, int(x)))
        out.append(acc)
    return out


def block_data(T: CharacterTable, p: int, brauer: dict | None = None) -> list[BlockData]:
    """Blocks with defects, idempotents (when within the cap) and, when the
    Brauer characters of the simples are given, their matrices."""
    part = p_blocks(T, p)
    idems = block_idempotents(T, p) if T.order <= IDEMPOTENT_CAP else [None] * len(part.blocks)
    out = []
    for b, (rows, d) in enumerate(zip(part.blocks, part.defects)):
        bd = BlockData(p=p, index=b, irr_indices=list(rows), defect=d,
                       idempotent=None if idems[b] is None else [int(x) for x in idems[b]])
        if brauer:
            D, labs = decomposition_matrix(T, rows, brauer, p)
            bd.dec_matrix, bd.simple_labels = D, labs
            bd.cartan = cartan_matrix(D)
        out.append(bd)
    return out
