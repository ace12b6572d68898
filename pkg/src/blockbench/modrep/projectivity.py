"""Relative projectivity (Higman's criterion), vertices and stable homs."""
from __future__ import annotations

import numpy as np

from ..linalg import DenseMatrix, rank
from ..perm import Subgroup, p_part, p_subgroup_classes, sylow, transversal
from .homs import hom_space, is_indecomposable
from .module import GModule, ModuleError, restrict


def is_projective(M: GModule) -> bool:
    """M is projective iff its restriction to a Sylow p-subgroup S is free,
    i.e. dim M = |S| * dim(M / M I(S)) for the augmentation ideal I(S)."""
    G = M.group
    S = sylow(G, M.p)
    if S.order == 1:
        return True
    F = M.field
    MS = restrict(M, S)
    eye = np.eye(M.dim, dtype=np.int64)
    # M I(S) is the sum of the images of g - 1 over generators g of S
    stacked = np.vstack([F.sub(g.a, eye) for g in MS.gens])
    top = M.dim - rank(DenseMatrix(F, stacked))
    return M.dim == S.order * top


def relative_trace(M: GModule, H: Subgroup, X: np.ndarray, reps=None) -> np.ndarray:
    """Sum over right coset representatives t of rho(t^-1) X rho(t)."""
    G = M.group
    F = M.field
    reps = transversal(G, H) if reps is None else reps
    inv = G.inverse_index
    acc = np.zeros_like(X)
    for t in reps:
        acc = F.add(acc, F.matmul(F.matmul(M.element_array(int(inv[t])), X), M.element_array(t)))
    return acc


def is_rel_projective(M: GModule, H: Subgroup) -> bool:
    """Higman's criterion: the identity of End_kG(M) is a relative trace
    from End_kH(M)."""
    G = M.group
    p = M.p
    if (G.order // H.order) % p == 0 and H.order == 1:
        return is_projective(M)
    if (G.order // H.order) % p:
        return True
    if p_part(H.order, p) == 1:
        return is_projective(M)
    F = M.field
    MH = restrict(M, H)
    ends = hom_space(MH, MH)
    reps = transversal(G, H)
    inv = G.inverse_index
    d = M.dim
    stack = np.stack([E.a for E in ends])  # (n, d, d)
    acc = np.zeros_like(stack)
    for t in reps:
        left = M.element_array(int(inv[t]))
        right = M.element_array(t)
        acc = F.add(acc, F.matmul(F.matmul(left, stack), right))
    flat = acc.reshape(len(ends), d * d)
    r = rank(DenseMatrix(F, flat))
    with_id = np.vstack([flat, np.eye(d, dtype=np.int64).reshape(1, -1)])
    return rank(DenseMatrix(F, with_id)) == r


def vertex(M: GModule, check: bool = True) -> Subgroup:
    """A vertex of the indecomposable module M: a p-subgroup of least order
    relative to which M is projective."""
    if "vertex" in M.cache:
        return M.cache["vertex"]
    if check and not is_indecomposable(M):
        raise ModuleError("vertex of a decomposable module")
    G = M.group
    for Q in p_subgroup_classes(G, M.p):
        if is_rel_projective(M, Q):
            M.cache["vertex"] = Q
            return Q
    raise ModuleError("no vertex found among the p-subgroups")


def projective_homs(M: GModule, N: GModule, pims: list) -> int:
    """dim of the span of all composites M -> P -> N over the given PIMs."""
    F = M.field
    prods = []
    for P in pims:
        A = hom_space(M, P)
        if not A:
            continue
        B = hom_space(P, N)
        for X in A:
            for Yb in B:
                prods.append(F.matmul(X.a, Yb.a).reshape(-1))
    if not prods:
        return 0
    return rank(DenseMatrix(F, np.stack(prods)))


def stable_hom_dim(M: GModule, N: GModule, pims: list) -> int:
    return len(hom_space(M, N)) - projective_homs(M, N, pims)
