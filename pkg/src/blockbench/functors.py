"""Restriction, induction, tensor products, duals, Brauer quotients,
trivial source modules and the Green correspondence."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import DenseMatrix, is_invertible, kron
from .modrep.homs import decompose, hom_space
from .modrep.module import GModule, ModuleError, restrict, subgroup_group, trivial_module
from .modrep.projectivity import vertex
from .perm import PermGroupData, Subgroup, are_conjugate, coset_map, normalizer, transversal

INDUCE_CAP = 5000
TENSOR_CAP = 5000

__all__ = [
    "InductionContext", "restrict", "induce", "induce_trivial", "tensor", "dual",
    "brauer_quotient", "is_trivial_source", "TrivialSource", "green_correspondent",
    "frobenius_check",
]


class FunctorError(ModuleError):
    pass


@dataclass
class InductionContext:
    G: PermGroupData
    H: Subgroup
    reps: list  # right coset representatives, identity first
    cosets: np.ndarray  # coset index of every element of G

    @classmethod
    def make(cls, G: PermGroupData, H: Subgroup) -> "InductionContext":
        reps = transversal(G, H)
        return cls(G=G, H=H, reps=reps, cosets=coset_map(G, H, reps))

    @property
    def index(self) -> int:
        return len(self.reps)

    @property
    def group_h(self) -> PermGroupData:
        return subgroup_group(self.H)


def induce(ctx: InductionContext, N: GModule) -> GModule:
    """N tensored up to G.  Basis n_i (x) t over the transversal; for a
    generator g write t g = h t' with h in H, so (n (x) t) g = n h (x) t'."""
    G, Hg = ctx.G, ctx.group_h
    if N.group is not Hg:
        raise FunctorError("module is not over the subgroup of this context")
    d, n = N.dim, ctx.index
    if d * n > INDUCE_CAP:
        raise FunctorError(f"induced dimension {d * n} exceeds the cap {INDUCE_CAP}")
    reps = np.array(ctx.reps, dtype=np.int64)
    inv = G.inverse_index
    mats = []
    for gi in G.gen_index():
        x = G.mul(reps, np.full(n, gi))
        tgt = ctx.cosets[x]
        h = G.mul(x, inv[reps[tgt]])
        hidx = Hg.index(G.elements[h])
        a = np.zeros((n * d, n * d), dtype=np.int64)
        for c in range(n):
            c2 = int(tgt[c])
            a[c * d : (c + 1) * d, c2 * d : (c2 + 1) * d] = N.element_array(int(hidx[c]))
        mats.append(a)
    perm = None
    if N.perm is not None:
        # induced from a permutation module: points (omega, t)
        perm = [np.argmax(m, axis=1) for m in mats]
    hname = ctx.H.name or "H"
    return GModule(G, N.field, mats, name=f"{N.name or 'N'}^G from {hname}", perm=perm, dim=n * d)


def induce_trivial(G: PermGroupData, H: Subgroup, F) -> GModule:
    """The permutation module k_H induced to G."""
    ctx = InductionContext.make(G, H)
    K = induce(ctx, trivial_module(ctx.group_h, F))
    K.name = f"k_{H.name or 'H'}^G"
    return K


def frobenius_check(ctx: InductionContext, N: GModule, M: GModule) -> bool:
    """dim Hom_G(N^G, M) = dim Hom_H(N, M restricted to H)."""
    return len(hom_space(induce(ctx, N), M)) == len(hom_space(N, restrict(M, ctx.H)))


def tensor(M: GModule, N: GModule) -> GModule:
    if M.group is not N.group or M.field != N.field:
        raise FunctorError("modules over different groups or fields")
    if M.dim * N.dim > TENSOR_CAP:
        raise FunctorError(f"tensor dimension {M.dim * N.dim} exceeds the cap {TENSOR_CAP}")
    mats = [kron(a, b) for a, b in zip(M.gens, N.gens)]
    return GModule(M.group, M.field, mats, name=f"{M.name}*{N.name}", dim=M.dim * N.dim)


def dual(M: GModule) -> GModule:
    D = M.dual()
    D.name = f"{M.name}^*"
    return D


def _point_perm(M: GModule, i: int) -> np.ndarray:
    return np.argmax(M.element_array(i), axis=1)


def brauer_quotient(M: GModule, Q: Subgroup, N: Subgroup | None = None) -> GModule:
    """M(Q) for a permutation module: the span of the Q-fixed basis points,
    as a module for N_G(Q)."""
    if M.perm is None:
        raise FunctorError("Brauer quotient needs a module with a permutation basis")
    G = M.group
    N = normalizer(G, Q) if N is None else N
    fixed = np.ones(M.dim, dtype=bool)
    for qi in Q.gen_idx:
        fixed &= _point_perm(M, qi) == np.arange(M.dim)
    pts = np.flatnonzero(fixed)
    pos = np.full(M.dim, -1, dtype=np.int64)
    pos[pts] = np.arange(len(pts))
    Ng = subgroup_group(N)
    perms = []
    for g in Ng.gens:
        img = _point_perm(M, G.index_of(g))[pts]
        perms.append(pos[img])
    mats = []
    for a in perms:
        m = np.zeros((len(pts), len(pts)), dtype=np.int64)
        m[np.arange(len(pts)), a] = 1
        mats.append(m)
    return GModule(Ng, M.field, mats, name=f"{M.name}({Q.name or 'Q'})", perm=perms, dim=len(pts))


@dataclass
class TrivialSource:
    value: bool
    vertex: Subgroup
    source: str  # "trivial" when value is true


def is_trivial_source(M: GModule, check: bool = True) -> TrivialSource:
    """Whether the indecomposable M is a summand of k_V^G for its vertex V.

    End(M) is local, so M is a summand of K exactly when some composite
    M -> K -> M of basis homomorphisms is invertible: the non-invertible
    endomorphisms form the radical, a subspace.
    """
    V = vertex(M, check=check)
    if V.order == 1:
        return TrivialSource(True, V, "trivial")
    K = induce_trivial(M.group, V, M.field)
    F = M.field
    phis = hom_space(M, K)
    psis = hom_space(K, M) if phis else []
    for X in phis:
        for Y in psis:
            if is_invertible(DenseMatrix(F, F.matmul(X.a, Y.a))):
                return TrivialSource(True, V, "trivial")
    return TrivialSource(False, V, "")


def green_correspondent(M: GModule, V: Subgroup | None = None, N: Subgroup | None = None) -> GModule:
    """The summand of M restricted to N_G(V) with vertex V."""
    G = M.group
    V = vertex(M) if V is None else V
    N = normalizer(G, V) if N is None else N
    if not V.is_subgroup_of(N):
        raise FunctorError("the vertex is not contained in the given normalizer")
    R = restrict(M, N)
    Ng = R.group
    Vn = Subgroup(Ng, V.gens)
    hits = []
    for s in decompose(R):
        W = vertex(s.module, check=False)
        if W.order > V.order:
            raise FunctorError("a summand has a larger vertex than M")
        # other summands may have vertices of the same order that are
        # conjugate to V only outside N
        if are_conjugate(Ng, W, Vn) is not None:
            hits.append(s.module)
    if len(hits) != 1:
        raise FunctorError(f"found {len(hits)} summands with the vertex of M")
    f = hits[0]
    f.name = f"f({M.name})"
    return f
