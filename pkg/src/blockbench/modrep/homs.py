"""Homomorphism spaces, isomorphism tests and direct-sum decomposition."""
from __future__ import annotations

import numpy as np

from .. import polys
from ..linalg import DenseMatrix, Subspace, _left_null, _rref, charpoly, poly_at, rank
from .module import GModule, ModuleError, sub_action

HOM_CAP = 10_000_000


class HomCapError(ModuleError):
    pass


class SpinPlan:
    """Standard basis of a module: spun vectors in order, how each was
    reached, and how every other generator image falls back into the span."""

    def __init__(self, seeds, edges, relations, T, piv, dim):
        self.seeds = seeds  # indices of seed vectors
        self.edges = edges  # (new index, parent index, generator)
        self.relations = relations  # (parent index, generator, coefficients)
        self.T = T  # B^-1 up to the row order given by piv
        self.piv = piv
        self.dim = dim


def spin_plan(M: GModule) -> SpinPlan:
    if "spin_plan" in M.cache:
        return M.cache["spin_plan"]
    F = M.field
    d = M.dim
    gM = M.gen_arrays()
    rng = np.random.default_rng(12345)
    B = np.zeros((d, d), dtype=np.int64)
    E = np.zeros((d, d), dtype=np.int64)
    T = np.zeros((d, d), dtype=np.int64)
    piv: list[int] = []
    seeds, edges, rels = [], [], []
    n = 0

    def coords(x):
        if not n:
            return x, np.zeros(0, dtype=np.int64)
        a = x[piv]
        return F.sub(x, F.matmul(a, E[:n])), F.matmul(a, T[:n, :n])

    def add_vector(x, res, c):
        nonlocal n
        trow = np.zeros(d, dtype=np.int64)
        trow[:n] = F.neg(c)
        trow[n] = 1
        pc = int(np.flatnonzero(res)[0])
        inv = int(F.inv(int(res[pc])))
        res = F.mul(inv, res)
        trow = F.mul(inv, trow)
        if n:
            f = E[:n, pc].copy()
            nz = np.flatnonzero(f)
            if nz.size:
                E[nz] = F.sub(E[nz], F.mul(f[nz, None], res[None, :]))
                T[nz] = F.sub(T[nz], F.mul(f[nz, None], trow[None, :]))
        B[n] = x
        E[n] = res
        T[n] = trow
        piv.append(pc)
        n += 1

    while n < d:
        while True:
            v = F.random(rng, size=d)
            res, c = coords(v)
            if res.any():
                break
        seeds.append(n)
        queue = [n]
        add_vector(v, res, c)
        while queue:
            s = queue.pop(0)
            imgs = F.matmul(B[s][None, :], np.stack(gM))[:, 0, :] if gM else []
            for gi, x in enumerate(imgs):
                res, c = coords(x)
                if res.any():
                    edges.append((n, s, gi))
                    queue.append(n)
                    add_vector(x, res, c)
                else:
                    full = np.zeros(d, dtype=np.int64)
                    full[: len(c)] = c
                    rels.append((s, gi, full))
    plan = SpinPlan(seeds, edges, rels, T, piv, d)
    M.cache["spin_plan"] = plan
    return plan


def hom_space(M: GModule, N: GModule) -> list[DenseMatrix]:
    """Basis of Hom_kG(M, N) as dim(M) x dim(N) matrices X with
    X rho_N(g) = rho_M(g) X.

    M is spun up from seed vectors; a homomorphism is fixed by the images of
    the seeds, which are the unknowns.  Every spun vector gets its image as a
    linear function of the unknowns, and each generator image that falls
    back into the span gives linear constraints cutting the unknowns down.
    """
    if M.group is not N.group or M.field != N.field:
        raise ModuleError("modules over different groups or fields")
    if M.dim * N.dim > HOM_CAP:
        raise HomCapError(f"dim(M)*dim(N) = {M.dim * N.dim} exceeds the hom cap {HOM_CAP}")
    F = M.field
    dM, dN = M.dim, N.dim
    if dM == 0 or dN == 0:
        return []
    plan = spin_plan(M)
    gN = N.gen_arrays()
    Y = len(plan.seeds) * dN
    L = np.zeros((dM, Y, dN), dtype=np.int64)
    for i, s in enumerate(plan.seeds):
        L[s, i * dN : (i + 1) * dN] = np.eye(dN, dtype=np.int64)
    # images along the spanning tree, one breadth-first layer at a time
    level = np.zeros(dM, dtype=np.int64)
    for new, par, gi in plan.edges:
        level[new] = level[par] + 1
    by_layer: dict[tuple[int, int], list] = {}
    for new, par, gi in plan.edges:
        by_layer.setdefault((int(level[new]), gi), []).append((new, par))
    for (lv, gi) in sorted(by_layer):
        pairs = by_layer[(lv, gi)]
        news = [a for a, _ in pairs]
        pars = [b for _, b in pairs]
        L[news] = F.matmul(L[pars].reshape(-1, dN), gN[gi]).reshape(len(pars), Y, dN)
    # constraint residuals for all relations at once, then nullspaces in
    # chunks so each elimination problem stays small
    rels = plan.relations
    if rels:
        R = np.empty((len(rels), Y, dN), dtype=np.int64)
        for gi in range(len(gN)):
            sel = [t for t, r in enumerate(rels) if r[1] == gi]
            if sel:
                pars = [rels[t][0] for t in sel]
                R[sel] = F.matmul(L[pars].reshape(-1, dN), gN[gi]).reshape(len(sel), Y, dN)
        C = np.stack([r[2] for r in rels])
        R = F.sub(R, F.matmul(C, L.reshape(dM, -1)).reshape(len(rels), Y, dN))
        keep = np.flatnonzero(R.reshape(len(rels), -1).any(axis=1))
        R = R[keep]
        while len(R) and Y:
            step = max(1, (2 * Y) // dN)
            K = R[:step].transpose(1, 0, 2).reshape(Y, -1)
            R = R[step:]
            if not K.any():
                continue
            Z = _left_null(F, K)
            Y = Z.shape[0]
            if Y == 0:
                return []
            L = _apply_left(F, Z, L)
            R = _apply_left(F, Z, R)
    if Y == 0:
        return []
    X = np.empty((dM, Y, dN), dtype=np.int64)
    X[plan.piv] = F.matmul(plan.T, L.reshape(dM, -1)).reshape(dM, Y, dN)
    return [DenseMatrix(F, X[:, j, :].copy()) for j in range(Y)]


def _apply_left(F, Z, arr):
    """arr[n, Y, dN] -> Z @ arr[n] for every n."""
    n, Y, dN = arr.shape
    if n == 0:
        return np.zeros((0, Z.shape[0], dN), dtype=np.int64)
    flat = arr.transpose(1, 0, 2).reshape(Y, n * dN)
    out = F.matmul(Z, flat).reshape(Z.shape[0], n, dN)
    return out.transpose(1, 0, 2).copy()


def hom_dim(M: GModule, N: GModule) -> int:
    return len(hom_space(M, N))


def _random_combo(F, basis, rng):
    c = F.random(rng, size=len(basis))
    acc = np.zeros_like(basis[0].a)
    for ci, B in zip(c, basis):
        if ci:
            acc = F.add(acc, F.mul(int(ci), B.a))
    return acc


def is_isomorphic(M: GModule, N: GModule, trials: int = 24, rng=None):
    """(True, T) with T an invertible intertwiner, or (False, None)."""
    if M.dim != N.dim:
        return False, None
    if M.dim == 0:
        return True, DenseMatrix(M.field, np.zeros((0, 0), dtype=np.int64))
    basis = hom_space(M, N)
    if not basis:
        return False, None
    F = M.field
    rng = np.random.default_rng(7) if rng is None else rng
    for B in basis:
        if rank(B) == M.dim:
            return True, B
    for _ in range(trials):
        X = DenseMatrix(F, _random_combo(F, basis, rng))
        if rank(X) == M.dim:
            return True, X
    return False, None


def endomorphism_ring(M: GModule) -> list[DenseMatrix]:
    if "end" not in M.cache:
        M.cache["end"] = hom_space(M, M)
    return M.cache["end"]


# -- decomposition ---------------------------------------------------------------

class Summand:
    """An indecomposable summand: the module, its basis rows inside the parent
    and a projection from the parent onto it."""

    def __init__(self, module: GModule, basis: np.ndarray, proj: np.ndarray):
        self.module = module
        self.basis = basis
        self.proj = proj


def _stable_kernel(F, A: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Fitting decomposition of the endomorphism A: (kernel, image) of A^n."""
    n = A.shape[0]
    P = A
    k = 1
    while k < n:
        P = F.matmul(P, P)
        k *= 2
    ker = _left_null(F, P)
    img, _ = _rref(F, P)
    return ker, img


def _split_by_endo(F, dim, A):
    """Generalised eigenspaces of the endomorphism A (as row spaces)."""
    cp = charpoly(DenseMatrix(F, A))
    facs = polys.factor(F, cp)
    if len(facs) < 2:
        return None
    pieces = []
    for f, e in facs:
        fA = poly_at(F, f, DenseMatrix(F, A)).a
        ker, _ = _stable_kernel(F, fA)
        pieces.append(ker)
    return pieces


def _restrict_endos(F, endos, basis, proj):
    # End(U) is spanned by basis @ E @ proj for E in End(M)
    out = []
    for E in endos:
        out.append(F.matmul(F.matmul(basis, E), proj))
    return out


def _projections(F, pieces):
    """For a direct sum decomposition of the ambient space into row spaces,
    matrices P_i with v = sum (v P_i) B_i."""
    B = np.vstack(pieces)
    Binv = DenseMatrix(F, B)
    from ..linalg import inverse

    inv = inverse(Binv).a
    out = []
    off = 0
    for piece in pieces:
        out.append(inv[:, off : off + piece.shape[0]])
        off += piece.shape[0]
    return out


def decompose(M: GModule, trials: int = 40, seed: int = 0) -> list[Summand]:
    """Indecomposable direct summands of M.

    A random endomorphism splits M into its generalised eigenspaces; each
    piece is split again with endomorphisms obtained by compressing End(M).
    A piece is accepted as indecomposable once ``trials`` random elements of
    its endomorphism ring all have a single eigenvalue.
    """
    F = M.field
    rng = np.random.default_rng(seed)
    endos = [E.a for E in endomorphism_ring(M)]
    work = [(np.eye(M.dim, dtype=np.int64), np.eye(M.dim, dtype=np.int64), endos)]
    done = []
    while work:
        basis, proj, ends = work.pop()
        d = basis.shape[0]
        pieces = None
        for _ in range(trials):
            c = F.random(rng, size=len(ends))
            A = np.zeros((d, d), dtype=np.int64)
            for ci, E in zip(c, ends):
                if ci:
                    A = F.add(A, F.mul(int(ci), E))
            pieces = _split_by_endo(F, d, A)
            if pieces is not None:
                break
        if pieces is None:
            done.append((basis, proj))
            continue
        projs = _projections(F, pieces)
        for piece, pr in zip(pieces, projs):
            sub_basis = F.matmul(piece, basis)
            sub_proj = F.matmul(proj, pr)
            work.append((sub_basis, sub_proj, _restrict_endos(F, ends, piece, pr)))
    out = []
    gens = M.gen_arrays()
    for basis, proj in done:
        mats = [F.matmul(F.matmul(basis, g), proj) for g in gens]
        mod = GModule(M.group, F, mats, name=f"summand({M.name})", dim=basis.shape[0])
        out.append(Summand(mod, basis, proj))
    out.sort(key=lambda s: (s.module.dim, s.basis.tobytes()))
    return out


def is_indecomposable(M: GModule, trials: int = 40, seed: int = 0) -> bool:
    F = M.field
    rng = np.random.default_rng(seed)
    ends = [E.a for E in endomorphism_ring(M)]
    for _ in range(trials):
        c = F.random(rng, size=len(ends))
        A = np.zeros((M.dim, M.dim), dtype=np.int64)
        for ci, E in zip(c, ends):
            if ci:
                A = F.add(A, F.mul(int(ci), E))
        if _split_by_endo(F, M.dim, A) is not None:
            return False
    return True


def group_isomorphic(mods: list[GModule]) -> list[list[int]]:
    """Partition indices into isomorphism classes."""
    classes: list[list[int]] = []
    for i, m in enumerate(mods):
        for cl in classes:
            if is_isomorphic(mods[cl[0]], m)[0]:
                cl.append(i)
                break
        else:
            classes.append([i])
    return classes


def image_of(F, X: DenseMatrix) -> Subspace:
    return Subspace.span(X)


def kernel_of(F, X: DenseMatrix) -> Subspace:
    null = _left_null(F, X.a)
    return Subspace.span(DenseMatrix(F, null.reshape(-1, X.rows)))


__all__ = [
    "hom_space",
    "hom_dim",
    "is_isomorphic",
    "endomorphism_ring",
    "decompose",
    "is_indecomposable",
    "group_isomorphic",
    "Summand",
    "sub_action",
]
