"""Matrix representations of enumerated permutation groups."""
from __future__ import annotations

import numpy as np

from ..gfq import FieldSpec
from ..linalg import DenseMatrix, DimensionError, Subspace, _rref, inverse
from ..perm import PermGroupData, Subgroup, coset_action

MAX_PERM_DEGREE = 10_000


class ModuleError(ValueError):
    pass


class GModule:
    """A right kG-module: one matrix per generator of ``group``; vectors are
    rows and ``g`` acts by ``v -> v @ gens[i]``."""

    def __init__(self, group: PermGroupData, field: FieldSpec, gens, name: str = "", perm=None, dim: int | None = None):
        mats = []
        for g in gens:
            m = g if isinstance(g, DenseMatrix) else DenseMatrix(field, g)
            if m.field != field:
                raise ModuleError("generator matrix over the wrong field")
            mats.append(m)
        if len(mats) != len(group.gens):
            raise ModuleError(f"expected {len(group.gens)} generator matrices, got {len(mats)}")
        dims = {m.rows for m in mats} | {m.cols for m in mats}
        if len(dims) > 1:
            raise DimensionError("generator matrices are not square of one size")
        self.group = group
        self.field = field
        self.gens = mats
        if dim is not None and dims and dims != {dim}:
            raise DimensionError(f"generator matrices do not have size {dim}")
        # a group without generators needs the dimension spelled out
        self.dim = dims.pop() if dims else (dim or 0)
        self.name = name
        # for permutation modules: images of basis points under each generator
        self.perm = perm
        self._elt_cache: dict[int, np.ndarray] = {0: np.eye(self.dim, dtype=np.int64)}
        self.cache: dict = {}

    def __repr__(self):
        return f"GModule({self.name or '?'}, dim={self.dim}, over {self.field})"

    @property
    def p(self) -> int:
        return self.field.p

    def gen_arrays(self) -> list[np.ndarray]:
        return [g.a for g in self.gens]

    def element_array(self, i: int) -> np.ndarray:
        """Matrix of the group element with index i (product along its word)."""
        c = self._elt_cache
        if i in c:
            return c[i]
        G = self.group
        chain = []
        j = i
        while j not in c:
            chain.append(j)
            j = int(G.parent[j])
        m = c[j]
        for j in reversed(chain):
            m = self.field.matmul(m, self.gens[int(G.via[j])].a)
            c[j] = m
        return m

    def element_matrix(self, i: int) -> DenseMatrix:
        return DenseMatrix(self.field, self.element_array(i))

    def perm_matrix(self, g: np.ndarray) -> DenseMatrix:
        """Matrix of a group element given as a permutation."""
        i = self.group.index_of(g)
        if i < 0:
            raise ModuleError("permutation is not in the group")
        return self.element_matrix(i)

    def check_relations(self, samples: int = 200, rng=None) -> bool:
        """rho(x) rho(g) = rho(xg) on sampled x and every generator."""
        G = self.group
        rng = np.random.default_rng(0) if rng is None else rng
        xs = range(G.order) if G.order <= samples else rng.integers(0, G.order, samples)
        gidx = G.gen_index()
        for x in xs:
            x = int(x)
            for gi, g in zip(gidx, self.gens):
                xg = int(G.mul([x], [gi])[0])
                lhs = self.field.matmul(self.element_array(x), g.a)
                if not np.array_equal(lhs, self.element_array(xg)):
                    return False
        return True

    # -- constructions -------------------------------------------------------
    def submodule(self, W: DenseMatrix) -> "GModule":
        """Action on an invariant subspace given by any spanning rows."""
        S = Subspace.span(W)
        return GModule(self.group, self.field, sub_action(self.field, self.gen_arrays(), S), name=f"sub({self.name})", dim=S.dim)

    def quotient(self, W: DenseMatrix) -> "GModule":
        S = Subspace.span(W)
        return GModule(self.group, self.field, quotient_action(self.field, self.gen_arrays(), S), name=f"quot({self.name})", dim=self.dim - S.dim)

    def dual(self) -> "GModule":
        mats = [inverse(g).T for g in self.gens]
        return GModule(self.group, self.field, mats, name=f"dual({self.name})", dim=self.dim)

    def transpose_gens(self) -> list[np.ndarray]:
        return [g.a.T.copy() for g in self.gens]

    def is_invariant(self, W: DenseMatrix) -> bool:
        S = Subspace.span(W)
        return all(S.contains(self.field.matmul(S.basis, g)) for g in self.gen_arrays()) if S.dim else True


def sub_action(F, gens, S: Subspace) -> list[np.ndarray]:
    out = []
    for g in gens:
        img = F.matmul(S.basis, g)
        if S.residual(img).any():
            raise ModuleError("subspace is not invariant")
        out.append(img[:, S.pivots])
    return out


def quotient_action(F, gens, S: Subspace) -> list[np.ndarray]:
    non = S.complement_pivots()
    out = []
    for g in gens:
        rows = g[non, :]
        if S.dim:
            rows = F.sub(rows, F.matmul(rows[:, S.pivots], S.basis))
        out.append(rows[:, non])
    return out


def direct_sum(mods: list[GModule]) -> GModule:
    G, F = mods[0].group, mods[0].field
    n = sum(m.dim for m in mods)
    mats = []
    for gi in range(len(G.gens)):
        a = np.zeros((n, n), dtype=np.int64)
        off = 0
        for m in mods:
            a[off : off + m.dim, off : off + m.dim] = m.gens[gi].a
            off += m.dim
        mats.append(a)
    return GModule(G, F, mats, name="+".join(m.name for m in mods), dim=n)


# -- standard modules ------------------------------------------------------------

def perm_module(G: PermGroupData, F: FieldSpec, action=None, name: str = "") -> GModule:
    """Permutation module on the points of ``action`` (one permutation per
    generator of G; defaults to the natural action)."""
    if action is None:
        action = G.gens
    action = [np.asarray(a, dtype=np.int64) for a in action]
    n = len(action[0]) if action else G.degree
    if n > MAX_PERM_DEGREE:
        raise ModuleError(f"permutation degree {n} exceeds the cap {MAX_PERM_DEGREE}")
    mats = []
    for a in action:
        m = np.zeros((n, n), dtype=np.int64)
        m[np.arange(n), a] = 1
        mats.append(m)
    return GModule(G, F, mats, name=name or "perm", perm=action)


def coset_module(G: PermGroupData, F: FieldSpec, H: Subgroup, name: str = "") -> GModule:
    """Permutation module on the right cosets of H, i.e. k_H induced to G."""
    return perm_module(G, F, coset_action(G, H), name=name or f"k[G/{H.name or 'H'}]")


def regular_module(G: PermGroupData, F: FieldSpec) -> GModule:
    action = []
    for gi in G.gen_index():
        action.append(G.mul(np.arange(G.order), np.full(G.order, gi)))
    return perm_module(G, F, action, name="regular")


def trivial_module(G: PermGroupData, F: FieldSpec) -> GModule:
    mats = [np.ones((1, 1), dtype=np.int64) for _ in G.gens]
    return GModule(G, F, mats, name="trivial", perm=[np.zeros(1, dtype=np.int64) for _ in G.gens], dim=1)


def sign_module(G: PermGroupData, F: FieldSpec) -> GModule:
    from ..perm import cycles

    mats = []
    for g in G.gens:
        s = (-1) ** sum(len(c) - 1 for c in cycles(g))
        mats.append(np.array([[F.from_int(s)]], dtype=np.int64))
    return GModule(G, F, mats, name="sign", dim=1)


def echelon_basis(F, rows: np.ndarray) -> Subspace:
    R, piv = _rref(F, rows)
    return Subspace(F, R.reshape(-1, rows.shape[1]), piv, rows.shape[1])


def subgroup_group(H: Subgroup) -> PermGroupData:
    """The subgroup as a group in its own right (cached on H)."""
    if getattr(H, "_group", None) is None:
        H._group = H.as_group()
    return H._group


def restrict(M: GModule, H: Subgroup) -> GModule:
    """M restricted to H; the matrices of H's generators come from their
    words in the generators of G."""
    if H.G is not M.group:
        raise ModuleError("subgroup of a different group")
    Hg = subgroup_group(H)
    mats = []
    for g in Hg.gens:
        i = M.group.index_of(g)
        if i < 0:
            raise ModuleError("subgroup generator not found in the group")
        mats.append(M.element_matrix(i))
    name = f"{M.name}|{H.name}" if H.name else f"{M.name}|H"
    perm = None
    if M.perm is not None:
        perm = [np.argmax(m.a, axis=1) for m in mats]
    return GModule(Hg, M.field, mats, name=name, perm=perm, dim=M.dim)
