"""Radical and socle series, layer labels and submodule lattices."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from ..linalg import DenseMatrix, Subspace, _left_null
from .homs import hom_space
from .module import GModule, ModuleError

MAX_LATTICE_LENGTH = 12
MAX_LOCAL_MULT = 4


class LatticeBoundError(ModuleError):
    pass


@dataclass
class LoewyData:
    radical_layers: list  # top (head) first; each layer a sorted label list
    socle_layers: list  # also top first; the last entry is the socle
    radical_bases: list = field(default_factory=list)  # rad^i M as rows of M
    socle_bases: list = field(default_factory=list)  # soc^i M as rows of M

    @property
    def loewy_length(self) -> int:
        return len(self.radical_layers)


def _layer(simples, mults) -> list[str]:
    out = []
    for s, m in zip(simples, mults):
        out.extend([s.label] * m)
    return out


def head_multiplicities(M: GModule, simples) -> list[int]:
    return [len(hom_space(M, s.module)) for s in simples]


def socle_multiplicities(M: GModule, simples) -> list[int]:
    return [len(hom_space(s.module, M)) for s in simples]


def radical(M: GModule, simples) -> Subspace:
    """Intersection of the kernels of all homomorphisms to simple modules."""
    F = M.field
    cols = [X.a for s in simples for X in hom_space(M, s.module)]
    if not cols:
        return Subspace.span(DenseMatrix(F, np.eye(M.dim, dtype=np.int64)))
    K = np.hstack(cols)
    return Subspace.span(DenseMatrix(F, _left_null(F, K).reshape(-1, M.dim)))


def socle(M: GModule, simples) -> Subspace:
    """Sum of the images of all homomorphisms from simple modules."""
    F = M.field
    rows = [X.a for s in simples for X in hom_space(s.module, M)]
    if not rows:
        return Subspace.span(DenseMatrix(F, np.zeros((0, M.dim), dtype=np.int64)))
    return Subspace.span(DenseMatrix(F, np.vstack(rows)))


def radical_series(M: GModule, simples):
    """Layers rad^i M / rad^(i+1) M, head first, and the bases of rad^i M."""
    F = M.field
    layers, bases = [], [np.eye(M.dim, dtype=np.int64)]
    cur = M
    inside = bases[0]  # rows of cur in M coordinates
    while cur.dim:
        layers.append(_layer(simples, head_multiplicities(cur, simples)))
        R = radical(cur, simples)
        if R.dim == cur.dim:
            raise ModuleError("radical did not shrink; the simple list is incomplete")
        if R.dim == 0:
            bases.append(np.zeros((0, M.dim), dtype=np.int64))
            break
        inside = F.matmul(R.basis, inside)
        bases.append(inside)
        cur = cur.submodule(DenseMatrix(F, R.basis))
    return layers, bases


def socle_series(M: GModule, simples):
    F = M.field
    layers, bases = [], [np.zeros((0, M.dim), dtype=np.int64)]
    acc = Subspace.span(DenseMatrix(F, np.zeros((0, M.dim), dtype=np.int64)))
    cur = M
    while cur.dim:
        layers.append(_layer(simples, socle_multiplicities(cur, simples)))
        S = socle(cur, simples)
        if S.dim == 0:
            raise ModuleError("socle is zero; the simple list is incomplete")
        # lift the socle of the quotient back to M
        non = acc.complement_pivots()
        lifted = np.zeros((S.dim, M.dim), dtype=np.int64)
        lifted[:, non] = S.basis
        acc = acc.sum(Subspace.span(DenseMatrix(F, lifted)))
        bases.append(acc.basis)
        cur = M.quotient(DenseMatrix(F, acc.basis)) if acc.dim < M.dim else None
        if cur is None:
            break
    layers.reverse()
    return layers, bases


def loewy_data(M: GModule, simples) -> LoewyData:
    rl, rb = radical_series(M, simples)
    sl, sb = socle_series(M, simples)
    return LoewyData(radical_layers=rl, socle_layers=sl, radical_bases=rb, socle_bases=sb)


def composition_length(M: GModule, simples) -> int:
    return sum(len(layer) for layer in radical_series(M, simples)[0])


# -- submodule lattices -----------------------------------------------------------

@dataclass
class Lattice:
    nodes: list  # Subspace objects, sorted by (dim, key)
    covers: list  # (i, j): node i is a maximal submodule of node j
    local: dict  # node index -> head label, for the local submodules

    def dims(self) -> list[int]:
        return [n.dim for n in self.nodes]

    def to_json(self) -> dict:
        return {
            "dims": self.dims(),
            "covers": [list(c) for c in self.covers],
            "local": {str(k): v for k, v in sorted(self.local.items())},
        }


def _projective_points(F, h: int):
    for v in product(range(F.q), repeat=h):
        nz = [x for x in v if x]
        if nz and nz[0] == 1:
            yield v


def local_submodules(M: GModule, pims: dict, simples) -> dict:
    """Images of all homomorphisms P(S) -> M up to scalars: key -> (Subspace, label)."""
    F = M.field
    out: dict[bytes, tuple] = {}
    for s in simples:
        basis = hom_space(pims[s.label], M)
        if len(basis) > MAX_LOCAL_MULT:
            raise LatticeBoundError(f"{s.label} occurs {len(basis)} times (bound {MAX_LOCAL_MULT})")
        for c in _projective_points(F, len(basis)):
            X = np.zeros_like(basis[0].a)
            for ci, B in zip(c, basis):
                if ci:
                    X = F.add(X, F.mul(int(ci), B.a))
            S = Subspace.span(DenseMatrix(F, X))
            if S.dim and S.key() not in out:
                out[S.key()] = (S, s.label)
    return out


def submodule_lattice(M: GModule, pims: dict, simples) -> Lattice:
    length = composition_length(M, simples)
    if length > MAX_LATTICE_LENGTH:
        raise LatticeBoundError(f"composition length {length} exceeds {MAX_LATTICE_LENGTH}")
    F = M.field
    locs = local_submodules(M, pims, simples)
    zero = Subspace.span(DenseMatrix(F, np.zeros((0, M.dim), dtype=np.int64)))
    nodes = {zero.key(): zero}
    for key, (S, _) in locs.items():
        nodes[key] = S
    frontier = list(nodes.values())
    loc_spaces = [S for S, _ in locs.values()]
    while frontier:
        new = []
        for A in frontier:
            for L in loc_spaces:
                if A.contains_space(L):
                    continue
                B = A.sum(L)
                if B.key() not in nodes:
                    nodes[B.key()] = B
                    new.append(B)
        frontier = new
    order = sorted(nodes.values(), key=lambda S: (S.dim, S.key()))
    index = {S.key(): i for i, S in enumerate(order)}
    below: list[set] = []
    for j, B in enumerate(order):
        below.append({i for i, A in enumerate(order[:j]) if A.dim < B.dim and B.contains_space(A)})
    covers = []
    for j in range(len(order)):
        for i in below[j]:
            if not any(i in below[k] for k in below[j] if k != i):
                covers.append((i, j))
    local = {index[k]: lab for k, (S, lab) in locs.items()}
    return Lattice(nodes=order, covers=sorted(covers), local=local)
