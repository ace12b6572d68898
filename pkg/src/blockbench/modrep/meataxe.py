"""Composition factors by the MeatAxe: random algebra elements, Norton's
irreducibility test, and splitting along the submodules it finds."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .. import polys
from ..linalg import DenseMatrix, Subspace, _left_null, charpoly, poly_at, spin
from .homs import hom_space
from .module import GModule, ModuleError, quotient_action, sub_action

MAX_TRIES = 400


class ChopError(ModuleError):
    pass


def random_algebra_element(M: GModule, rng) -> np.ndarray:
    """A random combination of up to four products of generators."""
    F = M.field
    gens = M.gen_arrays()
    d = M.dim
    acc = np.zeros((d, d), dtype=np.int64)
    for _ in range(int(rng.integers(2, 5))):
        length = int(rng.integers(1, 5))
        w = gens[int(rng.integers(len(gens)))]
        for _ in range(length - 1):
            w = F.matmul(w, gens[int(rng.integers(len(gens)))])
        c = int(F.random(rng, nonzero=True))
        acc = F.add(acc, F.mul(c, w))
    return acc


def _spin_rows(F, seeds, gens):
    return spin(DenseMatrix(F, seeds), [DenseMatrix(F, g) for g in gens])


def find_submodule(M: GModule, rng, max_tries: int = MAX_TRIES):
    """(True, None) when M is certified irreducible, else (False, W) with W a
    proper nonzero invariant subspace (echelon rows)."""
    F = M.field
    d = M.dim
    if d == 1:
        return True, None
    gens = M.gen_arrays()
    if not gens:
        # trivial group: every subspace is invariant
        return False, np.eye(d, dtype=np.int64)[:1]
    gens_t = M.transpose_gens()
    for _ in range(max_tries):
        A = random_algebra_element(M, rng)
        cp = charpoly(DenseMatrix(F, A))
        facs = polys.factor(F, cp, rng)
        for f, _e in sorted(facs, key=lambda fe: len(fe[0])):
            fA = poly_at(F, f, DenseMatrix(F, A)).a
            null = _left_null(F, fA)
            if null.shape[0] == 0:
                continue
            W = _spin_rows(F, null[:1], gens)
            if W.rows < d:
                return False, W.a
            if null.shape[0] != len(f) - 1:
                continue
            # Norton: the kernel is minimal, so a proper submodule would show
            # up in the dual as a vector of the transposed kernel
            null_t = _left_null(F, fA.T)
            Wt = _spin_rows(F, null_t[:1], gens_t)
            if Wt.rows == d:
                return True, None
            ann = _left_null(F, Wt.a.T)
            ann = Subspace.span(DenseMatrix(F, ann)).basis
            return False, ann
    raise ChopError(f"no decision after {max_tries} random algebra elements")


@dataclass
class SimpleFactor:
    module: GModule
    multiplicity: int = 1
    label: str = ""
    brauer: list = field(default_factory=list)


def composition_factors(M: GModule, rng=None) -> list[GModule]:
    """All composition factors (with repetition), each certified irreducible."""
    rng = np.random.default_rng(0) if rng is None else rng
    F = M.field
    out = []
    stack = [(M.gen_arrays(), M.dim)]
    while stack:
        gens, d = stack.pop()
        if d == 0:
            continue
        mod = GModule(M.group, F, gens, dim=d)
        irr, W = find_submodule(mod, rng)
        if irr:
            out.append(mod)
            continue
        S = Subspace.span(DenseMatrix(F, W))
        stack.append((quotient_action(F, gens, S), d - S.dim))
        stack.append((sub_action(F, gens, S), S.dim))
    return out


def group_simples(mods: list[GModule]) -> list[SimpleFactor]:
    """Collect isomorphic simple modules; Hom between simples is nonzero
    exactly when they are isomorphic."""
    classes: list[SimpleFactor] = []
    for m in mods:
        for c in classes:
            if c.module.dim == m.dim and hom_space(c.module, m):
                c.multiplicity += 1
                break
        else:
            classes.append(SimpleFactor(module=m))
    return classes


def chop(M: GModule, seed: int = 0) -> list[SimpleFactor]:
    rng = np.random.default_rng(seed)
    return group_simples(composition_factors(M, rng))


def is_irreducible(M: GModule, seed: int = 0) -> bool:
    return find_submodule(M, np.random.default_rng(seed))[0]
