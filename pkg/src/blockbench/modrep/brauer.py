"""Brauer characters of modules and canonical labels for simple modules."""
from __future__ import annotations

import numpy as np

from .. import polys
from ..cyclotomic import CycInt
from ..gfq import brauer_lift, embed, ff_make
from ..linalg import DenseMatrix, poly_at, rank
from .module import GModule


def _eigen_lifts(M: GModule, A: np.ndarray, m: int) -> CycInt:
    """Sum of the lifted eigenvalues of A, a matrix with A^m = 1, p not
    dividing m.  The multiplicity of the roots of an irreducible factor h of
    x^m - 1 is nullity(h(A)) / deg(h)."""
    F = M.field
    xm = np.zeros(m + 1, dtype=np.int64)
    xm[0] = int(F.neg(1))
    xm[m] = 1
    total = CycInt.from_int(0)
    for h, _ in polys.factor(F, xm):
        dh = len(h) - 1
        null = M.dim - rank(poly_at(F, h, DenseMatrix(F, A)))
        if not null:
            continue
        mult = null // dh
        E = ff_make(F.p, F.k * dh)
        hE = np.array([embed(F, E, int(c)) for c in h], dtype=np.int64)
        for r in polys.roots(E, hE):
            total = total + brauer_lift(E, r) * mult
    return total.simplify()


def brauer_char(M: GModule, classes=None) -> list[CycInt]:
    """Brauer character on the p-regular classes of the group (or the given
    class indices)."""
    G = M.group
    key = "brauer" if classes is None else ("brauer", tuple(classes))
    if key in M.cache:
        return M.cache[key]
    if classes is None:
        classes = G.p_regular_classes(M.p)
    vals = []
    for c in classes:
        m = G.class_orders[c]
        if m % M.p == 0:
            raise ValueError(f"class {c} is not {M.p}-regular")
        if m == 1:
            vals.append(CycInt.from_int(M.dim))
            continue
        vals.append(_eigen_lifts(M, M.element_array(G.class_reps[c]), m))
    M.cache[key] = vals
    return vals


def brauer_sort_key(dim: int, values) -> tuple:
    """Dimension ascending, then values in descending lexicographic order of
    their complex embeddings (real part first)."""
    vals = []
    for v in values:
        z = complex(v)
        vals.append((-round(z.real, 9), -round(z.imag, 9)))
    return (dim, vals)


def _suffix(i: int) -> str:
    s = ""
    i += 1
    while i:
        i, r = divmod(i - 1, 26)
        s = chr(ord("a") + r) + s
    return s


def label_simples(simples: list) -> list:
    """Sort SimpleFactor records canonically and name them 1a, 1b, 2a, ..."""
    for s in simples:
        s.brauer = brauer_char(s.module)
    simples.sort(key=lambda s: brauer_sort_key(s.module.dim, s.brauer))
    count: dict[int, int] = {}
    for s in simples:
        d = s.module.dim
        count[d] = count.get(d, 0) + 1
        s.label = f"{d}{_suffix(count[d] - 1)}"
        s.module.name = s.label
    return simples
