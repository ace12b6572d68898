"""Per-group working context shared by the command line and the golden
suites: the field, the character table, the simple modules and the PIMs,
each computed once."""
from __future__ import annotations

from functools import cached_property

from .chartab import dixon_schneider
from .gfq import FieldSpec, ff_make, p_part, splitting_degree
from .modrep.brauer import label_simples
from .modrep.homs import decompose, group_isomorphic, hom_space
from .modrep.meataxe import chop
from .modrep.module import GModule, ModuleError, regular_module
from .perm import PermGroupData, Subgroup, normalizer, p_subgroup_classes, sylow

REGULAR_CAP = 400


def default_field(G: PermGroupData, p: int, k: int | None = None) -> FieldSpec:
    """GF(p^k) containing the roots of unity of the p'-part of the exponent
    (a splitting field for G and all its subgroups) unless k is given."""
    if k is None:
        e = G.exponent
        k = splitting_degree(p, e // p_part(e, p))
    return ff_make(p, k)


class Workbench:
    def __init__(self, G: PermGroupData, p: int, k: int | None = None, seed: int = 0):
        self.G = G
        self.p = p
        self.F = default_field(G, p, k)
        self.seed = seed

    @cached_property
    def table(self):
        return dixon_schneider(self.G)

    @cached_property
    def regular(self) -> GModule:
        if self.G.order > REGULAR_CAP:
            raise ModuleError(f"regular module of order {self.G.order} exceeds the cap {REGULAR_CAP}")
        return regular_module(self.G, self.F)

    @cached_property
    def simples(self) -> list:
        """All simple modules, from chopping the regular module."""
        return label_simples(chop(self.regular, seed=self.seed))

    def simple(self, label: str):
        for s in self.simples:
            if s.label == label:
                return s
        raise KeyError(f"no simple module labelled {label}")

    def name_factors(self, factors: list) -> list:
        """Give composition factors the labels of the matching simple modules
        (equal Brauer characters), in the order of the simples."""
        from .modrep.brauer import brauer_char

        order = {s.label: i for i, s in enumerate(self.simples)}
        for f in factors:
            f.brauer = brauer_char(f.module)
            hit = next((s for s in self.simples if s.module.dim == f.module.dim and s.brauer == f.brauer), None)
            if hit is None:
                raise ModuleError("composition factor matches none of the simple modules")
            f.label = hit.label
            f.module.name = hit.label
        factors.sort(key=lambda f: order[f.label])
        return factors

    @cached_property
    def regular_summands(self) -> list:
        return [s.module for s in decompose(self.regular, seed=self.seed)]

    @cached_property
    def pims(self) -> dict:
        """Projective indecomposable modules keyed by the label of their head."""
        out = {}
        for P in self.regular_summands:
            heads = [s.label for s in self.simples if hom_space(P, s.module)]
            if len(heads) != 1:
                raise ModuleError("a regular summand has a non-simple head")
            if heads[0] not in out:
                P.name = f"P({heads[0]})"
                out[heads[0]] = P
        return {s.label: out[s.label] for s in self.simples}

    @cached_property
    def brauer(self) -> dict:
        return {s.label: s.brauer for s in self.simples}

    @cached_property
    def p_subgroups(self) -> list[Subgroup]:
        return p_subgroup_classes(self.G, self.p)

    def subgroup(self, ref: str) -> Subgroup:
        """Subgroups by name: whole, trivial, sylow, psubN (the p-subgroup
        class of order N), and N(...) for normalizers of those."""
        ref = ref.strip()
        if ref.startswith("N(") and ref.endswith(")"):
            S = self.subgroup(ref[2:-1])
            N = normalizer(self.G, S)
            N.name = ref
            return N
        if ref == "whole":
            return self.G.whole()
        if ref == "trivial":
            return self.G.trivial()
        if ref == "sylow":
            S = sylow(self.G, self.p)
            return S
        if ref.startswith("psub"):
            order = int(ref[4:])
            hits = [Q for Q in self.p_subgroups if Q.order == order]
            if len(hits) != 1:
                raise ModuleError(f"{len(hits)} classes of {self.p}-subgroups of order {order}")
            hits[0].name = ref
            return hits[0]
        raise ModuleError(f"unknown subgroup reference {ref!r}")


def iso_classes(mods: list[GModule]) -> list[GModule]:
    """One representative per isomorphism class, in input order."""
    return [mods[c[0]] for c in group_isomorphic(mods)]


def trivial_source_inventory(wb: Workbench) -> list[dict]:
    """Indecomposable summands of k_V induced to G for V running over the
    p-subgroups up to conjugacy, up to isomorphism."""
    from .functors import induce_trivial
    from .modrep.loewy import radical_series
    from .modrep.projectivity import vertex

    found: list[tuple[int, GModule]] = []
    for V in wb.p_subgroups:
        if V.order == 1:
            # k_1 induced is the regular module, already decomposed
            found.extend((1, P) for P in wb.regular_summands)
            continue
        K = induce_trivial(wb.G, V, wb.F)
        for s in decompose(K, seed=wb.seed):
            found.append((V.order, s.module))
    mods = [m for _, m in found]
    out = []
    for cl in group_isomorphic(mods):
        order, M = found[cl[0]]
        layers, _ = radical_series(M, wb.simples)
        out.append({
            "induced_from_order": order,
            "vertex_order": vertex(M, check=False).order,
            "module": M,
            "dim": M.dim,
            "radical_layers": layers,
        })
    return out
