"""Command line front end.

Groups are catalogue names (psd16, sd16, a6, a9, s3, c3) or JSON files with
1-based generator lists.  Modules are module files or built-in references
GROUP:KIND with KIND one of regular, natural, trivial, sign, simple=LABEL,
pim=LABEL, coset=SUBGROUP.  Subgroups are named whole, trivial, sylow,
psubN (the class of p-subgroups of order N) or N(...), or given as a JSON
file of 1-based generators.

Exit status: 0 on success, 2 for bad input or exceeded caps (one line
``error: <kind>: <message>`` on stderr), 3 for I/O failures.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

VERBS = (
    "chartab", "blocks", "decmat", "cartan", "chop", "radser", "socser", "lattice",
    "brauerchar", "decompose", "vertex", "homdim", "tsource", "induce", "restrict",
    "tensorop", "dualop", "green", "brauerq", "goldens",
)

CAPS = {
    "group": ("blockbench.perm", "DEFAULT_CAP"),
    "table": ("blockbench.chartab", "TABLE_CAP"),
    "hom": ("blockbench.modrep.homs", "HOM_CAP"),
    "perm": ("blockbench.modrep.module", "MAX_PERM_DEGREE"),
    "lattice": ("blockbench.modrep.loewy", "MAX_LATTICE_LENGTH"),
    "local": ("blockbench.modrep.loewy", "MAX_LOCAL_MULT"),
    "induce": ("blockbench.functors", "INDUCE_CAP"),
    "tensor": ("blockbench.functors", "TENSOR_CAP"),
    "idempotent": ("blockbench.blocks", "IDEMPOTENT_CAP"),
    "regular": ("blockbench.workbench", "REGULAR_CAP"),
    "chop": ("blockbench.modrep.meataxe", "MAX_TRIES"),
}


class UsageError(ValueError):
    pass


# -- argument parsing -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="blockbench", description="Modular representation workbench")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-p", type=int, default=3, help="characteristic (default 3)")
    common.add_argument("-k", type=int, default=None, help="field degree; default: a splitting field")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--cap", action="append", default=[], metavar="NAME=VALUE",
                        help=f"override a size cap ({', '.join(sorted(CAPS))})")
    common.add_argument("-o", "--output", default=None, help="write the resulting module to this file")
    sub = ap.add_subparsers(dest="verb", required=True, metavar="VERB")

    def verb(name, help_, *args):
        sp = sub.add_parser(name, parents=[common], help=help_)
        for a in args:
            sp.add_argument(a)
        return sp

    verb("chartab", "ordinary character table", "group")
    verb("blocks", "p-blocks and their defects", "group")
    verb("decmat", "decomposition matrices", "group")
    verb("cartan", "Cartan matrices, checked against the PIMs", "group")
    verb("chop", "composition factors", "module")
    verb("radser", "radical series", "module")
    verb("socser", "socle series", "module")
    verb("lattice", "submodule lattice", "module")
    verb("brauerchar", "Brauer character", "module")
    verb("decompose", "indecomposable summands", "module")
    verb("vertex", "vertex of an indecomposable module", "module")
    sp = verb("homdim", "dimension of Hom(M, N)", "module", "other")
    sp.add_argument("--stable", action="store_true", help="dimension modulo projective homomorphisms")
    verb("tsource", "trivial source test", "module")
    sp = verb("induce", "induce from a subgroup", "group", "subgroup")
    sp.add_argument("--from", dest="source", default="trivial", choices=["trivial", "regular"])
    verb("restrict", "restrict to a subgroup", "module", "subgroup")
    verb("tensorop", "tensor product", "module", "other")
    verb("dualop", "dual module", "module")
    sp = verb("green", "Green correspondent in the normalizer of a vertex", "module")
    sp.add_argument("--vertex", default=None, help="subgroup reference for the vertex")
    verb("brauerq", "Brauer quotient of a permutation module", "module", "subgroup")
    sp = verb("goldens", "write golden JSON artifacts", "suite")
    sp.add_argument("--out", default="goldens")
    return ap


def apply_caps(specs) -> None:
    import importlib

    for spec in specs:
        name, _, value = spec.partition("=")
        if name not in CAPS or not value:
            raise UsageError(f"unknown cap {spec!r}")
        try:
            v = int(float(value))
        except ValueError as exc:
            raise UsageError(f"cap value {value!r} is not a number") from exc
        mod, attr = CAPS[name]
        setattr(importlib.import_module(mod), attr, v)


# -- object resolution ---------------------------------------------------------------

class Session:
    """Resolves group, module and subgroup references for one job."""

    def __init__(self, args):
        self.args = args
        self._benches: dict = {}
        self._groups: dict = {}

    def group(self, ref: str):
        from .modfile import resolve_group

        if ref not in self._groups:
            self._groups[ref] = resolve_group(ref)
        return self._groups[ref]

    def bench(self, G, gref: str, field=None):
        from .workbench import Workbench

        p = self.args.p if field is None else field.p
        k = self.args.k if field is None else field.k
        key = (gref, p, k)
        if key not in self._benches:
            self._benches[key] = Workbench(G, p, k=k, seed=self.args.seed)
        return self._benches[key]

    def module(self, ref: str):
        """(module, group reference, workbench)."""
        from .modfile import read_module
        from .modrep.module import perm_module, regular_module, sign_module, trivial_module

        if os.path.exists(ref) or ":" not in ref:
            M, gref = read_module(ref)
            return M, gref, self.bench(M.group, gref, M.field)
        gref, _, kind = ref.rpartition(":")
        G, gref = self.group(gref)
        wb = self.bench(G, gref)
        name, _, arg = kind.partition("=")
        if name == "regular":
            M = regular_module(G, wb.F)
        elif name == "natural":
            M = perm_module(G, wb.F, name="natural")
        elif name == "trivial":
            M = trivial_module(G, wb.F)
        elif name == "sign":
            M = sign_module(G, wb.F)
        elif name == "simple":
            M = wb.simple(arg).module
        elif name == "pim":
            if arg not in wb.pims:
                raise UsageError(f"no simple module labelled {arg}")
            M = wb.pims[arg]
        elif name == "coset":
            from .modrep.module import coset_module

            M = coset_module(G, wb.F, self.subgroup(wb, arg))
        else:
            raise UsageError(f"unknown module kind {kind!r}")
        return M, gref, wb

    def subgroup(self, wb, ref: str):
        from .perm import Subgroup

        if os.path.exists(ref):
            with open(ref) as fh:
                d = json.load(fh)
            gens = [[int(x) - 1 for x in g] for g in d["gens"]]
            return Subgroup(wb.G, gens, name=d.get("name", os.path.basename(ref)))
        return wb.subgroup(ref)


# -- formatting --------------------------------------------------------------------

def fmt_layers(layers) -> str:
    return " | ".join(" ".join(sorted(x)) for x in layers)


def fmt_matrix(rows, row_labels, col_labels) -> str:
    w = max([len(str(x)) for r in rows for x in r] + [len(c) for c in col_labels] + [1])
    lw = max([len(r) for r in row_labels] + [1])
    out = [" " * lw + " " + " ".join(c.rjust(w) for c in col_labels)]
    for lab, r in zip(row_labels, rows):
        out.append(lab.ljust(lw) + " " + " ".join(str(x).rjust(w) for x in r))
    return "\n".join(out)


def summand_report(mods, wb) -> list[dict]:
    """Isomorphism classes of summands with multiplicity and head labels."""
    from .modrep.homs import group_isomorphic, hom_space

    out = []
    for cl in group_isomorphic(mods):
        M = mods[cl[0]]
        item = {"dim": M.dim, "multiplicity": len(cl)}
        if M.group is wb.G:
            item["head"] = sorted(s.label for s in wb.simples for _ in hom_space(M, s.module))
        out.append(item)
    out.sort(key=lambda d: (d["dim"], d.get("head", []), d["multiplicity"]))
    return out


def simple_report(simples) -> list[dict]:
    return [
        {"label": s.label, "dim": s.module.dim, "multiplicity": s.multiplicity, "brauer": [v.to_json() for v in s.brauer]}
        for s in simples
    ]


# -- verbs ---------------------------------------------------------------------------

def cmd_chartab(s: Session):
    G, _ = s.group(s.args.group)
    from .chartab import dixon_schneider

    T = dixon_schneider(G)
    data = T.to_json()
    names = T.class_names
    cells = [[repr(v) for v in row] for row in T.irreducibles]
    text = [f"{G.name or 'G'}: order {G.order}, {len(names)} classes"]
    text.append("centralizers " + " ".join(str(c.centralizer) for c in T.classes))
    text.append(fmt_matrix(cells, T.labels, names))
    irrational = {}
    for row in T.irreducibles:
        for v in row:
            if v.simplify().conductor > 1:
                irrational.setdefault(repr(v), v)
    for name, v in irrational.items():
        re, im = v.to_json()["approx"]
        text.append(f"{name} = {re:.6f}{im:+.6f}i")
    return data, "\n".join(text)


def cmd_blocks(s: Session):
    G, _ = s.group(s.args.group)
    from .chartab import dixon_schneider, p_blocks

    T = dixon_schneider(G)
    part = p_blocks(T, s.args.p)
    blocks = []
    for b, (rows, d) in enumerate(zip(part.blocks, part.defects)):
        blocks.append({"index": b, "defect": d, "characters": [T.labels[i] for i in rows],
                       "degrees": [T.degrees[i] for i in rows]})
    text = [f"{len(blocks)} blocks at p = {s.args.p}"]
    for b in blocks:
        text.append(f"B{b['index']} defect {b['defect']}: {' '.join(b['characters'])}")
    return {"p": s.args.p, "blocks": blocks}, "\n".join(text)


def _block_tables(s: Session):
    from .blocks import block_data

    G, gref = s.group(s.args.group)
    wb = s.bench(G, gref)
    return wb, block_data(wb.table, s.args.p, wb.brauer)


def cmd_decmat(s: Session):
    wb, bd = _block_tables(s)
    T = wb.table
    text = []
    for b in bd:
        text.append(f"B{b.index} (defect {b.defect})")
        text.append(fmt_matrix(b.dec_matrix, [T.labels[i] for i in b.irr_indices], b.simple_labels))
    return {"p": s.args.p, "blocks": [b.to_json(T) for b in bd]}, "\n".join(text)


def cmd_cartan(s: Session):
    from .blocks import cross_check_cartan

    wb, bd = _block_tables(s)
    text = []
    for b in bd:
        simples = [x for x in wb.simples if x.label in b.simple_labels]
        cross_check_cartan(b.cartan, wb.pims, simples)
        text.append(f"B{b.index} (defect {b.defect})")
        text.append(fmt_matrix(b.cartan, b.simple_labels, b.simple_labels))
    data = {"p": s.args.p, "blocks": [{"index": b.index, "labels": b.simple_labels, "cartan": b.cartan} for b in bd]}
    return data, "\n".join(text)


def name_factors(fac, wb, M):
    """Label composition factors by the group's simple modules when those
    are available, otherwise among themselves."""
    from .modrep.brauer import label_simples

    if wb is not None and M.group is wb.G and M.field == wb.F:
        try:
            return wb.name_factors(fac)
        except ValueError:
            pass
    return label_simples(fac)


def cmd_chop(s: Session):
    from .modrep.meataxe import chop

    M, _, wb = s.module(s.args.module)
    fac = name_factors(chop(M, seed=s.args.seed), wb, M)
    text = []
    for f in fac:
        trivial = f.module.dim == 1 and all(int(v) == 1 for v in f.brauer)
        text.append(f"{'trivial' if trivial else f.label} × {f.multiplicity}" + (f"  ({f.label})" if trivial else f"  (dim {f.module.dim})"))
    return {"dim": M.dim, "factors": simple_report(fac)}, "\n".join(text)


def _series(s: Session, which: str):
    from .modrep.loewy import radical_series, socle_series

    M, _, wb = s.module(s.args.module)
    fn = radical_series if which == "radical" else socle_series
    layers, _ = fn(M, wb.simples)
    layers = [sorted(x) for x in layers]
    return {"dim": M.dim, "layers": layers, "loewy_length": len(layers)}, fmt_layers(layers)


def cmd_radser(s: Session):
    return _series(s, "radical")


def cmd_socser(s: Session):
    return _series(s, "socle")


def cmd_lattice(s: Session):
    from .modrep.loewy import submodule_lattice

    M, _, wb = s.module(s.args.module)
    L = submodule_lattice(M, wb.pims, wb.simples)
    data = L.to_json()
    text = [f"{len(L.nodes)} submodules"]
    for i, node in enumerate(L.nodes):
        above = [j for a, j in L.covers if a == i]
        head = L.local.get(i)
        text.append(f"{i}: dim {node.dim}" + (f" local, head {head}" if head else "") + (f"  < {' '.join(map(str, above))}" if above else ""))
    return data, "\n".join(text)


def cmd_brauerchar(s: Session):
    from .modrep.brauer import brauer_char

    M, _, _ = s.module(s.args.module)
    G = M.group
    cls = G.p_regular_classes(M.p)
    names = G.class_names()
    vals = brauer_char(M)
    data = {"classes": [names[c] for c in cls], "values": [v.to_json() for v in vals]}
    return data, "\n".join(f"{names[c]}: {v!r}" for c, v in zip(cls, vals))


def cmd_decompose(s: Session):
    from .modrep.homs import decompose

    M, _, wb = s.module(s.args.module)
    rep = summand_report([d.module for d in decompose(M, seed=s.args.seed)], wb)
    text = [f"dim {r['dim']} × {r['multiplicity']}" + (f"  head {' '.join(r['head'])}" if r.get("head") else "") for r in rep]
    return {"dim": M.dim, "summands": rep}, "\n".join(text)


def _subgroup_json(H) -> dict:
    return {"order": H.order, "gens": [[int(x) + 1 for x in g] for g in H.gens]}


def cmd_vertex(s: Session):
    from .modrep.projectivity import vertex

    M, _, _ = s.module(s.args.module)
    V = vertex(M)
    return {"vertex": _subgroup_json(V)}, f"vertex of order {V.order}"


def cmd_homdim(s: Session):
    from .modrep.homs import hom_dim
    from .modrep.projectivity import stable_hom_dim

    M, _, wb = s.module(s.args.module)
    N, _, _ = s.module(s.args.other)
    if s.args.stable:
        d = stable_hom_dim(M, N, list(wb.pims.values()))
    else:
        d = hom_dim(M, N)
    return {"dim": d, "stable": bool(s.args.stable)}, str(d)


def cmd_tsource(s: Session):
    from .functors import is_trivial_source

    M, _, _ = s.module(s.args.module)
    r = is_trivial_source(M)
    data = {"trivial_source": r.value, "vertex": _subgroup_json(r.vertex)}
    return data, f"{'trivial source' if r.value else 'not trivial source'}, vertex of order {r.vertex.order}"


def _write(s: Session, M, gref: str):
    if s.args.output:
        from .modfile import group_ref, write_module

        write_module(M, s.args.output, group_ref(M.group, gref))


def _module_summary(s: Session, M, wb, gref: str):
    from .modrep.homs import decompose

    _write(s, M, gref)
    rep = summand_report([d.module for d in decompose(M, seed=s.args.seed)], wb)
    text = [f"dim {M.dim}"] + [
        f"  summand dim {r['dim']} × {r['multiplicity']}" + (f"  head {' '.join(r['head'])}" if r.get("head") else "")
        for r in rep
    ]
    return {"dim": M.dim, "summands": rep}, "\n".join(text)


def cmd_induce(s: Session):
    from .functors import InductionContext, induce
    from .modrep.module import regular_module, trivial_module

    G, gref = s.group(s.args.group)
    wb = s.bench(G, gref)
    H = s.subgroup(wb, s.args.subgroup)
    ctx = InductionContext.make(G, H)
    Hg = ctx.group_h
    N = trivial_module(Hg, wb.F) if s.args.source == "trivial" else regular_module(Hg, wb.F)
    K = induce(ctx, N)
    return _module_summary(s, K, wb, gref)


def cmd_restrict(s: Session):
    from .modrep.module import restrict

    M, gref, wb = s.module(s.args.module)
    H = s.subgroup(wb, s.args.subgroup)
    R = restrict(M, H)
    return _module_summary(s, R, wb, None)


def cmd_tensorop(s: Session):
    from .functors import tensor

    M, gref, wb = s.module(s.args.module)
    N, _, _ = s.module(s.args.other)
    T = tensor(M, N)
    return _chopped(s, T, gref, wb)


def cmd_dualop(s: Session):
    from .functors import dual

    M, gref, wb = s.module(s.args.module)
    return _chopped(s, dual(M), gref, wb)


def _chopped(s: Session, M, gref, wb=None):
    from .modrep.meataxe import chop

    _write(s, M, gref)
    fac = name_factors(chop(M, seed=s.args.seed), wb, M)
    text = [f"dim {M.dim}"] + [f"  {f.label} × {f.multiplicity}" for f in fac]
    return {"dim": M.dim, "factors": simple_report(fac)}, "\n".join(text)


def cmd_green(s: Session):
    from .functors import green_correspondent

    M, gref, wb = s.module(s.args.module)
    V = s.subgroup(wb, s.args.vertex) if s.args.vertex else None
    f = green_correspondent(M, V)
    data, text = _chopped(s, f, None)
    return data, "Green correspondent, " + text


def cmd_brauerq(s: Session):
    from .functors import brauer_quotient

    M, gref, wb = s.module(s.args.module)
    Q = s.subgroup(wb, s.args.subgroup)
    B = brauer_quotient(M, Q)
    _write(s, B, None)
    return {"dim": B.dim}, f"dim {B.dim}"


def cmd_goldens(s: Session):
    from .goldens import SUITES, emit_goldens

    if s.args.suite not in SUITES:
        raise UsageError(f"unknown suite {s.args.suite!r}; choose from {', '.join(SUITES)}")
    paths = emit_goldens(s.args.suite, s.args.out, seed=s.args.seed)
    names = [p.name for p in paths]
    return {"suite": s.args.suite, "files": names}, "\n".join(names)


COMMANDS = {v: globals()[f"cmd_{v}"] for v in VERBS}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    threads = os.environ.get("BLOCKBENCH_THREADS")
    if threads:
        for var in ("OPENBLAS_NUM_THREADS", "OMP_NUM_THREADS", "MKL_NUM_THREADS"):
            os.environ.setdefault(var, threads)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        apply_caps(args.cap)
        data, text = COMMANDS[args.verb](Session(args))
    except OSError as exc:
        print(f"error: io: {exc}", file=stderr)
        return 3
    except (ValueError, ArithmeticError, KeyError, ZeroDivisionError) as exc:
        kind = type(exc).__name__
        msg = str(exc).replace("\n", " ")
        print(f"error: {kind}: {msg}", file=stderr)
        return 2
    if args.json:
        stdout.write(json.dumps(data, sort_keys=True) + "\n")
    else:
        stdout.write(text + "\n")
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
