"""Canonical JSON artifacts for the three reference suites (psd16, a9, a6)."""
from __future__ import annotations

import json
from itertools import combinations
from pathlib import Path

import numpy as np

from .blocks import block_data, block_idempotents, cartan_from_pims, cartan_matrix, check_idempotents, decomposition_matrix
from .chartab import dixon_schneider, p_blocks
from .modrep.brauer import label_simples
from .modrep.loewy import local_submodules, radical_series, socle_series
from .functors import dual
from .modrep.homs import is_isomorphic
from .modrep.meataxe import chop, is_irreducible
from .modrep.module import perm_module, trivial_module
from .perm import alternating, normalizer, psd16, sylow
from .workbench import Workbench, trivial_source_inventory

SUITES = ("psd16", "a9", "a6")


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


def _cyc(vals) -> list:
    return [v.to_json() for v in vals]


def _labelled_table(T) -> dict:
    d = T.to_json()
    d["degrees"] = T.degrees
    return d


def _layers(layers) -> list[list[str]]:
    return [sorted(x) for x in layers]


def psd16_suite(seed: int = 0, p: int = 3) -> dict:
    G = psd16()
    wb = Workbench(G, p, seed=seed)
    T = wb.table
    out = {}
    out["psd16_chartab.json"] = _labelled_table(T)

    part = p_blocks(T, p)
    idems = block_idempotents(T, p)
    out["psd16_blocks.json"] = {
        "p": p,
        "blocks": [[T.labels[i] for i in b] for b in part.blocks],
        "defects": part.defects,
        "idempotents": [[int(x) for x in e] for e in idems],
        "idempotents_ok": check_idempotents(T, p, idems, part.field),
    }

    simples = wb.simples
    bd = block_data(T, p, wb.brauer)
    classes = G.p_regular_classes(p)
    out["psd16_decmat.json"] = {
        "p": p,
        "field": [wb.F.p, wb.F.k],
        "p_regular_classes": [T.class_names[c] for c in classes],
        "simples": [
            {"label": s.label, "dim": s.module.dim, "multiplicity_in_regular": s.multiplicity, "brauer": _cyc(s.brauer)}
            for s in simples
        ],
        "blocks": [b.to_json(T) for b in bd],
    }

    pims = wb.pims
    labels = [s.label for s in simples]
    C = bd[0].cartan if len(bd) == 1 else None
    from_pims = cartan_from_pims(pims, simples)
    C_full = cartan_matrix(decomposition_matrix(T, None, wb.brauer, p)[0])
    out["psd16_cartan.json"] = {
        "labels": labels,
        "cartan": C_full,
        "cartan_from_pims": from_pims,
        "pim_dims": [pims[l].dim for l in labels],
        "det": int(round(np.linalg.det(np.array(C_full, dtype=float)))),
        "single_block": C is not None,
    }

    dual_of = {}
    for s in simples:
        D = dual(s.module)
        dual_of[s.label] = next(t.label for t in simples if t.module.dim == D.dim and is_isomorphic(D, t.module)[0])
    out["psd16_decmat.json"]["dual_of"] = dual_of

    series = {}
    for lab in labels:
        P = pims[lab]
        rl, _ = radical_series(P, simples)
        sl, _ = socle_series(P, simples)
        dsl, _ = socle_series(dual(P), simples)
        series[lab] = {
            "dim": P.dim,
            "radical_layers": _layers(rl),
            "socle_layers": _layers(sl),
            "dual_socle_layers": _layers(dsl),
            "loewy_length": len(rl),
        }
    out["psd16_loewy.json"] = {"dual_of": dual_of, "pims": series}

    inv = trivial_source_inventory(wb)
    entries = []
    for e in inv:
        M = e["module"]
        item = {
            "induced_from_order": e["induced_from_order"],
            "vertex_order": e["vertex_order"],
            "dim": e["dim"],
            "radical_layers": _layers(e["radical_layers"]),
            "socle_layers": _layers(socle_series(M, simples)[0]),
        }
        if e["vertex_order"] == 3:
            locs = local_submodules(M, pims, simples)
            item["local_submodules"] = sorted([lab, S.dim] for S, lab in locs.values())
        entries.append(item)
    entries.sort(key=lambda x: (-x["vertex_order"], x["dim"], x["radical_layers"]))
    out["psd16_trivial_source.json"] = {"count": len(entries), "modules": entries}
    return out


def a9_suite(seed: int = 0, p: int = 3) -> dict:
    G = alternating(9)
    T = dixon_schneider(G)
    part = p_blocks(T, p)
    out = {"a9_chartab.json": _labelled_table(T)}
    blocks = []
    preg = G.p_regular_classes(p)
    for rows, d in zip(part.blocks, part.defects):
        item = {"characters": [T.labels[i] for i in rows], "degrees": [T.degrees[i] for i in rows], "defect": d}
        if d == 1 and sorted(T.degrees[i] for i in rows) == [27, 189, 216]:
            i27, i189, i216 = (next(i for i in rows if T.degrees[i] == n) for n in (27, 189, 216))
            basic = {
                T.labels[i27]: [T.irreducibles[i27][c] for c in preg],
                T.labels[i189]: [T.irreducibles[i189][c] for c in preg],
            }
            D, cols = decomposition_matrix(T, [i27, i189, i216], basic, p)
            item["basic_set"] = cols
            item["dec_rows"] = [T.labels[i] for i in (i27, i189, i216)]
            item["dec_matrix"] = D
            item["cartan"] = cartan_matrix(D)
            # independent module-side check: the 27-dimensional constituent of
            # the permutation module on 2-subsets has Brauer character chi_27
            pts = list(combinations(range(9), 2))
            pos = {q: i for i, q in enumerate(pts)}
            act = [np.array([pos[tuple(sorted((int(g[a]), int(g[b]))))] for a, b in pts]) for g in G.gens]
            from .gfq import ff_make

            facs = label_simples(chop(perm_module(G, ff_make(p), act), seed=seed))
            s27 = [s for s in facs if s.module.dim == 27]
            item["module_27_brauer_matches"] = bool(s27) and s27[0].brauer == basic[T.labels[i27]]
        blocks.append(item)
    out["a9_blocks.json"] = {"p": p, "num_classes": len(T.classes), "defects": part.defects, "blocks": blocks}
    return out


def a6_suite(seed: int = 0, p: int = 3) -> dict:
    from .blocks import block_of_module
    from .functors import green_correspondent, is_trivial_source

    G = alternating(6)
    wb = Workbench(G, p, k=2, seed=seed)
    T = wb.table
    S = sylow(G, p)
    N = normalizer(G, S)
    principal = 0
    rows = []
    for s in wb.simples:
        b = block_of_module(s.module, T)
        ts = is_trivial_source(s.module)
        item = {
            "label": s.label,
            "dim": s.module.dim,
            "block": b,
            "vertex_order": ts.vertex.order,
            "trivial_source": ts.value,
        }
        if b == principal and ts.vertex.order == S.order:
            f = green_correspondent(s.module, S, N)
            fs = label_simples(chop(f, seed=seed))
            item["green_dim"] = f.dim
            item["green_simple"] = is_irreducible(f, seed=seed)
            item["green_factors"] = [[x.label, x.multiplicity] for x in fs]
        rows.append(item)
    ft = green_correspondent(trivial_module(G, wb.F), S, N)
    return {
        "a6_chartab.json": _labelled_table(T),
        "a6_green.json": {
            "p": p,
            "normalizer_order": N.order,
            "simples": rows,
            "trivial_correspondent_dim": ft.dim,
        },
    }


def suite(name: str, seed: int = 0) -> dict:
    if name == "psd16":
        return psd16_suite(seed)
    if name == "a9":
        return a9_suite(seed)
    if name == "a6":
        return a6_suite(seed)
    raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")


def emit_goldens(name: str, out_dir, seed: int = 0) -> list[Path]:
    files = suite(name, seed)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for fname, obj in sorted(files.items()):
        path = out / fname
        path.write_text(dumps(obj))
        paths.append(path)
    return paths
