"""Module files: a group reference followed by one matrix block per group
generator in the plain matrix text format.

    group psd16            (catalogue name, or the group as one line of JSON)
    name natural
    3 2 9 9
    100000000
    ...
"""
from __future__ import annotations

import json
from pathlib import Path

from .linalg import DenseMatrix, read_matrix
from .modrep.module import GModule, ModuleError
from .perm import CATALOGUE, PermGroupData, group_from_json


def group_ref(G: PermGroupData, ref: str | None = None) -> str:
    if ref in CATALOGUE:
        return ref
    return json.dumps(G.to_json(), sort_keys=True)


def resolve_group(ref: str) -> tuple[PermGroupData, str]:
    """A catalogue name, a JSON file path, or inline JSON."""
    ref = ref.strip()
    if ref in CATALOGUE:
        return CATALOGUE[ref](), ref
    if ref.startswith("{"):
        return group_from_json(json.loads(ref)), ref
    with open(ref) as fh:
        return group_from_json(json.load(fh)), ref


def module_text(M: GModule, group: str) -> str:
    lines = [f"group {group}", f"name {M.name or 'module'}"]
    for g in M.gens:
        lines.append(g.to_text().rstrip("\n"))
    return "\n".join(lines) + "\n"


def write_module(M: GModule, path, group: str) -> None:
    Path(path).write_text(module_text(M, group))


def parse_module(text: str, G: PermGroupData | None = None) -> tuple[GModule, str]:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines or not lines[0].startswith("group "):
        raise ModuleError("module file must start with a group line")
    ref = lines[0][6:].strip()
    if G is None:
        G, ref = resolve_group(ref)
    pos = 1
    name = ""
    if pos < len(lines) and lines[pos].startswith("name "):
        name = lines[pos][5:].strip()
        pos += 1
    mats = []
    while pos < len(lines):
        head = lines[pos].split()
        if len(head) != 4:
            raise ModuleError(f"bad matrix header: {lines[pos]!r}")
        rows = int(head[2])
        mats.append(read_matrix(iter(lines[pos : pos + 1 + rows])))
        pos += 1 + rows
    if not mats:
        raise ModuleError("module file has no matrices")
    F = mats[0].field
    M = GModule(G, F, [DenseMatrix(F, m.a) for m in mats], name=name)
    return M, ref


def read_module(path, G: PermGroupData | None = None) -> tuple[GModule, str]:
    return parse_module(Path(path).read_text(), G)
